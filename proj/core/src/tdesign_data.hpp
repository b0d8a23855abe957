#pragma once

#include <array>

namespace sphcond::detail {

extern const std::array<std::array<double, 3>, 24> k_t7q24;
extern const std::array<std::array<double, 3>, 36> k_t8q36;
extern const std::array<std::array<double, 3>, 60> k_t10q60;

}  // namespace sphcond::detail
