#include "sphcond/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sphcond {

namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

struct Face {
  int a, b, c;   // vertex indices, outward CCW
  Vec3 n;        // unnormalized outward normal
  bool alive = true;
};

// Incremental convex hull of points on the unit sphere. All inputs are
// extreme points; the origin is interior once the points span 3D.
class Hull {
 public:
  explicit Hull(const std::vector<Vec3>& pts) : pts_(pts) {
    const std::size_t n = pts.size();
    if (n < 4) throw std::invalid_argument("spherical_voronoi: need Q >= 4");
    // initial tetrahedron from 4 non-coplanar points
    std::size_t i2 = 2;
    while (i2 < n && norm(cross(pts[i2] - pts[0], pts[1] - pts[0])) < 1e-12) ++i2;
    if (i2 >= n) throw std::invalid_argument("spherical_voronoi: points are collinear");
    const Vec3 plane_n = cross(pts[1] - pts[0], pts[i2] - pts[0]);
    double best = 0.0;
    std::size_t i3 = n;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = std::abs(dot(pts[k] - pts[0], plane_n));
      if (v > best) {
        best = v;
        i3 = k;
      }
    }
    if (i3 >= n || best < 1e-12)
      throw std::invalid_argument("spherical_voronoi: points all on one great circle");
    add_initial(0, 1, static_cast<int>(i2), static_cast<int>(i3));
    for (std::size_t p = 0; p < n; ++p) {
      if (p == 0 || p == 1 || p == i2 || p == i3) continue;
      insert(static_cast<int>(p));
    }
  }

  const std::vector<Face>& faces() const { return faces_; }

 private:
  void push_face(int a, int b, int c) {
    Face f{a, b, c, cross(pts_[b] - pts_[a], pts_[c] - pts_[a])};
    // orient away from the hull interior
    if (dot(f.n, pts_[a] - interior_) < 0.0) {
      std::swap(f.b, f.c);
      f.n = cross(pts_[f.b] - pts_[f.a], pts_[f.c] - pts_[f.a]);
    }
    faces_.push_back(f);
  }

  void add_initial(int a, int b, int c, int d) {
    interior_ = (pts_[a] + pts_[b] + pts_[c] + pts_[d]) * 0.25;
    push_face(a, b, c);
    push_face(a, b, d);
    push_face(a, c, d);
    push_face(b, c, d);
  }

  void insert(int p) {
    constexpr double eps = 1e-12;
    std::vector<std::size_t> visible;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!faces_[i].alive) continue;
      if (dot(faces_[i].n, pts_[p] - pts_[faces_[i].a]) > eps * norm(faces_[i].n))
        visible.push_back(i);
    }
    if (visible.empty()) return;  // on the hull surface within tolerance
    // horizon = boundary edges of the visible region
    std::map<std::pair<int, int>, int> edge_count;
    auto touch = [&](int u, int v) {
      auto key = std::minmax(u, v);
      edge_count[{key.first, key.second}]++;
    };
    for (auto i : visible) {
      touch(faces_[i].a, faces_[i].b);
      touch(faces_[i].b, faces_[i].c);
      touch(faces_[i].c, faces_[i].a);
      faces_[i].alive = false;
    }
    for (auto i : visible) {
      const Face& f = faces_[i];
      const int e[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
      for (auto& ed : e) {
        auto key = std::minmax(ed[0], ed[1]);
        if (edge_count[{key.first, key.second}] == 1) push_face(ed[0], ed[1], p);
      }
    }
  }

  const std::vector<Vec3>& pts_;
  std::vector<Face> faces_;
  Vec3 interior_;
};

// Signed spherical excess of the triangle (a, b, c) on the unit sphere.
double spherical_excess(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = dot(a, cross(b, c));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

}  // namespace

std::vector<VoronoiCell> spherical_voronoi(const PointSet& points) {
  validate(points);
  const std::size_t q = points.size();
  if (q < 4) throw std::invalid_argument("spherical_voronoi: need Q >= 4");

  std::vector<Vec3> pts(q);
  for (std::size_t i = 0; i < q; ++i) {
    auto u = points.unit(i);
    pts[i] = {u[0], u[1], u[2]};
  }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      if (dot(pts[i], pts[j]) > 1.0 - 1e-12)
        throw std::invalid_argument("spherical_voronoi: duplicate points (cell areas undefined)");

  Hull hull(pts);

  // circumcenters of Delaunay triangles = Voronoi vertices; face normals are
  // oriented away from the hull interior, which places each circumcenter on
  // its empty side even for hemisphere-confined sets
  std::vector<std::vector<Vec3>> cell_verts(q);
  for (const auto& f : hull.faces()) {
    if (!f.alive) continue;
    const Vec3 cc = normalized(f.n);
    cell_verts[f.a].push_back(cc);
    cell_verts[f.b].push_back(cc);
    cell_verts[f.c].push_back(cc);
  }

  std::vector<VoronoiCell> cells(q);
  for (std::size_t i = 0; i < q; ++i) {
    auto& vs = cell_verts[i];
    if (vs.size() < 3)
      throw std::invalid_argument("spherical_voronoi: degenerate cell (collinear input?)");
    // order vertices around the site
    const Vec3 s = pts[i];
    Vec3 ref = std::abs(s.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    const Vec3 e1 = normalized(cross(ref, s));
    const Vec3 e2 = cross(s, e1);
    std::sort(vs.begin(), vs.end(), [&](const Vec3& u, const Vec3& v) {
      return std::atan2(dot(u, e2), dot(u, e1)) < std::atan2(dot(v, e2), dot(v, e1));
    });
    double area = 0.0;
    for (std::size_t k = 0; k < vs.size(); ++k)
      area += spherical_excess(s, vs[k], vs[(k + 1) % vs.size()]);
    cells[i].site_index = static_cast<int>(i);
    cells[i].area = area;
    cells[i].density = 1.0 / area;
  }
  return cells;
}

DMeasureReport d_measure(const PointSet& points) {
  const auto cells = spherical_voronoi(points);
  const double q = static_cast<double>(points.size());
  const double dhat = q / kFourPi;
  double nu = 0.0;
  for (const auto& c : cells) {
    const double dev = c.density - dhat;
    nu += (c.area / kFourPi) * dev * dev;
  }
  nu /= dhat;
  DMeasureReport r;
  r.nu = nu;
  r.d_measure = nu * std::sqrt(kTwoPi) / dhat;
  r.mean_density = dhat;
  return r;
}

}  // namespace sphcond
