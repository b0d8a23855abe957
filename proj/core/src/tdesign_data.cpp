#include "tdesign_data.hpp"

// Embedded spherical t-design coordinates.
//
// Closed-form platonic designs live in sampling.cpp. The three sets below were
// obtained by solving the t-design moment systems numerically (all spherical
// harmonic sums for degrees 1..T vanish below 2e-14):
//   t7q24  - orbit of one point under the rotation group of the cube
//            (McLaren's improved snub cube)
//   t8q36  - C3-symmetric 36-point solution of the degree-8 system
//   t10q60 - C3-symmetric 60-point solution of the degree-10 system

namespace sphcond::detail {

const std::array<std::array<double, 3>, 24> k_t7q24 = {{
    {-0.86624681810782045, -0.4225186537611117, -0.26663540151670467},
    {0.42251865376111158, -0.86624681810782045, -0.26663540151670467},
    {-0.26663540151670456, -0.86624681810782056, -0.42251865376111175},
    {0.86624681810782056, 0.42251865376111153, -0.26663540151670467},
    {-0.26663540151670484, 0.42251865376111192, -0.86624681810782056},
    {0.86624681810782056, -0.26663540151670462, -0.42251865376111175},
    {-0.42251865376111175, -0.2666354015167044, -0.86624681810782067},
    {-0.42251865376111142, 0.86624681810782056, -0.26663540151670467},
    {-0.26663540151670495, 0.86624681810782067, 0.4225186537611117},
    {-0.86624681810782078, -0.26663540151670501, 0.42251865376111214},
    {0.26663540151670473, 0.86624681810782045, -0.42251865376111175},
    {0.26663540151670434, -0.42251865376111175, -0.86624681810782067},
    {-0.26663540151670462, -0.4225186537611117, 0.86624681810782089},
    {0.42251865376111181, -0.26663540151670517, 0.86624681810782078},
    {0.2666354015167049, -0.86624681810782078, 0.42251865376111214},
    {-0.86624681810782045, 0.26663540151670484, -0.42251865376111175},
    {-0.42251865376111186, 0.26663540151670462, 0.86624681810782067},
    {0.42251865376111181, 0.26663540151670434, -0.86624681810782067},
    {0.26663540151670523, 0.42251865376111181, 0.86624681810782078},
    {0.86624681810782078, 0.26663540151670478, 0.42251865376111214},
    {-0.42251865376111164, -0.86624681810782078, 0.26663540151670501},
    {0.866246818107821, -0.42251865376111203, 0.26663540151670445},
    {-0.86624681810782089, 0.42251865376111186, 0.26663540151670456},
    {0.42251865376111208, 0.866246818107821, 0.26663540151670473},
}};

const std::array<std::array<double, 3>, 36> k_t8q36 = {{
    {0.92480118593004801, 0.37304606014258718, 0.07469540490866948},
    {-0.900321439814881, 0.13720260963370565, 0.4130335929671588},
    {-0.9012926822622005, 0.25691581572241795, -0.34880619910244248},
    {0.62413726130372515, 0.23992404986971821, -0.74356514801757512},
    {0.077462043372619513, -0.34665593116550031, 0.93478837028726369},
    {-0.51230921252590067, 0.5629387501075398, 0.64856706236784223},
    {0.59212806881742708, -0.41268331329383301, 0.69215376402022721},
    {-0.25600736270442953, 0.9443597829139917, 0.20650624846662918},
    {0.27734390755951327, -0.24209603913523789, -0.92976871574314091},
    {0.92964244595026035, -0.070670366260626977, -0.36162220896981168},
    {-0.75856390518282824, -0.29455936158789586, -0.58121905014779796},
    {0.69964457635581079, -0.7144751776331244, -0.0047631210370225417},
    {-0.78546795783020185, 0.61437829039410419, 0.07469540490866948},
    {0.33133977449913204, -0.84830254326832222, 0.4130335929671588},
    {0.22815071808148499, -0.9090002669452909, -0.34880619910244248},
    {-0.5198489528178829, 0.42055669880261337, -0.74356514801757512},
    {0.26148182107556339, 0.24041206297249051, 0.93478837028726369},
    {-0.23136465210483881, -0.72514216769400086, 0.64856706236784223},
    {0.061330198621678642, 0.71913960653662867, 0.69215376402022721},
    {-0.68983588096365989, -0.69388877111488856, 0.20650624846662918},
    {0.070989366266951251, 0.36123488909900037, -0.92976871574314091},
    {-0.40361889049867622, 0.84042915775954108, -0.36162220896981168},
    {0.63437784264905794, -0.50965593148831168, -0.58121905014779796},
    {0.26893136602578027, 0.96314756556069558, -0.0047631210370225417},
    {-0.13933322809984644, -0.98742435053669109, 0.07469540490866948},
    {0.56898166531574956, 0.71109993363461643, 0.4130335929671588},
    {0.67314196418071592, 0.65208445122287262, -0.34880619910244248},
    {-0.10428830848584218, -0.66048074867233131, -0.74356514801757512},
    {-0.33894386444818275, 0.1062438681930095, 0.93478837028726369},
    {0.7436738646307397, 0.16220341758646073, 0.64856706236784223},
    {-0.65345826743910518, -0.30645629324279594, 0.69215376402022721},
    {0.94584324366808914, -0.25047101179910342, 0.20650624846662918},
    {-0.34833327382646445, -0.11913884996376209, -0.92976871574314091},
    {-0.52602355545158386, -0.7697587914989138, -0.36162220896981168},
    {0.12418606253377014, 0.80421529307620732, -0.58121905014779796},
    {-0.96857594238159039, -0.24867238792757182, -0.0047631210370225417},
}};

const std::array<std::array<double, 3>, 60> k_t10q60 = {{
    {-0.33411389623586546, 0.79323153695356241, -0.50906937948022213},
    {0.69578405458717651, -0.55768568299699628, -0.45262703008371336},
    {0.61107762255078268, 0.64939426456913185, 0.45262703008370991},
    {0.91631617649576635, 0.28048753260560627, -0.28581708966574859},
    {0.43925513168824426, -0.45665978128206824, -0.77363865818931055},
    {-0.26599249743652964, -0.081491889575323731, 0.96052436889488702},
    {0.050938453923726874, -0.74737464935660292, -0.66244728651490092},
    {-0.6303172628322119, 0.064679013062614435, 0.77363865818930899},
    {0.19167838626206823, 0.90849824720413497, 0.37133587366019982},
    {-0.62009285329871999, -0.42029566483238406, 0.66244728651490181},
    {-0.91422899541800395, 0.16215737069279582, -0.37133587366020337},
    {-0.9835800657164927, 0.17625831242016363, 0.038771918032719101},
    {-0.61060952446420269, 0.60663364192007896, 0.50906937948022535},
    {-0.27706282573713958, -0.49265650493104429, -0.82493985159142313},
    {0.9465089621805014, -0.14976440086679152, 0.2858170896657532},
    {0.20454926272775356, 0.97808810313263506, -0.038771918032724083},
    {-0.68335362614713058, -0.72476779320376095, -0.087974243765536031},
    {0.92780304204639064, 0.36254937264232689, 0.087974243765540125},
    {-0.34315259625484895, 0.44913309490603776, 0.82493985159142402},
    {-0.27476686898161196, 0.043544281704035875, -0.96052436889488713},
    {-0.51990171396682761, -0.68596689037443825, -0.50906937948022213},
    {0.13507794150868593, 0.88140950831913156, -0.45262703008371336},
    {-0.86793074146417226, 0.2045116125286108, 0.45262703008370991},
    {-0.7010674169291542, 0.65330932044115586, -0.28581708966574859},
    {0.17585140563279492, 0.60873599342573248, -0.77363865818931055},
    {0.20357029529289128, -0.1896103152084401, 0.96052436889488702},
    {0.6217762055254421, 0.41780131980575164, -0.66244728651490092},
    {0.25914496301217615, -0.57821026858787572, 0.77363865818930899},
    {-0.88262175450344982, -0.2882507717427103, 0.37133587366019982},
    {0.6740331494946743, -0.32686833124567705, 0.66244728651490181},
    {0.31668209527815083, -0.8728242202547164, -0.37133587366020337},
    {0.33914585667421016, -0.93993447977653222, 0.038771918032719101},
    {-0.2200553824609601, -0.8321201809387746, 0.50906937948022535},
    {0.56518446147850776, 0.0063848069328583824, -0.82493985159142313},
    {-0.34355470535705318, 0.89458300659135426, 0.2858170896657532},
    {-0.94932377581607275, -0.31189919371870528, -0.038771918032724083},
    {0.96934413383280893, -0.22941770340974885, -0.087974243765536031},
    {-0.77787848785756131, 0.62222631779949256, 0.087974243765540125},
    {-0.21738437174153141, -0.52174541318430301, 0.82493985159142402},
    {0.099672980345564918, -0.25972722950840443, -0.96052436889488713},
    {0.85401561020269257, -0.10726464657912424, -0.50906937948022213},
    {-0.83086199609586253, -0.32372382532213506, -0.45262703008371336},
    {0.25685311891338947, -0.85390587709774235, 0.45262703008370991},
    {-0.21524875956661238, -0.93379685304676208, -0.28581708966574859},
    {-0.61510653732103859, -0.15207621214366457, -0.77363865818931055},
    {0.062422202143638313, 0.27110220478376362, 0.96052436889488702},
    {-0.67271465944916831, 0.32957332955085178, -0.66244728651490092},
    {0.37117229982003608, 0.51353125552526091, 0.77363865818930899},
    {0.69094336824138114, -0.62024747546142511, 0.37133587366019982},
    {-0.053940296195954196, 0.74716399607806072, 0.66244728651490181},
    {0.59754690013985368, 0.71066684956192039, -0.37133587366020337},
    {0.64443420904228299, 0.7636761673563679, 0.038771918032719101},
    {0.83066490692516237, 0.22548653901869539, 0.50906937948022535},
    {-0.2881216357413679, 0.48627169799818615, -0.82493985159142313},
    {-0.60295425682344861, -0.7448186057245626, 0.2858170896657532},
    {0.74477451308831888, -0.66618890941392983, -0.038771918032724083},
    {-0.2859905076856783, 0.95418549661350971, -0.087974243765536031},
    {-0.14992455418883002, -0.98477569044181934, 0.087974243765540125},
    {0.56053696799638042, 0.072612318278264837, 0.82493985159142402},
    {0.175093888636047, 0.21618294780436853, -0.96052436889488713},
}};

}  // namespace sphcond::detail
