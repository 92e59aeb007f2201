#include "percolab/tables.hpp"

#include <cmath>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

constexpr RectTableRow kRect[] = {
    {1000, 1000, 1.000, 0.5000, 0.5001, 0.4999, 0.3223},
    {1025, 975, 1.051, 0.4740, 0.4743, 0.5257, 0.3211},
    {1050, 950, 1.105, 0.4480, 0.4484, 0.5516, 0.3180},
    {1080, 930, 1.161, 0.4226, 0.4230, 0.5768, 0.3127},
    {1105, 905, 1.221, 0.3970, 0.3974, 0.6026, 0.3055},
    {1135, 880, 1.290, 0.3695, 0.3696, 0.6301, 0.2950},
    {1160, 860, 1.349, 0.3473, 0.3475, 0.6522, 0.2854},
    {1190, 840, 1.417, 0.3235, 0.3236, 0.6762, 0.2733},
    {1220, 820, 1.488, 0.3003, 0.3004, 0.6994, 0.2600},
    {1250, 800, 1.562, 0.2777, 0.2779, 0.7217, 0.2458},
    {1285, 780, 1.647, 0.2541, 0.2543, 0.7453, 0.2297},
    {1315, 760, 1.730, 0.2330, 0.2333, 0.7666, 0.2144},
    {1350, 740, 1.824, 0.2111, 0.2117, 0.7883, 0.1976},
    {1385, 725, 1.910, 0.1929, 0.1935, 0.8065, 0.1826},
    {1420, 705, 2.014, 0.1731, 0.1736, 0.8265, 0.1657},
    {1455, 685, 2.124, 0.1542, 0.1546, 0.8450, 0.1490},
    {1490, 670, 2.224, 0.1389, 0.1392, 0.8606, 0.1351},
    {1530, 655, 2.336, 0.1236, 0.1239, 0.8761, 0.1210},
    {1570, 640, 2.453, 0.1093, 0.1096, 0.8905, 0.1077},
    {1610, 620, 2.597, 0.09402, 0.09424, 0.9055, 0.09299},
    {1650, 605, 2.727, 0.08201, 0.08212, 0.9176, 0.08132},
    {1690, 590, 2.864, 0.07104, 0.07120, 0.9286, 0.07065},
    {1735, 575, 3.017, 0.06053, 0.06082, 0.9390, 0.06047},
    {1775, 565, 3.142, 0.05314, 0.05332, 0.9463, 0.05309},
    {1820, 550, 3.309, 0.04459, 0.04478, 0.9549, 0.04465},
    {1870, 535, 3.495, 0.03669, 0.03689, 0.9629, 0.03682},
    {1915, 520, 3.683, 0.03016, 0.03037, 0.9695, 0.03031},
    {1965, 510, 3.853, 0.02523, 0.02542, 0.9744, 0.02539},
    {2015, 495, 4.071, 0.02009, 0.02033, 0.9796, 0.02032},
    {2065, 485, 4.258, 0.01651, 0.01670, 0.9832, 0.01669},
    {2115, 470, 4.500, 0.01281, 0.01286, 0.9869, 0.01285},
    {2170, 460, 4.717, 0.01020, 0.01022, 0.9895, 0.01022},
    {2225, 450, 4.944, 0.00805, 0.00807, 0.9918, 0.00807},
    {2280, 440, 5.182, 0.00627, 0.00634, 0.9936, 0.00634},
    {2340, 425, 5.506, 0.00447, 0.00453, 0.9954, 0.00453},
    {2400, 415, 5.783, 0.00334, 0.00340, 0.9966, 0.00340},
    {2460, 405, 6.074, 0.00247, 0.00258, 0.9975, 0.00258},
    {2520, 395, 6.380, 0.00179, 0.00190, 0.9982, 0.00190},
    {2585, 385, 6.714, 0.00126, 0.00135, 0.9987, 0.00135},
    {2650, 375, 7.067, 0.00087, 0.00093, 0.9991, 0.00093},
    {2720, 370, 7.351, 0.00065, 0.00072, 0.9993, 0.00072},
};
constexpr StriatedTableRow kStriated[] = {
    {0.6070, 0.3873, 0.9058, 0.9045, 0.0965, 0.0955},
    {0.6400, 0.4116, 0.8885, 0.8880, 0.1146, 0.1120},
    {0.6721, 0.4356, 0.8716, 0.8711, 0.1302, 0.1289},
    {0.7059, 0.4613, 0.8546, 0.8527, 0.1492, 0.1473},
    {0.7414, 0.4887, 0.8344, 0.8327, 0.1699, 0.1673},
    {0.7753, 0.5153, 0.8147, 0.8131, 0.1881, 0.1869},
    {0.8190, 0.5502, 0.7891, 0.7874, 0.2148, 0.2126},
    {0.8611, 0.5845, 0.7641, 0.7623, 0.2388, 0.2377},
    {0.9048, 0.6206, 0.7378, 0.7361, 0.2672, 0.2639},
    {0.9512, 0.6599, 0.7114, 0.7083, 0.2933, 0.2917},
    {1.000, 0.7018, 0.6801, 0.6793, 0.3228, 0.3207},
    {1.051, 0.7467, 0.6521, 0.6492, 0.3534, 0.3508},
    {1.105, 0.7948, 0.6210, 0.6181, 0.3832, 0.3819},
    {1.161, 0.8457, 0.5893, 0.5867, 0.4145, 0.4133},
    {1.221, 0.9007, 0.5562, 0.5543, 0.4458, 0.4457},
    {1.290, 0.9651, 0.5188, 0.5185, 0.4816, 0.4815},
    {1.349, 1.021, 0.4909, 0.4891, 0.5133, 0.5109},
    {1.417, 1.086, 0.4594, 0.4570, 0.5455, 0.5430},
    {1.488, 1.155, 0.4271, 0.4252, 0.5770, 0.5748},
    {1.562, 1.229, 0.3957, 0.3938, 0.6086, 0.6062},
    {1.647, 1.313, 0.3606, 0.3607, 0.6396, 0.6393},
    {1.730, 1.395, 0.3302, 0.3309, 0.6692, 0.6691},
    {1.824, 1.490, 0.3003, 0.2998, 0.7008, 0.7002},
    {1.910, 1.576, 0.2750, 0.2738, 0.7277, 0.7262},
    {2.014, 1.681, 0.2463, 0.2453, 0.7546, 0.7547},
    {2.124, 1.792, 0.2204, 0.2183, 0.7836, 0.7817},
    {2.224, 1.894, 0.1961, 0.1963, 0.8059, 0.8037},
    {2.336, 2.008, 0.1758, 0.1742, 0.8277, 0.8258},
    {2.453, 2.127, 0.1538, 0.1538, 0.8477, 0.8462},
    {2.597, 2.274, 0.1326, 0.1319, 0.8695, 0.8681},
    {2.727, 2.407, 0.1159, 0.1147, 0.8855, 0.8853},
    {2.864, 2.547, 0.0990, 0.0991, 0.9010, 0.9009},
    {3.017, 2.703, 0.0846, 0.0842, 0.9158, 0.9159},
    {3.142, 2.830, 0.0744, 0.0737, 0.9269, 0.9263},
    {3.309, 3.001, 0.0618, 0.0616, 0.9396, 0.9384},
    {3.495, 3.191, 0.0512, 0.0505, 0.9497, 0.9495},
    {3.683, 3.382, 0.0410, 0.0413, 0.9590, 0.9587},
    {3.853, 3.556, 0.0346, 0.0344, 0.9661, 0.9656},
    {4.071, 3.778, 0.0279, 0.0273, 0.9734, 0.9727},
    {4.258, 3.969, 0.0230, 0.0223, 0.9780, 0.9777},
    {4.500, 4.217, 0.0174, 0.0172, 0.9830, 0.9828},
};
constexpr ShearedParallelogramRow kSheared[] = {
    {300, 539, 274, 1.000, 0.5039, 0.5000},
    {390, 736, 374, 1.050, 0.4772, 0.4746},
    {380, 754, 383, 1.104, 0.4537, 0.4487},
    {372, 776, 394, 1.160, 0.4254, 0.4229},
    {362, 794, 403, 1.220, 0.3989, 0.3974},
    {352, 815, 414, 1.288, 0.3726, 0.3701},
    {344, 833, 424, 1.348, 0.3503, 0.3477},
    {336, 855, 435, 1.416, 0.3259, 0.3237},
    {328, 877, 446, 1.488, 0.3015, 0.3003},
    {320, 898, 456, 1.561, 0.2788, 0.2781},
    {312, 923, 469, 1.646, 0.2581, 0.2545},
};
constexpr StriatedParallelogramRow kStriatedParallelogram[] = {
    {362, 601, 444, 1.000, 1.000, 0.5022, 0.5000},
    {344, 630, 466, 1.105, 1.111, 0.4474, 0.4452},
    {329, 660, 488, 1.210, 1.224, 0.3985, 0.3959},
    {312, 695, 514, 1.343, 1.367, 0.3440, 0.3409},
    {292, 743, 549, 1.534, 1.573, 0.2774, 0.2747},
    {270, 803, 593, 1.793, 1.852, 0.2069, 0.2051},
};
constexpr ParallelogramTableRow kParallelogram[4][11] = {
    {{3.0000, 0.0617}, {2.3258, 0.1249}, {1.9041, 0.1943}, {1.4848, 0.3013}, {1.2198, 0.3977}, {1.0000, 0.5000}, {0.8198, 0.6023}, {0.6735, 0.6987}, {0.5252, 0.8057}, {0.4300, 0.8751}, {0.3333, 0.9383}},
    {{2.8661, 0.0608}, {2.2727, 0.1191}, {1.8428, 0.1939}, {1.4333, 0.3078}, {1.2092, 0.3962}, {1.0000, 0.5000}, {0.8270, 0.6038}, {0.6977, 0.6922}, {0.5427, 0.8061}, {0.4400, 0.8809}, {0.3489, 0.9392}},
    {{2.3899, 0.0658}, {1.9885, 0.1191}, {1.6354, 0.2006}, {1.3443, 0.3072}, {1.1674, 0.3961}, {1.0000, 0.5000}, {0.8566, 0.6039}, {0.7439, 0.6928}, {0.6115, 0.7994}, {0.5029, 0.8809}, {0.4184, 0.9342}},
    {{1.7926, 0.0611}, {1.5342, 0.1238}, {1.3429, 0.2081}, {1.2097, 0.2971}, {1.1047, 0.3893}, {1.0000, 0.5000}, {0.9053, 0.6107}, {0.8266, 0.7029}, {0.7446, 0.7919}, {0.6518, 0.8762}, {0.5579, 0.9389}},
};

}  // namespace

std::span<const RectTableRow> rect_table() { return kRect; }
std::span<const StriatedTableRow> striated_table() { return kStriated; }
std::span<const ShearedParallelogramRow> sheared_parallelogram_table() { return kSheared; }
std::span<const StriatedParallelogramRow> striated_parallelogram_table() { return kStriatedParallelogram; }

std::span<const ParallelogramTableRow> parallelogram_table(double alpha) {
  constexpr double kAlphas[] = {0.5, 0.375, 0.25, 0.125};
  for (int k = 0; k < 4; ++k)
    if (std::abs(alpha - kAlphas[k]) < 1e-12) return kParallelogram[k];
  throw DomainError("no parallelogram table for this angle (use 1/2, 3/8, 1/4 or 1/8)");
}

}  // namespace percolab
