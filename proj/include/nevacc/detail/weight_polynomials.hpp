// Polynomial tables P_j(i, n), j = 0..10, for the closed-form one-step
// Neville weights. Each table is the expanded numerator D_j * P_j(i, n) as a
// list of monomials coef * i^a * n^b; the divisor D_j is stored alongside.
//
// Transcribed term by term from the published expressions. One monomial of
// P_8 (49594888 n^6) is printed without a sign; it carries `sign_unprinted`
// and its sign is adjudicated against the exact inverse at first use.

#ifndef NEVACC_DETAIL_WEIGHT_POLYNOMIALS_HPP
#define NEVACC_DETAIL_WEIGHT_POLYNOMIALS_HPP

#include <cstdint>
#include <span>

namespace nevacc::detail {

struct Monomial {
    std::int64_t coef;
    int i_pow;
    int n_pow;
    bool sign_unprinted = false;
};

struct PolynomialTable {
    std::int64_t divisor;
    std::span<const Monomial> terms;
};

inline constexpr Monomial kP0[] = {{1, 0, 0}};

inline constexpr Monomial kP1[] = {{2, 1, 0}, {-3, 0, 1}, {-1, 0, 2}};

inline constexpr Monomial kP2[] = {
    {24, 1, 0}, {24, 2, 0}, {-26, 0, 1}, {-36, 1, 1}, {9, 0, 2}, {-12, 1, 2}, {14, 0, 3}, {3, 0, 4},
};

inline constexpr Monomial kP3[] = {
    {48, 1, 0},  {96, 2, 0},  {48, 3, 0},  {-48, 0, 1}, {-124, 1, 1}, {-72, 2, 1},
    {26, 0, 2},  {-6, 1, 2},  {-24, 2, 2}, {29, 0, 3},  {28, 1, 3},   {-1, 0, 4},
    {6, 1, 4},   {-5, 0, 5},  {-1, 0, 6},
};

inline constexpr Monomial kP4[] = {
    {5760, 1, 0},   {17280, 2, 0}, {17280, 3, 0}, {5760, 4, 0},  {-5712, 0, 1},  {-20640, 1, 1},
    {-23520, 2, 1}, {-8640, 3, 1}, {3380, 0, 2},  {2400, 1, 2},  {-3600, 2, 2},  {-2880, 3, 2},
    {3660, 0, 3},   {6840, 1, 3},  {3360, 2, 3},  {-385, 0, 4},  {600, 1, 4},    {720, 2, 4},
    {-888, 0, 5},   {-600, 1, 5},  {-130, 0, 6},  {-120, 1, 6},  {60, 0, 7},     {15, 0, 8},
};

inline constexpr Monomial kP5[] = {
    {11520, 1, 0},  {46080, 2, 0},  {69120, 3, 0},  {46080, 4, 0},  {11520, 5, 0},
    {-11520, 0, 1}, {-52704, 1, 1}, {-88320, 2, 1}, {-64320, 3, 1}, {-17280, 4, 1},
    {6768, 0, 2},   {11560, 1, 2},  {-2400, 2, 2},  {-12960, 3, 2}, {-5760, 4, 2},
    {7652, 0, 3},   {21000, 1, 3},  {20400, 2, 3},  {6720, 3, 3},
    {-680, 0, 4},   {430, 1, 4},    {2640, 2, 4},   {1440, 3, 4},
    {-2085, 0, 5},  {-2976, 1, 5},  {-1200, 2, 5},
    {-395, 0, 6},   {-500, 1, 6},   {-240, 2, 6},
    {198, 0, 7},    {120, 1, 7},
    {70, 0, 8},     {30, 1, 8},
    {-5, 0, 9},     {-3, 0, 10},
};

inline constexpr Monomial kP6[] = {
    {2903040, 1, 0},   {14515200, 2, 0},  {29030400, 3, 0},  {29030400, 4, 0},  {14515200, 5, 0},
    {2903040, 6, 0},
    {-2914560, 0, 1},  {-16184448, 1, 1}, {-35538048, 2, 1}, {-38465280, 3, 1}, {-20563200, 4, 1},
    {-4354560, 5, 1},
    {1667232, 0, 2},   {4618656, 1, 2},   {2308320, 2, 2},   {-3870720, 3, 2},  {-4717440, 4, 2},
    {-1451520, 5, 2},
    {1942136, 0, 3},   {7220304, 1, 3},   {10432800, 2, 3},  {6834240, 3, 3},   {1693440, 4, 3},
    {-97020, 0, 4},    {-63000, 1, 4},    {773640, 2, 4},    {1028160, 3, 4},   {362880, 4, 4},
    {-523446, 0, 5},   {-1275372, 1, 5},  {-1052352, 2, 5},  {-302400, 3, 5},
    {-146727, 0, 6},   {-225540, 1, 6},   {-186480, 2, 6},   {-60480, 3, 6},
    {44070, 0, 7},     {80136, 1, 7},     {30240, 2, 7},
    {30177, 0, 8},     {25200, 1, 8},     {7560, 2, 8},
    {406, 0, 9},       {-1260, 1, 9},
    {-2205, 0, 10},    {-756, 1, 10},
    {-126, 0, 11},
    {63, 0, 12},
};

inline constexpr Monomial kP7[] = {
    {5806080, 1, 0},    {34836480, 2, 0},   {87091200, 3, 0},   {116121600, 4, 0},  {87091200, 5, 0},
    {34836480, 6, 0},   {5806080, 7, 0},
    {-5806080, 0, 1},   {-38198016, 1, 1},  {-103444992, 2, 1}, {-148006656, 3, 1}, {-118056960, 4, 1},
    {-49835520, 5, 1},  {-8709120, 6, 1},
    {3303936, 0, 2},    {12571776, 1, 2},   {13853952, 2, 2},   {-3124800, 3, 2},   {-17176320, 4, 2},
    {-12337920, 5, 2},  {-2903040, 6, 2},
    {3783456, 0, 3},    {18324880, 1, 3},   {35306208, 2, 3},   {34534080, 3, 3},   {17055360, 4, 3},
    {3386880, 5, 3},
    {-147000, 0, 4},    {-320040, 1, 4},    {1421280, 2, 4},    {3603600, 3, 4},    {2782080, 4, 4},
    {725760, 5, 4},
    {-920780, 0, 5},    {-3597636, 1, 5},   {-4655448, 2, 5},   {-2709504, 3, 5},   {-604800, 4, 5},
    {-313950, 0, 6},    {-744534, 1, 6},    {-824040, 2, 6},    {-493920, 3, 6},    {-120960, 4, 6},
    {27573, 0, 7},      {248412, 1, 7},     {220752, 2, 7},     {60480, 3, 7},
    {65187, 0, 8},      {110754, 1, 8},     {65520, 2, 8},      {15120, 3, 8},
    {14457, 0, 9},      {-1708, 1, 9},      {-2520, 2, 9},
    {-5397, 0, 10},     {-5922, 1, 10},     {-1512, 2, 10},
    {-1729, 0, 11},     {-252, 1, 11},
    {273, 0, 12},       {126, 1, 12},
    {63, 0, 13},
    {-9, 0, 14},
};

inline constexpr Monomial kP8[] = {
    {1393459200, 1, 0},   {9754214400, 2, 0},   {29262643200, 3, 0},  {48771072000, 4, 0},
    {48771072000, 5, 0},  {29262643200, 6, 0},  {9754214400, 7, 0},   {1393459200, 8, 0},
    {-1387653120, 0, 1},  {-10560983040, 1, 1}, {-33994321920, 2, 1}, {-60348395520, 3, 1},
    {-63855267840, 4, 1}, {-40294195200, 5, 1}, {-14050713600, 6, 1}, {-2090188800, 7, 1},
    {807277824, 0, 2},    {3810170880, 1, 2},   {6342174720, 2, 2},   {2574996480, 3, 2},
    {-4872268800, 4, 2},  {-7083417600, 5, 2},  {-3657830400, 6, 2},  {-696729600, 7, 2},
    {891826560, 0, 3},    {5306000640, 1, 3},   {12871461120, 2, 3},  {16761669120, 3, 3},
    {12381465600, 4, 3},  {4906137600, 5, 3},   {812851200, 6, 3},
    {-67571600, 0, 4},    {-112089600, 1, 4},   {264297600, 2, 4},    {1205971200, 3, 4},
    {1532563200, 4, 4},   {841881600, 5, 4},    {174182400, 6, 4},
    {-204569280, 0, 5},   {-1084419840, 1, 5},  {-1980740160, 2, 5},  {-1767588480, 3, 5},
    {-795432960, 4, 5},   {-145152000, 5, 5},
    {49594888, 0, 6, true},
    {-254036160, 1, 6},   {-376457760, 2, 6},   {-316310400, 3, 6},
    {-147571200, 4, 6},   {-29030400, 5, 6},
    {-1304520, 0, 7},     {66236400, 1, 7},     {112599360, 2, 7},    {67495680, 3, 7},
    {14515200, 4, 7},
    {6310455, 0, 8},      {42225840, 1, 8},     {42305760, 2, 8},     {19353600, 3, 8},
    {3628800, 4, 8},
    {5741280, 0, 9},      {3059760, 1, 9},      {-1014720, 2, 9},     {-604800, 3, 9},
    {383204, 0, 10},      {-2716560, 1, 10},    {-1784160, 2, 10},    {-362880, 3, 10},
    {-825840, 0, 11},     {-475440, 1, 11},     {-60480, 2, 11},
    {-76790, 0, 12},      {95760, 1, 12},       {30240, 2, 12},
    {57120, 0, 13},       {15120, 1, 13},
    {1260, 0, 14},        {-2160, 1, 14},
    {-1800, 0, 15},
    {135, 0, 16},
};

inline constexpr Monomial kP9[] = {
    {2786918400, 1, 0},    {22295347200, 2, 0},   {78033715200, 3, 0},   {156067430400, 4, 0},
    {195084288000, 5, 0},  {156067430400, 6, 0},  {78033715200, 7, 0},   {22295347200, 8, 0},
    {2786918400, 9, 0},
    {-2786918400, 0, 1},   {-23897272320, 1, 1},  {-89110609920, 2, 1},  {-188685434880, 3, 1},
    {-248407326720, 4, 1}, {-208298926080, 5, 1}, {-108689817600, 6, 1}, {-32281804800, 7, 1},
    {-4180377600, 8, 1},
    {1642567680, 0, 2},    {9234897408, 1, 2},    {20304691200, 2, 2},   {17834342400, 3, 2},
    {-4594544640, 4, 2},   {-23911372800, 5, 2},  {-21482496000, 6, 2},  {-8709120000, 7, 2},
    {-1393459200, 8, 2},
    {1839755520, 0, 3},    {12395654400, 1, 3},   {36354923520, 2, 3},   {59266260480, 3, 3},
    {58286269440, 4, 3},   {34575206400, 5, 3},   {11437977600, 6, 3},   {1625702400, 7, 3},
    {-193851264, 0, 4},    {-359322400, 1, 4},    {304416000, 2, 4},     {2940537600, 3, 4},
    {5477068800, 4, 4},    {4748889600, 5, 4},    {2032128000, 6, 4},    {348364800, 7, 4},
    {-486633040, 0, 5},    {-2577978240, 1, 5},   {-6130320000, 2, 5},   {-7496657280, 3, 5},
    {-5126042880, 4, 5},   {-1881169920, 5, 5},   {-290304000, 6, 5},
    {-53606320, 0, 6},     {-607262096, 1, 6},    {-1260987840, 2, 6},   {-1385536320, 3, 6},
    {-927763200, 4, 6},    {-353203200, 5, 6},    {-58060800, 6, 6},
    {40638488, 0, 7},      {129863760, 1, 7},     {357671520, 2, 7},     {360190080, 3, 7},
    {164021760, 4, 7},     {29030400, 5, 7},
    {-6368192, 0, 8},      {97072590, 1, 8},      {169063200, 2, 8},     {123318720, 3, 8},
    {45964800, 4, 8},      {7257600, 5, 8},
    {-252565, 0, 9},       {17602080, 1, 9},      {4090080, 2, 9},       {-3239040, 3, 9},
    {-1209600, 4, 9},
    {5530785, 0, 10},      {-4666712, 1, 10},     {-9001440, 2, 10},     {-4294080, 3, 10},
    {-725760, 4, 10},
    {-77996, 0, 11},       {-2602560, 1, 11},     {-1071840, 2, 11},     {-120960, 3, 11},
    {-873524, 0, 12},      {37940, 1, 12},        {252000, 2, 12},       {60480, 3, 12},
    {34690, 0, 13},        {144480, 1, 13},       {30240, 2, 13},
    {61670, 0, 14},        {-1800, 1, 14},        {-4320, 2, 14},
    {-6212, 0, 15},        {-3600, 1, 15},
    {-1620, 0, 16},        {270, 1, 16},
    {315, 0, 17},
    {-15, 0, 18},
};

inline constexpr Monomial kP10[] = {
    {367873228800, 1, 0},     {3310859059200, 2, 0},    {13243436236800, 3, 0},   {30901351219200, 4, 0},
    {46352026828800, 5, 0},   {46352026828800, 6, 0},   {30901351219200, 7, 0},   {13243436236800, 8, 0},
    {3310859059200, 9, 0},    {367873228800, 10, 0},
    {-370660147200, 0, 1},    {-3522313175040, 1, 1},   {-14917040455680, 2, 1},  {-36669077913600, 3, 1},
    {-57696244531200, 4, 1},  {-60285225369600, 5, 1},  {-41842514165760, 6, 1},  {-18608254156800, 7, 1},
    {-4813008076800, 8, 1},   {-551809843200, 9, 1},
    {211314216960, 0, 2},     {1435825391616, 1, 2},    {3899225696256, 2, 2},    {5034352435200, 3, 2},
    {1747653304320, 4, 2},    {-3762781102080, 5, 2},   {-5991990681600, 6, 2},   {-3985293312000, 7, 2},
    {-1333540454400, 8, 2},   {-183936614400, 9, 2},
    {252909144576, 0, 3},     {1879074109440, 1, 3},    {6435076285440, 2, 3},    {12621996288000, 3, 3},
    {15516933949440, 4, 3},   {12257714810880, 5, 3},   {6073740288000, 6, 3},    {1724405760000, 7, 3},
    {214592716800, 8, 3},
    {-12322523136, 0, 4},     {-73018923648, 1, 4},     {-7247644800, 2, 4},      {428333875200, 3, 4},
    {1111124044800, 4, 4},    {1349826508800, 5, 4},    {895094323200, 6, 4},     {314225049600, 7, 4},
    {45984153600, 8, 4},
    {-77131325216, 0, 5},     {-404528688960, 1, 5},    {-1149495367680, 2, 5},   {-1798761000960, 3, 5},
    {-1666196421120, 4, 5},   {-924952089600, 5, 5},    {-286634557440, 6, 5},    {-38320128000, 7, 5},
    {-18618732528, 0, 6},     {-87234630912, 1, 6},     {-246608991552, 2, 6},    {-349341189120, 3, 6},
    {-305355536640, 4, 6},    {-169087564800, 5, 6},    {-54286848000, 6, 6},     {-7664025600, 7, 6},
    {13184713168, 0, 7},      {22506296736, 1, 7},      {64354656960, 2, 7},      {94757731200, 3, 7},
    {69195962880, 4, 7},      {25482885120, 5, 7},      {3832012800, 6, 7},
    {3778269000, 0, 8},       {11972980536, 1, 8},      {35129924280, 2, 8},      {38594413440, 3, 8},
    {22345424640, 4, 8},      {7025356800, 5, 8},       {958003200, 6, 8},
    {-2732570786, 0, 9},      {2290135980, 1, 9},       {2863365120, 2, 9},       {112337280, 3, 9},
    {-587220480, 4, 9},       {-159667200, 5, 9},
    {-185879199, 0, 10},      {114057636, 1, 10},       {-1804196064, 2, 10},     {-1755008640, 3, 10},
    {-662618880, 4, 10},      {-95800320, 5, 10},
    {555823886, 0, 11},       {-353833392, 1, 11},      {-485020800, 2, 11},      {-157449600, 3, 11},
    {-15966720, 4, 11},
    {-37142193, 0, 12},       {-110297088, 1, 12},      {38272080, 2, 12},        {41247360, 3, 12},
    {7983360, 4, 12},
    {-65980420, 0, 13},       {23650440, 1, 13},        {23063040, 2, 13},        {3991680, 3, 13},
    {9237162, 0, 14},         {7902840, 1, 14},         {-807840, 2, 14},         {-570240, 3, 14},
    {3778940, 0, 15},         {-1295184, 1, 15},        {-475200, 2, 15},
    {-860970, 0, 16},         {-178200, 1, 16},         {35640, 2, 16},
    {-48378, 0, 17},          {41580, 1, 17},
    {29205, 0, 18},           {-1980, 1, 18},
    {-2970, 0, 19},
    {99, 0, 20},
};

inline constexpr PolynomialTable kPolynomials[] = {
    {1, kP0},          {2, kP1},          {24, kP2},         {48, kP3},
    {5760, kP4},       {11520, kP5},      {2903040, kP6},    {5806080, kP7},
    {1393459200, kP8}, {2786918400, kP9}, {367873228800, kP10},
};

} // namespace nevacc::detail

#endif // NEVACC_DETAIL_WEIGHT_POLYNOMIALS_HPP
