#pragma once

// Generated by tools/rca_fit.cpp -- do not edit by hand.
// Closed-form coefficients for the log-domain reciprocal map.

namespace stpolar::detail::rcafit {

inline constexpr int kNumIntervals = 5;
inline constexpr int kDegree = 14;
inline constexpr double kXiLeft = -14;
inline constexpr double kXiRight = 4.5;
inline constexpr double kLnLn2 = -0.36651292058166432;

inline constexpr double kKnots[kNumIntervals + 1] = {-14, -10, -6, -2.5, 1, 4.5};

// ln(1-C(g)) ~ kTailLnA - kTailAlpha*g - kTailBeta*ln(g) + kTailDelta/g
inline constexpr double kTailLnA = 0.23521209579075797;
inline constexpr double kTailAlpha = 1.0000021061581943;
inline constexpr double kTailBeta = 0.49815931614324521;
inline constexpr double kTailDelta = -0.91544078826130304;
inline constexpr double kJumpLeft = -8.1027502694119846e-06;
inline constexpr double kJumpRight = -0.00041345059908337589;

inline constexpr double kCheb[kNumIntervals][kDegree + 1] = {
    {2.353473425099335, -0.18277601205714938, -0.0080782199040212894, -0.0004701061317343639, -3.0549396436126604e-05, -2.1026325842517696e-06, -1.4928691841239091e-07, -1.0743759630097808e-08, -7.7302993635915606e-10, -5.4899403541715701e-11, -3.7927883056454449e-12, -3.4837318215371247e-13, 1.1561122429763298e-14, 3.6992631180510215e-14, 1.8992215207921011e-14},
    {1.8961573824355116, -0.28358704268811991, -0.019159132417674307, -0.0016799164646329838, -0.00017186449315008309, -1.6113259792079521e-05, 2.0598141521036932e-06, -1.2801109795024247e-05, 7.8219617347071346e-06, 1.6843422791801289e-05, -1.0937611253976816e-05, -6.9589832894697184e-06, 6.1706822086578701e-06, -9.8135412272733666e-07, 4.232060936470994e-07},
    {1.1437970435924349, -0.49517906153207047, -0.053488003433168264, -0.0068352434310242549, -0.0008728342312602777, -0.00010412780792853718, -1.3671975182472095e-05, -1.7121252077127261e-06, 1.0826690251874992e-06, -1.4827491428004436e-06, 3.6621706069143536e-07, 7.7735737941490399e-07, -5.4735300304050345e-07, -1.8745987955259836e-07, 2.8089878189770564e-07},
    {-1.0010439997432385, -1.9694870336209223, -0.4722001564807996, -0.11160558901256118, -0.024873746658787419, -0.0051544694309112312, -0.00095986997780866576, -0.00014658322418592551, -1.1499784380123815e-05, 3.3467177849984725e-06, 2.0852554775796504e-06, 6.6792123923908877e-07, 1.7068594851954443e-07, 5.6063421233210063e-08, 2.5015061949629213e-08},
    {-31.710708715513825, -40.039030493420498, -15.373518403907473, -4.2126394170111956, -0.88679895504255479, -0.15296658637953281, -0.021375483877001854, -0.0026727867728043365, -0.00039028512827907018, 3.2737996222387267e-05, 9.1243664962566601e-06, -4.5332619025965455e-05, 1.9438452461824815e-05, 2.5803807935724047e-05, -3.5461175634702675e-05}
};

} // namespace stpolar::detail::rcafit
