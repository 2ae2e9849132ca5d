#pragma once

#include <cstdint>

namespace frozen {
// Reference values printed by tests/oracles/freeze.cpp (MPFR and integer enumeration).

struct MinimaRef {
    std::uint64_t p;
    double value;
};

inline constexpr double kPow7Frac = 0.30351707065885053;
inline constexpr std::uint64_t kJoint1e5 = 4796;
inline constexpr std::uint64_t kJoint1e6 = 34274;
inline constexpr std::uint64_t kJoint1e7 = 253791;
inline constexpr std::uint64_t kSingle95At1e6 = 39317;
inline constexpr double kMainTerm1e5 = 4355.5725615272722;
inline constexpr double kMainTerm1e6 = 31612.875954183288;
inline constexpr double kMainTerm1e7 = 236002.83368478631;
inline constexpr double kRatio1e5 = 1.1011181497383418;
inline constexpr double kRatio1e6 = 1.0841784863127764;
inline constexpr double kRatio1e7 = 1.0753726810711612;
inline constexpr double kSingleMainTerm1e6 = 36277.141660780042;
inline constexpr MinimaRef kMinima1e5[] = {
    {2, 0.1715728752538099},
    {5, 0.071067811865475242},
    {17, 0.041630560342615829},
    {157, 0.031529292575922664},
    {181, 0.027345210469796166},
    {239, 0.0029585928302833363},
    {577, 0.0012254892758431586},
    {33053, 0.00087711791064804217},
    {35839, 0.00013811064654599628},
    {75041, 6.5960574442872473e-05},
};
// eps=0 closest approach to the threshold: 0.329
inline constexpr std::uint64_t kWitnessEps0 = 45376;
inline constexpr std::uint64_t kIntersection97At1e6 = 45376;
// eps=0.01 closest approach to the threshold: 0.451
inline constexpr std::uint64_t kWitnessEps001 = 45376;
inline constexpr double kMinLinearSum = 14355.680251142367;
inline constexpr double kLinearRe = -77.591364816243782;
inline constexpr double kLinearIm = 106.37171356312892;
inline constexpr double kGammaStarRe = 9.7531687334064578;
inline constexpr double kGammaStarIm = -0.70389593901896008;
inline constexpr double kDoubleSumRe = -5.5399192332937242;
inline constexpr double kDoubleSumIm = -190.04776278312391;
inline constexpr double kMinProductSum = 271.35440129035976;
inline constexpr double kUpsilon50 = -1.6608989795927134;

}  // namespace frozen
