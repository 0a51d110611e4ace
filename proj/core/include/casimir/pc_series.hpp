#pragma once

#include <string>

#include "casimir/types.hpp"

namespace casimir::pc_series {

/// Exact table entry cm2/pi^2 + c0 + c2 pi^2 + c4 pi^4 with rational
/// components. Decimals are always derived from this form, never stored.
struct ExactCoeff {
    long long nm2 = 0, dm2 = 1;
    long long n0 = 0, d0 = 1;
    long long n2 = 0, d2 = 1;
    long long n4 = 0, d4 = 1;

    double value() const;
    std::string exact_string() const;
};

inline constexpr int max_order = 5;

/// beta_{i,j} (symmetric) and lambda_{i,j} (not symmetric), i + j <= 5.
/// Out-of-range orders throw std::out_of_range.
ExactCoeff beta(int i, int j);
ExactCoeff lambda(int i, int j);

/// Perfect-conductor-anchored series in a_i = 1/omega_{d,i}: the dimensionless
/// multiplier of the corresponding PC-PFA reference.
///   Energy:   sum beta a1^i a2^j             + e sum lambda a1^i a2^j
///   Force:    weights (i+j+2)/2              and (i+j+1)/2
///   Gradient: weights (i+j+2)(i+j+3)/6       and (i+j+1)(i+j+2)/6
double pc_series_eval(Kind kind, double a1, double a2, double e, int order = max_order);

}  // namespace casimir::pc_series
