#pragma once

// Test-only high-precision oracles for half-integer-order modified Bessel
// functions, independent of the library's recurrence implementation:
// I by direct series summation at 256-bit precision, K by its exact finite
// closed form. Used to pin the Miller-recurrence values.

namespace testing {

double mpfr_bessel_i_half(int l, double x);
double mpfr_bessel_k_half(int l, double x);

}  // namespace testing
