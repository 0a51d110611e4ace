#include "mpfr_bessel.hpp"

#include <mpfr.h>

namespace testing {

namespace {
constexpr mpfr_prec_t kPrec = 256;
}

// I_{l+1/2}(x) = sum_k (x/2)^{2k+l+1/2} / (k! Gamma(k+l+3/2))
double mpfr_bessel_i_half(int l, double x) {
    mpfr_t half_x, term, sum, ratio, nu, tmp;
    mpfr_inits2(kPrec, half_x, term, sum, ratio, nu, tmp, (mpfr_ptr) nullptr);

    mpfr_set_d(half_x, x / 2.0, MPFR_RNDN);
    mpfr_set_d(nu, l + 0.5, MPFR_RNDN);

    // term_0 = (x/2)^{l+1/2} / Gamma(l + 3/2)
    mpfr_set_d(tmp, l + 0.5, MPFR_RNDN);
    mpfr_pow(term, half_x, tmp, MPFR_RNDN);
    mpfr_add_d(tmp, nu, 1.0, MPFR_RNDN);
    mpfr_gamma(tmp, tmp, MPFR_RNDN);
    mpfr_div(term, term, tmp, MPFR_RNDN);

    mpfr_set(sum, term, MPFR_RNDN);
    mpfr_mul(ratio, half_x, half_x, MPFR_RNDN);  // x^2/4

    for (int k = 0; k < 100000; ++k) {
        // term_{k+1} = term_k * (x^2/4) / ((k+1)(k + l + 3/2))
        mpfr_mul(term, term, ratio, MPFR_RNDN);
        mpfr_set_d(tmp, (k + 1.0) * (k + l + 1.5), MPFR_RNDN);
        mpfr_div(term, term, tmp, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
        // stop when the term is 80 decimal digits below the sum
        mpfr_abs(tmp, term, MPFR_RNDN);
        mpfr_mul_2si(tmp, tmp, 270, MPFR_RNDN);
        mpfr_abs(nu, sum, MPFR_RNDN);
        if (mpfr_cmp(tmp, nu) < 0) break;
    }

    const double out = mpfr_get_d(sum, MPFR_RNDN);
    mpfr_clears(half_x, term, sum, ratio, nu, tmp, (mpfr_ptr) nullptr);
    return out;
}

// K_{l+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{k=0}^{l} (l+k)! / (k! (l-k)! (2x)^k)
double mpfr_bessel_k_half(int l, double x) {
    mpfr_t sum, term, tmp, out;
    mpfr_inits2(kPrec, sum, term, tmp, out, (mpfr_ptr) nullptr);

    mpfr_set_d(term, 1.0, MPFR_RNDN);
    mpfr_set_d(sum, 1.0, MPFR_RNDN);
    for (int k = 1; k <= l; ++k) {
        // term_k = term_{k-1} * (l+k)(l-k+1) / (k * 2x)
        mpfr_mul_d(term, term, static_cast<double>(l + k) * (l - k + 1), MPFR_RNDN);
        mpfr_set_d(tmp, 2.0 * k * x, MPFR_RNDN);
        mpfr_div(term, term, tmp, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
    }

    mpfr_const_pi(tmp, MPFR_RNDN);
    mpfr_div_d(tmp, tmp, 2.0 * x, MPFR_RNDN);
    mpfr_sqrt(tmp, tmp, MPFR_RNDN);
    mpfr_set_d(out, -x, MPFR_RNDN);
    mpfr_exp(out, out, MPFR_RNDN);
    mpfr_mul(out, out, tmp, MPFR_RNDN);
    mpfr_mul(out, out, sum, MPFR_RNDN);

    const double v = mpfr_get_d(out, MPFR_RNDN);
    mpfr_clears(sum, term, tmp, out, (mpfr_ptr) nullptr);
    return v;
}

}  // namespace testing
