#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace casimir {

/// Extended-range floating point: value = mant * 2^e2 with 0.5 <= |mant| < 1
/// (or mant == 0). Products of Bessel functions, Legendre columns and Mie
/// coefficients overflow IEEE doubles long before the scattering blocks they
/// combine into do; carrying the exponent separately keeps every intermediate
/// representable without log-space sign gymnastics.
class XReal {
public:
    XReal() = default;
    XReal(double v) { *this = from_double(v); }

    static XReal from_double(double v) {
        XReal r;
        if (v == 0.0 || !std::isfinite(v)) {
            r.m_ = v;
            r.e_ = 0;
            return r;
        }
        int e = 0;
        r.m_ = std::frexp(v, &e);
        r.e_ = e;
        return r;
    }

    /// exp(ln_v) with an explicit sign, for magnitudes far outside double range.
    static XReal from_ln(double ln_v, int sign = 1) {
        constexpr double ln2 = 0.6931471805599453094;
        double e = std::floor(ln_v / ln2);
        double m = std::exp(ln_v - e * ln2);  // in [1,2)
        XReal r;
        r.m_ = 0.5 * (sign < 0 ? -m : m);
        r.e_ = static_cast<std::int64_t>(e) + 1;
        r.normalize();
        return r;
    }

    double mant() const { return m_; }
    std::int64_t exp2() const { return e_; }
    bool zero() const { return m_ == 0.0; }
    int sign() const { return m_ > 0.0 ? 1 : (m_ < 0.0 ? -1 : 0); }

    double to_double() const {
        if (m_ == 0.0) return 0.0;
        if (e_ > 1024) return m_ > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
        if (e_ < -1073) return 0.0;
        return std::ldexp(m_, static_cast<int>(e_));
    }

    double log_abs() const {
        constexpr double ln2 = 0.6931471805599453094;
        if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(std::fabs(m_)) + static_cast<double>(e_) * ln2;
    }

    XReal abs() const {
        XReal r = *this;
        r.m_ = std::fabs(r.m_);
        return r;
    }

    XReal sqrt_abs() const {
        if (m_ == 0.0) return XReal();
        XReal r;
        if (e_ % 2 == 0) {
            r.m_ = std::sqrt(std::fabs(m_));
            r.e_ = e_ / 2;
        } else {
            r.m_ = std::sqrt(2.0 * std::fabs(m_));
            r.e_ = (e_ - 1) / 2;
        }
        r.normalize();
        return r;
    }

    friend XReal operator*(XReal a, XReal b) {
        XReal r;
        r.m_ = a.m_ * b.m_;
        r.e_ = a.e_ + b.e_;
        r.normalize();
        return r;
    }

    friend XReal operator/(XReal a, XReal b) {
        XReal r;
        r.m_ = a.m_ / b.m_;
        r.e_ = a.e_ - b.e_;
        r.normalize();
        return r;
    }

    friend XReal operator+(XReal a, XReal b) {
        if (a.m_ == 0.0) return b;
        if (b.m_ == 0.0) return a;
        // Align to the larger exponent; 64 binary digits of headroom.
        if (a.e_ < b.e_) std::swap(a, b);
        std::int64_t de = a.e_ - b.e_;
        if (de > 64) return a;
        XReal r;
        r.m_ = a.m_ + std::ldexp(b.m_, -static_cast<int>(de));
        r.e_ = a.e_;
        r.normalize();
        return r;
    }

    friend XReal operator-(XReal a, XReal b) { return a + (-b); }

    XReal operator-() const {
        XReal r = *this;
        r.m_ = -r.m_;
        return r;
    }

    XReal& operator*=(XReal o) { return *this = *this * o; }
    XReal& operator+=(XReal o) { return *this = *this + o; }

    /// |a| < |b|
    static bool abs_less(const XReal& a, const XReal& b) {
        if (a.m_ == 0.0) return b.m_ != 0.0;
        if (b.m_ == 0.0) return false;
        if (a.e_ != b.e_) return a.e_ < b.e_;
        return std::fabs(a.m_) < std::fabs(b.m_);
    }

private:
    void normalize() {
        if (m_ == 0.0 || !std::isfinite(m_)) {
            e_ = 0;
            return;
        }
        int e = 0;
        m_ = std::frexp(m_, &e);
        e_ += e;
    }

    double m_ = 0.0;
    std::int64_t e_ = 0;
};

}  // namespace casimir
