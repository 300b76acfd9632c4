#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

namespace casimir1d {

/// Real number carried as mantissa * 2^exp2 with an int64 exponent, so that
/// quantities like e^{s} K_nu(s) for nu >> s stay representable where a plain
/// double would under- or overflow.  Mantissa is kept in [0.5, 1) by magnitude
/// (frexp convention); zero is {0, 0}.
class FloatExp {
public:
    constexpr FloatExp() : m_(0.0), e_(0) {}
    FloatExp(double v) { *this = from_double(v); }

    static FloatExp from_double(double v) {
        FloatExp r;
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

    static FloatExp from_parts(double mantissa, std::int64_t exp2) {
        FloatExp r;
        if (mantissa == 0.0 || !std::isfinite(mantissa)) {
            r.m_ = mantissa;
            r.e_ = 0;
            return r;
        }
        int e = 0;
        r.m_ = std::frexp(mantissa, &e);
        r.e_ = exp2 + e;
        return r;
    }

    /// exp(x) with unbounded range.
    static FloatExp exp(double x) {
        const double log2e = 1.4426950408889634074;
        double t = x * log2e;
        double ip = std::floor(t);
        double frac = x - ip * 0.6931471805599453094172321; // x - ip*ln2
        return from_parts(std::exp(frac), static_cast<std::int64_t>(ip));
    }

    double mantissa() const { return m_; }
    std::int64_t exp2() const { return e_; }
    bool is_zero() const { return m_ == 0.0; }
    bool is_finite() const { return std::isfinite(m_); }
    int sign() const { return m_ > 0 ? 1 : (m_ < 0 ? -1 : 0); }

    /// Nearest double; saturates to 0 or +-inf outside double range.
    double to_double() const {
        if (m_ == 0.0 || !std::isfinite(m_)) return m_;
        if (e_ > 1100) return m_ > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
        if (e_ < -1100) return m_ > 0 ? 0.0 : -0.0;
        return std::ldexp(m_, static_cast<int>(e_));
    }

    /// log of the absolute value.
    double log_abs() const {
        return std::log(std::fabs(m_)) + static_cast<double>(e_) * 0.6931471805599453094172321;
    }

    FloatExp operator-() const {
        FloatExp r;
        r.m_ = -m_;
        r.e_ = e_;
        return r;
    }

    friend FloatExp operator*(const FloatExp& a, const FloatExp& b) {
        if (a.is_zero() || b.is_zero()) return FloatExp();
        return from_parts(a.m_ * b.m_, a.e_ + b.e_);
    }
    friend FloatExp operator/(const FloatExp& a, const FloatExp& b) {
        if (a.is_zero()) return FloatExp();
        return from_parts(a.m_ / b.m_, a.e_ - b.e_);
    }
    friend FloatExp operator+(const FloatExp& a, const FloatExp& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::int64_t d = a.e_ - b.e_;
        if (d > 80) return a;
        if (d < -80) return b;
        if (d >= 0) return from_parts(a.m_ + std::ldexp(b.m_, static_cast<int>(-d)), a.e_);
        return from_parts(std::ldexp(a.m_, static_cast<int>(d)) + b.m_, b.e_);
    }
    friend FloatExp operator-(const FloatExp& a, const FloatExp& b) { return a + (-b); }

    FloatExp& operator*=(const FloatExp& o) { return *this = *this * o; }
    FloatExp& operator+=(const FloatExp& o) { return *this = *this + o; }
    FloatExp& operator-=(const FloatExp& o) { return *this = *this - o; }

    friend FloatExp abs(const FloatExp& a) {
        FloatExp r;
        r.m_ = std::fabs(a.m_);
        r.e_ = a.e_;
        return r;
    }

    /// |a| < |b|
    friend bool abs_less(const FloatExp& a, const FloatExp& b) {
        if (a.is_zero()) return !b.is_zero();
        if (b.is_zero()) return false;
        if (a.e_ != b.e_) return a.e_ < b.e_;
        return std::fabs(a.m_) < std::fabs(b.m_);
    }

    friend std::ostream& operator<<(std::ostream& os, const FloatExp& v) {
        return os << v.m_ << "*2^" << v.e_;
    }

private:
    double m_;
    std::int64_t e_;
};

inline FloatExp operator*(double a, const FloatExp& b) { return FloatExp(a) * b; }
inline FloatExp operator*(const FloatExp& a, double b) { return a * FloatExp(b); }

} // namespace casimir1d
