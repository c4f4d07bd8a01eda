#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

#include "shapeopt/errors.hpp"

namespace shapeopt::ad {

/// Forward-mode dual number: a value plus N directional derivatives.
///
/// The tangent width is a template parameter, so expressions can only combine
/// jets of one width; a width mismatch is a compile error rather than a runtime
/// check. Elementary operations cover + - * / pow sqrt sin cos log, which is
/// everything the frame stiffness and Bezier evaluations need.
template <std::size_t N>
struct Jet {
    static constexpr std::size_t width = N;

    double value{0.0};
    std::array<double, N> tangent{};

    constexpr Jet() = default;
    constexpr Jet(double v) : value(v) {}  // NOLINT: constants promote implicitly
    constexpr Jet(double v, const std::array<double, N>& t) : value(v), tangent(t) {}

    /// Input variable seeded along basis direction k.
    static constexpr Jet variable(double v, std::size_t k) {
        Jet j(v);
        j.tangent[k] = 1.0;
        return j;
    }

    Jet& operator+=(const Jet& o) {
        value += o.value;
        for (std::size_t k = 0; k < N; ++k) tangent[k] += o.tangent[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        value -= o.value;
        for (std::size_t k = 0; k < N; ++k) tangent[k] -= o.tangent[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator-(const Jet& a) {
        Jet r(-a.value);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = -a.tangent[k];
        return r;
    }
    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(a.value + b.value);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = a.tangent[k] + b.tangent[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r(a.value - b.value);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = a.tangent[k] - b.tangent[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.value * b.value);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = a.value * b.tangent[k] + b.value * a.tangent[k];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.value == 0.0) throw DomainError("divide: zero denominator");
        const double inv = 1.0 / b.value;
        Jet r(a.value * inv);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = (a.tangent[k] - r.value * b.tangent[k]) * inv;
        return r;
    }

    // Mixed jet/scalar forms avoid building a zero tangent for the constant.
    friend Jet operator+(const Jet& a, double s) { Jet r = a; r.value += s; return r; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { Jet r = a; r.value -= s; return r; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.value += s; return r; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r(a.value * s);
        for (std::size_t k = 0; k < N; ++k) r.tangent[k] = a.tangent[k] * s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) {
        if (s == 0.0) throw DomainError("divide: zero denominator");
        return a * (1.0 / s);
    }
    friend Jet operator/(double s, const Jet& a) { return Jet(s) / a; }

    // Ordering looks at the value only (used for branch selection).
    friend bool operator<(const Jet& a, const Jet& b) { return a.value < b.value; }
    friend bool operator>(const Jet& a, const Jet& b) { return a.value > b.value; }
    friend bool operator<(const Jet& a, double s) { return a.value < s; }
    friend bool operator>(const Jet& a, double s) { return a.value > s; }
};

namespace detail {
inline std::string fmt_arg(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
}  // namespace detail

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
    if (!(a.value > 0.0)) {
        throw DomainError("sqrt: argument must be positive, got " + detail::fmt_arg(a.value));
    }
    const double s = std::sqrt(a.value);
    const double d = 0.5 / s;
    Jet<N> r(s);
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = d * a.tangent[k];
    return r;
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
    const double c = std::cos(a.value);
    Jet<N> r(std::sin(a.value));
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = c * a.tangent[k];
    return r;
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
    const double s = -std::sin(a.value);
    Jet<N> r(std::cos(a.value));
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = s * a.tangent[k];
    return r;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
    if (!(a.value > 0.0)) {
        throw DomainError("log: argument must be positive, got " + detail::fmt_arg(a.value));
    }
    const double inv = 1.0 / a.value;
    Jet<N> r(std::log(a.value));
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = inv * a.tangent[k];
    return r;
}

/// a^p for a constant exponent. Integer exponents accept any base except
/// 0 with p < 1; fractional exponents need a positive base.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
    const bool integral = std::floor(p) == p;
    if (!integral && !(a.value > 0.0)) {
        throw DomainError("pow: fractional exponent of non-positive base " + detail::fmt_arg(a.value));
    }
    if (a.value == 0.0 && p < 1.0) {
        throw DomainError("pow: zero base with exponent " + detail::fmt_arg(p));
    }
    const double d = p * std::pow(a.value, p - 1.0);
    Jet<N> r(std::pow(a.value, p));
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = d * a.tangent[k];
    return r;
}

/// a^b with both operands varying; requires a > 0.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, const Jet<N>& b) {
    if (!(a.value > 0.0)) {
        throw DomainError("pow: base must be positive when the exponent varies, got " + detail::fmt_arg(a.value));
    }
    const double v = std::pow(a.value, b.value);
    const double da = b.value * std::pow(a.value, b.value - 1.0);
    const double db = v * std::log(a.value);
    Jet<N> r(v);
    for (std::size_t k = 0; k < N; ++k) r.tangent[k] = da * a.tangent[k] + db * b.tangent[k];
    return r;
}

// Scalar counterparts so templated kernels can run on double or Jet.
inline double value_of(double x) { return x; }
template <std::size_t N>
double value_of(const Jet<N>& x) { return x.value; }

}  // namespace shapeopt::ad
