#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sgg {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct math_error : std::runtime_error {
    explicit math_error(const std::string& m) : std::runtime_error(m) {}
};

// Element of Q(i). Both parts are always canonical (reduced, positive
// denominator), which cpp_rational maintains by construction.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}  // NOLINT: implicit by design
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // |z|^2, a nonnegative Rational; zero iff z = 0.
    Rational norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw math_error("division by zero in Q(i)");
        Rational n = b.norm();
        GaussianRational num = a * b.conj();
        return {num.re / n, num.im / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { *this = *this + b; return *this; }
    GaussianRational& operator-=(const GaussianRational& b) { *this = *this - b; return *this; }
    GaussianRational& operator*=(const GaussianRational& b) { *this = *this * b; return *this; }
    GaussianRational& operator/=(const GaussianRational& b) { *this = *this / b; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Canonical string forms: "a/b" for rationals, "a/b+c/d*i" for complex
// values (no spaces, '/1' omitted, unit imaginary coefficient printed as
// plain 'i'). parse_scalar accepts exactly what render_scalar emits.
std::string render_rational(const Rational& r);
std::string render_scalar(const GaussianRational& z);
Rational parse_rational(const std::string& text);
GaussianRational parse_scalar(const std::string& text);

}  // namespace sgg
