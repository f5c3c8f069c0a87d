#ifndef FOLDATLAS_RATIONAL_HPP
#define FOLDATLAS_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

#include <foldatlas/errors.hpp>

namespace foldatlas {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q" or "p" (decimal-free). Throws input_error on anything else.
Rational parse_rational(const std::string& s);

// Canonical "p/q" (or "p" when q = 1).
std::string rational_to_string(const Rational& r);

long rational_to_long(const Rational& r);
double rational_to_double(const Rational& r);

// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; } // |z|^2
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator*(const Rational& s, const GaussianRational& a) {
        return {s * a.re, s * a.im};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm();
        if (n == 0) throw input_error("GaussianRational: division by zero");
        GaussianRational p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }
};

} // namespace foldatlas

#endif
