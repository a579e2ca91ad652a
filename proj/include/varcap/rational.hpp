#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace varcap {

// Exact rational scalar. Backed by GMP; always canonical (lowest terms,
// positive denominator).
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
    if (r.get_den() == 0) {
        throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact complex rational, the coefficient field for all symbolic work.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) { re.canonicalize(); }
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    GaussianRational(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        a += b;
        return a;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        a -= b;
        return a;
    }
    friend GaussianRational operator-(const GaussianRational& a) {
        return {-a.re, -a.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero GaussianRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
};

inline std::string to_string(const GaussianRational& c) {
    if (c.im == 0) return to_string(c.re);
    if (c.re == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "-i";
        return to_string(c.im) + "*i";
    }
    std::string s = to_string(c.re);
    if (c.im > 0) {
        s += "+";
    }
    if (c.im == 1) return s + "i";
    if (c.im == -1) return s + "-i";
    return s + to_string(c.im) + "*i";
}

}  // namespace varcap
