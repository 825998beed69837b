#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "crt/error.hpp"

namespace crt {

using Rational = mpq_class;

/// Make a canonical rational from a numerator/denominator pair.
inline Rational rat(long num, long den = 1) {
    if (den == 0) fail(ErrorKind::NotAUnit, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Exact complex number a + b*i with arbitrary-precision rational parts.
/// The coefficient field for every formal power series in the project.
struct Gaussian {
    Rational re;
    Rational im;

    Gaussian() : re(0), im(0) {}
    Gaussian(Rational r) : re(std::move(r)), im(0) {}
    Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Gaussian(long r) : re(r), im(0) {}

    static Gaussian zero() { return Gaussian(); }
    static Gaussian one() { return Gaussian(1); }
    static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Gaussian conj() const { return Gaussian(re, -im); }

    Gaussian operator-() const { return Gaussian(-re, -im); }

    Gaussian& operator+=(const Gaussian& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }

    /// Exact reciprocal; the divisor must be nonzero.
    Gaussian inverse() const {
        if (is_zero()) fail(ErrorKind::NotAUnit, "division by zero Gaussian rational");
        Rational n = re * re + im * im;
        return Gaussian(re / n, -im / n);
    }

    friend Gaussian operator/(const Gaussian& a, const Gaussian& b) { return a * b.inverse(); }

    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    /// Canonical text form: "0", "3/2", "i", "-2i", "1/2+3i", "1-i".
    std::string str() const;
};

inline Gaussian gauss(long re_num, long re_den, long im_num, long im_den) {
    return Gaussian(rat(re_num, re_den), rat(im_num, im_den));
}

std::string rational_str(const Rational& q);

/// Parse "p/q" or "p"; throws SyntaxError on malformed input.
Rational parse_rational(const std::string& text);

} // namespace crt
