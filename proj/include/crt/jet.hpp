#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crt/gaussian.hpp"
#include "crt/monomial.hpp"
#include "crt/varspace.hpp"

namespace crt {

/// Multivariate formal power series truncated at total degree `order`,
/// with exact Gaussian-rational coefficients. All arithmetic is exact
/// modulo the ideal of terms of degree > order.
///
/// `eff_order` tracks how far the jet is a faithful truncation of the
/// analytic object it stands for: differentiation costs one degree, and
/// the loss propagates through arithmetic as a min. Verdicts are always
/// qualified by this value, never silently extrapolated.
class Jet {
public:
    using Coeffs = std::map<Monomial, Gaussian>;

    Jet(SpacePtr space, int order);

    static Jet constant(SpacePtr space, int order, Gaussian c);
    static Jet variable(SpacePtr space, int order, int flat);
    static Jet variable(SpacePtr space, int order, const std::string& block, int pos1 = 1);

    const SpacePtr& space() const { return space_; }
    int order() const { return order_; }
    int eff_order() const { return eff_; }
    const Coeffs& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    /// True when no stored coefficient has total degree <= k.
    bool is_zero_to(int k) const;
    /// Degree of the lowest nonzero term; order+1 for the zero jet.
    int valuation() const { return c_.empty() ? order_ + 1 : c_.begin()->first.degree(); }

    Gaussian constant_term() const;
    Gaussian coefficient(const Monomial& m) const;
    std::optional<std::pair<Monomial, Gaussian>> first_term() const;

    /// Adds c * x^m (builder API; zero results are elided).
    void add_term(const Monomial& m, const Gaussian& c);

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);

    Jet scaled(const Gaussian& c) const;
    friend Jet operator*(const Gaussian& c, const Jet& f) { return f.scaled(c); }

    /// Product truncated at total degree k (k <= order).
    Jet mul_trunc(const Jet& o, int k) const;

    /// Formal partial derivative; effective order drops by one.
    Jet derive(int flat) const;
    Jet derive(const std::string& block, int pos1 = 1) const;

    /// Coefficient-wise complex conjugation (the bar of a formal series).
    Jet bar() const;

    /// Exact evaluation of the truncated representative at a point.
    Jet evaluate_partial() const = delete;
    Gaussian evaluate(std::span<const Gaussian> point) const;

    /// Substitute one jet per variable of this jet's space. Every
    /// argument must vanish at 0 and share a common space and order.
    Jet compose(std::span<const Jet> args) const;

    /// Multiplicative inverse; requires a nonzero constant term.
    Jet invert_unit() const;

    /// Re-keys this jet over a larger space containing all its blocks
    /// (matched by name and dimension).
    Jet promote(const SpacePtr& target) const;

    /// Same series over a space with renamed blocks.
    Jet rename_blocks(const std::map<std::string, std::string>& names) const;

    /// Drop all terms of degree > k (declared order is unchanged).
    Jet truncated(int k) const;
    /// Reinterpret at a lower declared order, dropping excess terms.
    Jet at_order(int k) const;

    Jet with_eff(int eff) const;

    friend bool operator==(const Jet& a, const Jet& b) {
        return same_space(a.space_, b.space_) && a.order_ == b.order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    std::string str() const;
    std::string term_str(const Monomial& m) const;

private:
    void require_compatible(const Jet& o) const;

    SpacePtr space_;
    int order_;
    int eff_;
    Coeffs c_;
};

/// min of the two effective orders (helper for derived quantities).
inline int min_eff(const Jet& a, const Jet& b) {
    return a.eff_order() < b.eff_order() ? a.eff_order() : b.eff_order();
}

} // namespace crt
