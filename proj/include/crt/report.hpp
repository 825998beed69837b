#pragma once

#include <optional>
#include <string>

#include "crt/jet.hpp"

namespace crt {

/// Lowest-degree nonzero coefficient of a residual jet, for diagnostics.
struct CoeffWitness {
    std::string monomial;
    std::string value;
    int degree = 0;
};

inline std::optional<CoeffWitness> first_offender(const Jet& residual, int through_degree) {
    auto t = residual.first_term();
    if (!t || t->first.degree() > through_degree) return std::nullopt;
    return CoeffWitness{residual.term_str(t->first), t->second.str(), t->first.degree()};
}

/// Verdict of one identity check: vanishing modulo degree > verified_order.
struct IdentityCheck {
    bool ok = true;
    int verified_order = 0;
    std::optional<CoeffWitness> offender;
};

inline IdentityCheck check_residual(const Jet& residual, int through_degree) {
    IdentityCheck c;
    c.verified_order = through_degree;
    c.offender = first_offender(residual, through_degree);
    c.ok = !c.offender.has_value();
    return c;
}

inline IdentityCheck merge_checks(const IdentityCheck& a, const IdentityCheck& b) {
    IdentityCheck c;
    c.verified_order = std::min(a.verified_order, b.verified_order);
    c.ok = a.ok && b.ok;
    c.offender = a.offender ? a.offender : b.offender;
    return c;
}

} // namespace crt
