#include "crt/jet.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace crt {

Jet::Jet(SpacePtr space, int order) : space_(std::move(space)), order_(order), eff_(order) {
    if (!space_) fail(ErrorKind::SpaceMismatch, "jet requires a variable space");
    if (order_ < 0) fail(ErrorKind::DimensionMismatch, "truncation order must be non-negative");
}

Jet Jet::constant(SpacePtr space, int order, Gaussian c) {
    Jet f(std::move(space), order);
    if (!c.is_zero()) f.c_.emplace(Monomial(f.space_->dim()), std::move(c));
    return f;
}

Jet Jet::variable(SpacePtr space, int order, int flat) {
    Jet f(std::move(space), order);
    if (flat < 0 || flat >= f.space_->dim()) fail(ErrorKind::UnknownVariable, "flat index out of range");
    if (order >= 1) f.c_.emplace(Monomial::unit(f.space_->dim(), flat), Gaussian::one());
    return f;
}

Jet Jet::variable(SpacePtr space, int order, const std::string& block, int pos1) {
    int flat = space->index(block, pos1);
    return variable(std::move(space), order, flat);
}

bool Jet::is_zero_to(int k) const {
    return c_.empty() || c_.begin()->first.degree() > k;
}

Gaussian Jet::constant_term() const {
    if (c_.empty()) return Gaussian::zero();
    const auto& front = *c_.begin();
    return front.first.is_constant() ? front.second : Gaussian::zero();
}

Gaussian Jet::coefficient(const Monomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? Gaussian::zero() : it->second;
}

std::optional<std::pair<Monomial, Gaussian>> Jet::first_term() const {
    if (c_.empty()) return std::nullopt;
    return *c_.begin();
}

void Jet::add_term(const Monomial& m, const Gaussian& c) {
    if (m.nvars() != space_->dim()) fail(ErrorKind::SpaceMismatch, "monomial arity mismatch");
    if (m.degree() > order_ || c.is_zero()) return;
    auto [it, inserted] = c_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void Jet::require_compatible(const Jet& o) const {
    if (!same_space(space_, o.space_) || order_ != o.order_)
        fail(ErrorKind::SpaceMismatch, "jets over different spaces or orders");
}

Jet Jet::operator-() const {
    Jet r(space_, order_);
    r.eff_ = eff_;
    for (const auto& [m, c] : c_) r.c_.emplace(m, -c);
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    require_compatible(o);
    eff_ = std::min(eff_, o.eff_);
    for (const auto& [m, c] : o.c_) {
        auto [it, inserted] = c_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    require_compatible(o);
    eff_ = std::min(eff_, o.eff_);
    for (const auto& [m, c] : o.c_) {
        auto [it, inserted] = c_.emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Jet Jet::mul_trunc(const Jet& o, int k) const {
    require_compatible(o);
    Jet r(space_, order_);
    r.eff_ = std::min(eff_, o.eff_);
    if (k > order_) k = order_;
    // Terms iterate in graded order, so the inner loop can stop as soon
    // as the degree budget is exhausted.
    for (const auto& [m1, c1] : c_) {
        if (m1.degree() > k) break;
        const int budget = k - m1.degree();
        for (const auto& [m2, c2] : o.c_) {
            if (m2.degree() > budget) break;
            Gaussian prod = c1 * c2;
            if (prod.is_zero()) continue;
            Monomial key = m1.plus(m2);
            auto it = r.c_.find(key);
            if (it == r.c_.end()) {
                r.c_.emplace(std::move(key), std::move(prod));
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

Jet operator*(const Jet& a, const Jet& b) { return a.mul_trunc(b, a.order()); }

Jet Jet::scaled(const Gaussian& c) const {
    Jet r(space_, order_);
    r.eff_ = eff_;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : c_) {
        Gaussian prod = c * v;
        if (!prod.is_zero()) r.c_.emplace(m, std::move(prod));
    }
    return r;
}

Jet Jet::derive(int flat) const {
    if (flat < 0 || flat >= space_->dim()) fail(ErrorKind::UnknownVariable, "flat index out of range");
    Jet r(space_, order_);
    r.eff_ = std::max(0, eff_ - 1);
    for (const auto& [m, c] : c_) {
        int e = m.exp(flat);
        if (e == 0) continue;
        r.c_.emplace(m.minus_var(flat), c * Gaussian(Rational(e)));
    }
    return r;
}

Jet Jet::derive(const std::string& block, int pos1) const { return derive(space_->index(block, pos1)); }

Jet Jet::bar() const {
    Jet r(space_, order_);
    r.eff_ = eff_;
    for (const auto& [m, c] : c_) r.c_.emplace(m, c.conj());
    return r;
}

Gaussian Jet::evaluate(std::span<const Gaussian> point) const {
    if (static_cast<int>(point.size()) != space_->dim())
        fail(ErrorKind::DimensionMismatch, "point dimension mismatch");
    // Powers cached per variable up to the largest exponent used.
    std::vector<std::vector<Gaussian>> pow(point.size());
    for (size_t v = 0; v < point.size(); ++v) pow[v].push_back(Gaussian::one());
    Gaussian sum = Gaussian::zero();
    for (const auto& [m, c] : c_) {
        Gaussian term = c;
        for (int v = 0; v < m.nvars(); ++v) {
            int e = m.exp(v);
            if (e == 0) continue;
            auto& pv = pow[static_cast<size_t>(v)];
            while (static_cast<int>(pv.size()) <= e) pv.push_back(pv.back() * point[static_cast<size_t>(v)]);
            term *= pv[static_cast<size_t>(e)];
        }
        sum += term;
    }
    return sum;
}

Jet Jet::compose(std::span<const Jet> args) const {
    if (static_cast<int>(args.size()) != space_->dim())
        fail(ErrorKind::SpaceMismatch, "compose needs one argument per variable");
    for (const auto& a : args) {
        if (!same_space(a.space(), args[0].space()) || a.order() != args[0].order())
            fail(ErrorKind::SpaceMismatch, "compose arguments over different spaces or orders");
        if (!a.constant_term().is_zero())
            fail(ErrorKind::NonzeroConstantTerm, "compose argument has a nonzero constant term");
    }
    const SpacePtr target = args.empty() ? space_ : args[0].space();
    const int out_order = args.empty() ? order_ : args[0].order();
    int eff = eff_;
    for (const auto& a : args) eff = std::min(eff, a.eff_order());

    // Monomial products share prefixes; memoize them along last-variable
    // chains so each distinct monomial of f costs one jet multiplication.
    std::map<Monomial, Jet> memo;
    memo.emplace(Monomial(space_->dim()), Jet::constant(target, out_order, Gaussian::one()));
    std::function<const Jet&(const Monomial&)> product = [&](const Monomial& m) -> const Jet& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        int v = m.last_var();
        const Jet& prev = product(m.minus_var(v));
        Jet val = prev * args[static_cast<size_t>(v)];
        return memo.emplace(m, std::move(val)).first->second;
    };

    Jet r(target, out_order);
    for (const auto& [m, c] : c_) {
        if (m.degree() > out_order) break; // arguments vanish at 0
        r += product(m).scaled(c);
    }
    r.eff_ = std::min(eff, out_order);
    return r;
}

Jet Jet::invert_unit() const {
    Gaussian c0 = constant_term();
    if (c0.is_zero()) fail(ErrorKind::NotAUnit, "series has zero constant term");
    Jet g = Jet::constant(space_, order_, c0.inverse());
    Jet two = Jet::constant(space_, order_, Gaussian(Rational(2)));
    // Newton iteration g <- g(2 - f g); precision doubles each step.
    int k = 1;
    while (true) {
        Jet fg = mul_trunc(g, std::min(k, order_));
        g = g.mul_trunc(two - fg, std::min(k, order_));
        if (k >= order_) break;
        k *= 2;
    }
    g.eff_ = std::min(eff_, order_);
    return g;
}

Jet Jet::promote(const SpacePtr& target) const {
    std::vector<int> remap(static_cast<size_t>(space_->dim()));
    int off = 0;
    for (const auto& [name, dim] : space_->blocks()) {
        if (!target->has_block(name) || target->block_dim(name) != dim)
            fail(ErrorKind::SpaceMismatch, "promote: target lacks block '" + name + "'");
        int toff = target->block_offset(name);
        for (int j = 0; j < dim; ++j) remap[static_cast<size_t>(off + j)] = toff + j;
        off += dim;
    }
    Jet r(target, order_);
    r.eff_ = eff_;
    for (const auto& [m, c] : c_) {
        std::vector<uint8_t> e(static_cast<size_t>(target->dim()), 0);
        for (int v = 0; v < m.nvars(); ++v) e[static_cast<size_t>(remap[static_cast<size_t>(v)])] = static_cast<uint8_t>(m.exp(v));
        r.c_.emplace(Monomial(std::move(e)), c);
    }
    return r;
}

Jet Jet::rename_blocks(const std::map<std::string, std::string>& names) const {
    Jet r(space_->renamed(names), order_);
    r.eff_ = eff_;
    r.c_ = c_;
    return r;
}

Jet Jet::truncated(int k) const {
    Jet r(space_, order_);
    r.eff_ = eff_;
    for (const auto& [m, c] : c_) {
        if (m.degree() > k) break;
        r.c_.emplace(m, c);
    }
    return r;
}

Jet Jet::at_order(int k) const {
    Jet r(space_, k);
    r.eff_ = std::min(eff_, k);
    for (const auto& [m, c] : c_) {
        if (m.degree() > k) break;
        r.c_.emplace(m, c);
    }
    return r;
}

Jet Jet::with_eff(int eff) const {
    Jet r = *this;
    r.eff_ = std::min(eff, order_);
    return r;
}

std::string Jet::term_str(const Monomial& m) const {
    if (m.is_constant()) return "1";
    std::string out;
    for (int v = 0; v < m.nvars(); ++v) {
        int e = m.exp(v);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += space_->var_name(v);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string Jet::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : c_) {
        std::string cs = c.str();
        bool negated = false;
        if (!first) {
            // Pull a leading minus out of purely negative coefficients.
            if (cs.size() > 1 && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
                cs.find('-', 1) == std::string::npos) {
                negated = true;
                cs = cs.substr(1);
            }
            os << (negated ? " - " : " + ");
        }
        bool composite = cs.find('+', 1) != std::string::npos || cs.find('-', 1) != std::string::npos;
        if (m.is_constant()) {
            os << cs;
        } else if (cs == "1") {
            os << term_str(m);
        } else if (cs == "-1") {
            os << "-" << term_str(m);
        } else {
            if (composite) os << "(" << cs << ")";
            else os << cs;
            os << "*" << term_str(m);
        }
        first = false;
    }
    return os.str();
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string Gaussian::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out += rational_str(re);
    if (im != 0) {
        if (!out.empty() && im > 0) out += "+";
        if (im == -1) out += "-";
        else if (im != 1) out += rational_str(im) + "*";
        out += "i";
    }
    return out;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q(text);
            q.canonicalize();
            return q;
        }
        Rational q(text.substr(0, slash) + "/" + text.substr(slash + 1));
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::SyntaxError, "malformed rational '" + text + "'");
    }
}

} // namespace crt
