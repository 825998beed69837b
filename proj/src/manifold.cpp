#include "crt/manifold.hpp"

#include <algorithm>
#include <functional>

#include "crt/qlinalg.hpp"
#include "crt/solver.hpp"

namespace crt {

SpacePtr manifold_space(int n, int d) {
    return VarSpace::make({{"z", n}, {"chi", n}, {"tau", d}});
}

SpacePtr map_space(int n, int d) {
    return VarSpace::make({{"z", n}, {"w", d}});
}

GenericManifold GenericManifold::make(int n, int d, int order, std::vector<Jet> q) {
    if (static_cast<int>(q.size()) != d)
        fail(ErrorKind::DimensionMismatch, "expected d defining series");
    SpacePtr space = manifold_space(n, d);
    for (const auto& f : q)
        if (!same_space(f.space(), space) || f.order() != order)
            fail(ErrorKind::SpaceMismatch, "defining series over the wrong space");
    GenericManifold m;
    m.n = n;
    m.d = d;
    m.order = order;
    m.space = std::move(space);
    m.q = std::move(q);
    return m;
}

std::vector<Jet> graph_args(const GenericManifold& m) {
    std::vector<Jet> args;
    args.reserve(static_cast<size_t>(m.n + m.d));
    for (int j = 0; j < m.n; ++j) args.push_back(Jet::variable(m.space, m.order, "z", j + 1));
    for (const auto& ql : m.q) args.push_back(ql);
    return args;
}

std::vector<Jet> bar_q(const GenericManifold& m, const SpacePtr& target) {
    std::map<std::string, std::string> swap{{"z", "chi"}, {"chi", "z"}, {"tau", "w"}};
    std::vector<Jet> out;
    out.reserve(m.q.size());
    for (const auto& ql : m.q) out.push_back(ql.bar().rename_blocks(swap).promote(target));
    return out;
}

ValidationReport validate(const GenericManifold& m) {
    ValidationReport rep;
    rep.order = m.order;
    const int D = m.order;
    const SpacePtr& S = m.space;

    // Normality: Q(z,0,tau) == tau and Q(0,chi,tau) == tau.
    std::vector<Jet> z_zero_args, chi_zero_args;
    for (int j = 0; j < m.n; ++j) {
        z_zero_args.push_back(Jet::variable(S, D, "z", j + 1));
        chi_zero_args.push_back(Jet(S, D));
    }
    for (int j = 0; j < m.n; ++j) {
        z_zero_args.push_back(Jet(S, D));
        chi_zero_args.push_back(Jet::variable(S, D, "chi", j + 1));
    }
    for (int l = 0; l < m.d; ++l) {
        z_zero_args.push_back(Jet::variable(S, D, "tau", l + 1));
        chi_zero_args.push_back(Jet::variable(S, D, "tau", l + 1));
    }
    rep.normality = IdentityCheck{true, D, std::nullopt};
    for (int l = 0; l < m.d; ++l) {
        Jet tau = Jet::variable(S, D, "tau", l + 1);
        IdentityCheck c1 = check_residual(m.q[static_cast<size_t>(l)].compose(z_zero_args) - tau, D);
        IdentityCheck c2 = check_residual(m.q[static_cast<size_t>(l)].compose(chi_zero_args) - tau, D);
        rep.normality = merge_checks(rep.normality, merge_checks(c1, c2));
    }

    // Reality: Q(z, chi, barQ(chi, z, w)) == w over (z, chi, w).
    SpacePtr R = VarSpace::make({{"z", m.n}, {"chi", m.n}, {"w", m.d}});
    std::vector<Jet> bq = bar_q(m, R);
    std::vector<Jet> args;
    for (int j = 0; j < m.n; ++j) args.push_back(Jet::variable(R, D, "z", j + 1));
    for (int j = 0; j < m.n; ++j) args.push_back(Jet::variable(R, D, "chi", j + 1));
    for (int l = 0; l < m.d; ++l) args.push_back(bq[static_cast<size_t>(l)]);
    rep.reality = IdentityCheck{true, D, std::nullopt};
    for (int l = 0; l < m.d; ++l) {
        Jet res = m.q[static_cast<size_t>(l)].compose(args) - Jet::variable(R, D, "w", l + 1);
        rep.reality = merge_checks(rep.reality, check_residual(res, D));
    }
    return rep;
}

namespace {

// alpha candidates for the slice-straightening unit; the first one with an
// invertible linear combination is used.
const std::vector<Gaussian> kAlphaCandidates = {
    Gaussian(1),
    Gaussian::i(),
    Gaussian(Rational(1), Rational(1)),
    Gaussian(Rational(1), Rational(2)),
    Gaussian(Rational(2), Rational(1)),
    Gaussian(Rational(1), Rational(3)),
    Gaussian(Rational(3), Rational(1)),
    Gaussian(Rational(2), Rational(3)),
};

} // namespace

Normalization from_complex_defining(const std::vector<Jet>& q_tilde) {
    if (q_tilde.empty()) fail(ErrorKind::DimensionMismatch, "empty defining tuple");
    const SpacePtr S = q_tilde[0].space();
    if (!S->has_block("z") || !S->has_block("chi") || !S->has_block("tau"))
        fail(ErrorKind::SpaceMismatch, "defining tuple must live over (z, chi, tau)");
    const int n = S->block_dim("z");
    const int d = S->block_dim("tau");
    const int D = q_tilde[0].order();
    if (static_cast<int>(q_tilde.size()) != d)
        fail(ErrorKind::DimensionMismatch, "defining tuple length != codimension");

    for (const auto& f : q_tilde)
        if (!f.constant_term().is_zero())
            fail(ErrorKind::NormalizationFailure, "defining tuple does not vanish at 0");

    // dQ~/dtau(0) must be invertible for w to be a valid normal block.
    QMatrix c0(static_cast<size_t>(d), std::vector<Gaussian>(static_cast<size_t>(d)));
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            c0[static_cast<size_t>(l)][static_cast<size_t>(k)] =
                q_tilde[static_cast<size_t>(l)].coefficient(
                    Monomial::unit(S->dim(), S->index("tau", k + 1)));
    if (!qinverse(c0)) fail(ErrorKind::DegenerateCodirection, "dQ/dtau(0) is singular");

    // Reality is a precondition, not something normalization can repair.
    {
        GenericManifold probe;
        probe.n = n;
        probe.d = d;
        probe.order = D;
        probe.space = S;
        probe.q = q_tilde;
        ValidationReport v = validate(probe);
        if (!v.reality.ok)
            fail(ErrorKind::RealityViolation,
                 "reality identity fails at " + v.reality.offender->monomial + " = " +
                     v.reality.offender->value);
    }

    // Step 1: straighten the chi = 0 slice. With Theta(z,tau) = Q~(z,0,tau)
    // and lambda its tau-inverse, the change w' = lambda(z, w) produces a
    // defining tuple whose chi = 0 slice is z-independent.
    SpacePtr Szt = VarSpace::make({{"z", n}, {"tau", d}});
    std::vector<Jet> theta;
    {
        std::vector<Jet> args;
        for (int j = 0; j < n; ++j) args.push_back(Jet::variable(Szt, D, "z", j + 1));
        for (int j = 0; j < n; ++j) args.push_back(Jet(Szt, D));
        for (int l = 0; l < d; ++l) args.push_back(Jet::variable(Szt, D, "tau", l + 1));
        for (const auto& f : q_tilde) theta.push_back(f.compose(args));
    }

    SpacePtr Szw = map_space(n, d);
    std::vector<Jet> lambda;
    {
        SpacePtr full = VarSpace::make({{"z", n}, {"w", d}, {"tau", d}});
        std::vector<Jet> phi;
        for (int l = 0; l < d; ++l)
            phi.push_back(theta[static_cast<size_t>(l)].promote(full) - Jet::variable(full, D, "w", l + 1));
        lambda = implicit_solve(phi, {"tau"});
        for (auto& f : lambda) f = f.promote(Szw);
    }

    std::vector<Jet> q1;
    {
        std::vector<Jet> theta_bar;
        std::map<std::string, std::string> swap{{"z", "chi"}};
        for (const auto& f : theta) theta_bar.push_back(f.bar().rename_blocks(swap).promote(S));
        std::vector<Jet> inner_args;
        for (int j = 0; j < n; ++j) inner_args.push_back(Jet::variable(S, D, "z", j + 1));
        for (int j = 0; j < n; ++j) inner_args.push_back(Jet::variable(S, D, "chi", j + 1));
        for (int l = 0; l < d; ++l) inner_args.push_back(theta_bar[static_cast<size_t>(l)]);
        std::vector<Jet> inner = compose_all(q_tilde, inner_args);
        std::vector<Jet> lam_args;
        for (int j = 0; j < n; ++j) lam_args.push_back(Jet::variable(S, D, "z", j + 1));
        for (int l = 0; l < d; ++l) lam_args.push_back(inner[static_cast<size_t>(l)]);
        q1 = compose_all(lambda, lam_args);
    }

    // Step 2: the leftover slice defect s(tau) satisfies s(bar s) = id, so
    // kappa = (alpha id + conj(alpha) bar s)/2 solves conj(kappa) = kappa o s
    // exactly; conjugating by kappa makes the slice the identity.
    SpacePtr St = VarSpace::make({{"tau", d}});
    std::vector<Jet> sigma0; // Q~(0, 0, tau); bar of the slice defect
    {
        std::vector<Jet> args;
        for (int j = 0; j < 2 * n; ++j) args.push_back(Jet(St, D));
        for (int l = 0; l < d; ++l) args.push_back(Jet::variable(St, D, "tau", l + 1));
        sigma0 = compose_all(q_tilde, args);
    }

    std::vector<Jet> kappa;
    {
        const Gaussian half(rat(1, 2));
        bool found = false;
        for (const auto& alpha : kAlphaCandidates) {
            QMatrix k1(static_cast<size_t>(d), std::vector<Gaussian>(static_cast<size_t>(d)));
            for (int l = 0; l < d; ++l)
                for (int k = 0; k < d; ++k) {
                    Gaussian s1 = sigma0[static_cast<size_t>(l)].coefficient(Monomial::unit(d, k));
                    k1[static_cast<size_t>(l)][static_cast<size_t>(k)] =
                        half * (alpha * (l == k ? Gaussian::one() : Gaussian::zero()) +
                                alpha.conj() * s1);
                }
            if (qdet(k1).is_zero()) continue;
            kappa.clear();
            for (int l = 0; l < d; ++l) {
                Jet t = Jet::variable(St, D, "tau", l + 1);
                kappa.push_back(half * (alpha * t + alpha.conj() * sigma0[static_cast<size_t>(l)]));
            }
            found = true;
            break;
        }
        if (!found) fail(ErrorKind::NormalizationFailure, "no invertible slice unit found");
    }

    std::vector<Jet> kappa_bar;
    for (const auto& f : kappa) kappa_bar.push_back(f.bar());
    std::vector<Jet> kappa_bar_inv = invert_map(kappa_bar);

    std::vector<Jet> q2;
    {
        std::vector<Jet> args;
        for (int j = 0; j < n; ++j) args.push_back(Jet::variable(S, D, "z", j + 1));
        for (int j = 0; j < n; ++j) args.push_back(Jet::variable(S, D, "chi", j + 1));
        for (int l = 0; l < d; ++l) args.push_back(kappa_bar_inv[static_cast<size_t>(l)].promote(S));
        std::vector<Jet> inner2 = compose_all(q1, args);
        q2 = compose_all(kappa, inner2);
    }

    Normalization out{GenericManifold::make(n, d, D, std::move(q2)), {}};

    ValidationReport check = validate(out.manifold);
    if (!check.ok())
        fail(ErrorKind::NormalizationFailure,
             "normalized tuple fails validation at " +
                 (check.normality.offender ? check.normality.offender->monomial
                                           : check.reality.offender->monomial));

    // Total coordinate change (z, w) -> (z, kappa(lambda(z, w))).
    out.change.reserve(static_cast<size_t>(n + d));
    for (int j = 0; j < n; ++j) out.change.push_back(Jet::variable(Szw, D, "z", j + 1));
    std::vector<Jet> klam = compose_all(kappa, lambda);
    for (auto& f : klam) out.change.push_back(std::move(f));
    return out;
}

const SegreEntry& SegreTower::at(int k) {
    if (k < 1) fail(ErrorKind::DimensionMismatch, "Segre level must be >= 1");
    while (static_cast<int>(entries_.size()) < k) {
        int level = static_cast<int>(entries_.size()) + 1;
        const int n = m_.n, d = m_.d, D = m_.order;
        VarSpace::Blocks blocks;
        for (int j = 1; j <= level; ++j) blocks.emplace_back("t" + std::to_string(j), n);
        SpacePtr T = VarSpace::make(std::move(blocks));

        SegreEntry e;
        e.k = level;
        e.space = T;
        for (int j = 0; j < n; ++j)
            e.v.push_back(Jet::variable(T, D, "t" + std::to_string(level), j + 1));
        if (level == 1) {
            for (int l = 0; l < d; ++l) e.v.push_back(Jet(T, D));
        } else {
            const SegreEntry& prev = entries_[static_cast<size_t>(level - 2)];
            std::vector<Jet> args;
            for (int j = 0; j < n; ++j)
                args.push_back(Jet::variable(T, D, "t" + std::to_string(level), j + 1));
            for (int j = 0; j < n; ++j)
                args.push_back(Jet::variable(T, D, "t" + std::to_string(level - 1), j + 1));
            for (int l = 0; l < d; ++l)
                args.push_back(prev.v[static_cast<size_t>(n + l)].bar().promote(T));
            for (int l = 0; l < d; ++l)
                e.v.push_back(m_.q[static_cast<size_t>(l)].compose(args));
        }
        entries_.push_back(std::move(e));
    }
    return entries_[static_cast<size_t>(k - 1)];
}

SegreEntry segre(const GenericManifold& m, int k) {
    SegreTower tower(m);
    return tower.at(k);
}

JetMatrix segre_jacobian(const SegreEntry& e, int n) {
    const int N = static_cast<int>(e.v.size());
    const int vars = e.space->dim();
    JetMatrix jac(N, vars, e.space, e.v[0].order());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < vars; ++j) jac.at(i, j) = e.v[static_cast<size_t>(i)].derive(j);
    return jac;
}

FiniteTypeReport finite_type(const GenericManifold& m, int max_k) {
    FiniteTypeReport rep;
    rep.order = m.order;
    rep.target_rank = m.N();
    rep.max_k = max_k > 0 ? max_k : m.d + 1;
    SegreTower tower(m);
    for (int k = 1; k <= rep.max_k; ++k) {
        const SegreEntry& e = tower.at(k);
        RankCertificate cert = generic_rank(segre_jacobian(e, m.n));
        rep.ranks.push_back(cert.rank);
        if (!rep.witness_k && cert.rank == rep.target_rank) {
            rep.finite_type = true;
            rep.witness_k = k;
        }
        if (k > 1 && rep.ranks[static_cast<size_t>(k - 1)] < rep.ranks[static_cast<size_t>(k - 2)])
            rep.ranks_monotone = false;
    }
    return rep;
}

NondegReport holo_nondeg(const GenericManifold& m, int field_degree) {
    if (field_degree > m.order)
        fail(ErrorKind::DimensionMismatch, "field degree exceeds truncation order");
    NondegReport rep;
    rep.field_degree = field_degree;
    rep.order = m.order;
    rep.verified_order = m.order - 1; // dQ/dz consumes one degree
    const int n = m.n, d = m.d, D = m.order;
    SpacePtr Szw = map_space(n, d);
    const SpacePtr& S = m.space;

    // Enumerate candidate coefficient monomials of degree <= field_degree.
    std::vector<Monomial> basis;
    {
        std::function<void(Monomial, int, int)> rec = [&](Monomial cur, int var, int left) {
            if (var == Szw->dim()) {
                basis.push_back(cur);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                Monomial next = cur;
                for (int t = 0; t < e; ++t) next = next.plus_var(var);
                rec(next, var + 1, left - e);
            }
        };
        rec(Monomial(Szw->dim()), 0, field_degree);
        std::sort(basis.begin(), basis.end());
    }

    // Pullbacks m(z, Q) of each basis monomial, built incrementally.
    std::vector<Jet> args = graph_args(m);
    std::map<Monomial, Jet> pull;
    pull.emplace(Monomial(Szw->dim()), Jet::constant(S, D, Gaussian::one()));
    std::function<const Jet&(const Monomial&)> pull_of = [&](const Monomial& mo) -> const Jet& {
        auto it = pull.find(mo);
        if (it != pull.end()) return it->second;
        int v = mo.last_var();
        Jet val = pull_of(mo.minus_var(v)) * args[static_cast<size_t>(v)];
        return pull.emplace(mo, std::move(val)).first->second;
    };

    std::vector<std::vector<Jet>> qz(static_cast<size_t>(d));
    for (int l = 0; l < d; ++l)
        for (int j = 0; j < n; ++j)
            qz[static_cast<size_t>(l)].push_back(m.q[static_cast<size_t>(l)].derive("z", j + 1));

    // Unknown layout: phi_1..phi_n then psi_1..psi_d, each over `basis`.
    const int B = static_cast<int>(basis.size());
    const int U = (n + d) * B;

    // Rows: coefficients (through degree D-1) of the d tangency residuals.
    std::map<std::pair<int, Monomial>, std::vector<Gaussian>> rows;
    auto row_of = [&](int l, const Monomial& mo) -> std::vector<Gaussian>& {
        auto [it, inserted] =
            rows.try_emplace(std::make_pair(l, mo), std::vector<Gaussian>(static_cast<size_t>(U), Gaussian::zero()));
        return it->second;
    };

    for (int b = 0; b < B; ++b) {
        const Jet& p = pull_of(basis[static_cast<size_t>(b)]);
        for (int j = 0; j < n; ++j) {
            int col = j * B + b;
            for (int l = 0; l < d; ++l) {
                Jet contrib = p * qz[static_cast<size_t>(l)][static_cast<size_t>(j)];
                for (const auto& [mo, c] : contrib.coeffs()) {
                    if (mo.degree() > rep.verified_order) break;
                    row_of(l, mo)[static_cast<size_t>(col)] -= c;
                }
            }
        }
        for (int l = 0; l < d; ++l) {
            int col = (n + l) * B + b;
            for (const auto& [mo, c] : p.coeffs()) {
                if (mo.degree() > rep.verified_order) break;
                row_of(l, mo)[static_cast<size_t>(col)] += c;
            }
        }
    }

    QMatrix sys;
    sys.reserve(rows.size());
    for (auto& [key, row] : rows) sys.push_back(std::move(row));
    auto null_basis = qnullspace(std::move(sys));
    if (null_basis.empty()) {
        rep.nondegenerate = true;
        return rep;
    }

    rep.nondegenerate = false;
    VectorField field;
    field.domain = Szw;
    const auto& vec = null_basis.front();
    for (int j = 0; j < n + d; ++j) {
        Jet comp(Szw, D);
        for (int b = 0; b < B; ++b)
            comp.add_term(basis[static_cast<size_t>(b)], vec[static_cast<size_t>(j * B + b)]);
        if (j < n) field.phi.push_back(std::move(comp));
        else field.psi.push_back(std::move(comp));
    }
    rep.witness = std::move(field);
    return rep;
}

IncidenceReport incidence_check(const GenericManifold& m, int k) {
    if (k < 1) fail(ErrorKind::DimensionMismatch, "incidence level must be >= 1");
    IncidenceReport rep;
    rep.k = k;
    rep.order = m.order;
    const int n = m.n, d = m.d, D = m.order;
    SegreTower tower(m);

    // (v^{k+1}, bar v^k): u^{k+1} - Q(t^{k+1}, t^k, bar u^k) over T_{k+1}.
    {
        const SegreEntry& ek = tower.at(k);
        const SegreEntry& ek1 = tower.at(k + 1);
        std::vector<Jet> args;
        for (int j = 0; j < n; ++j)
            args.push_back(Jet::variable(ek1.space, D, "t" + std::to_string(k + 1), j + 1));
        for (int j = 0; j < n; ++j)
            args.push_back(Jet::variable(ek1.space, D, "t" + std::to_string(k), j + 1));
        for (int l = 0; l < d; ++l)
            args.push_back(ek.v[static_cast<size_t>(n + l)].bar().promote(ek1.space));
        rep.forward = IdentityCheck{true, D, std::nullopt};
        for (int l = 0; l < d; ++l) {
            Jet res = ek1.v[static_cast<size_t>(n + l)] - m.q[static_cast<size_t>(l)].compose(args);
            rep.forward = merge_checks(rep.forward, check_residual(res, D));
        }
    }

    // (v^{k-1}, bar v^k): u^{k-1} - Q(t^{k-1}, t^k, bar u^k) over T_k.
    if (k >= 2) {
        const SegreEntry& ek = tower.at(k);
        const SegreEntry& ekm = tower.at(k - 1);
        std::vector<Jet> args;
        for (int j = 0; j < n; ++j)
            args.push_back(Jet::variable(ek.space, D, "t" + std::to_string(k - 1), j + 1));
        for (int j = 0; j < n; ++j)
            args.push_back(Jet::variable(ek.space, D, "t" + std::to_string(k), j + 1));
        for (int l = 0; l < d; ++l)
            args.push_back(ek.v[static_cast<size_t>(n + l)].bar());
        rep.backward = IdentityCheck{true, D, std::nullopt};
        for (int l = 0; l < d; ++l) {
            Jet res = ekm.v[static_cast<size_t>(n + l)].promote(ek.space) -
                      m.q[static_cast<size_t>(l)].compose(args);
            rep.backward = merge_checks(rep.backward, check_residual(res, D));
        }
    } else {
        rep.backward = IdentityCheck{true, m.order, std::nullopt};
    }
    return rep;
}

} // namespace crt
