#include "crt/mapping.hpp"

#include <algorithm>

namespace crt {

FormalMap FormalMap::make(int n_src, int d_src, int n_tgt, int d_tgt, std::vector<Jet> f,
                          std::vector<Jet> g) {
    if (n_src + d_src != n_tgt + d_tgt)
        fail(ErrorKind::DimensionMismatch, "source and target dimensions differ");
    if (static_cast<int>(f.size()) != n_tgt || static_cast<int>(g.size()) != d_tgt)
        fail(ErrorKind::DimensionMismatch, "component counts do not match target dimensions");
    FormalMap h;
    h.n_src = n_src;
    h.d_src = d_src;
    h.n_tgt = n_tgt;
    h.d_tgt = d_tgt;
    h.domain = map_space(n_src, d_src);
    std::vector<Jet>* parts[2] = {&f, &g};
    for (auto* part : parts)
        for (const auto& c : *part) {
            if (!same_space(c.space(), h.domain))
                fail(ErrorKind::SpaceMismatch, "map components must live over (z, w)");
            if (!c.constant_term().is_zero())
                fail(ErrorKind::NonzeroConstantTerm, "formal maps must fix the base point");
        }
    h.order = f.empty() ? g[0].order() : f[0].order();
    h.f = std::move(f);
    h.g = std::move(g);
    return h;
}

FormalMap FormalMap::identity(int n, int d, int order) {
    SpacePtr S = map_space(n, d);
    std::vector<Jet> f, g;
    for (int j = 0; j < n; ++j) f.push_back(Jet::variable(S, order, "z", j + 1));
    for (int l = 0; l < d; ++l) g.push_back(Jet::variable(S, order, "w", l + 1));
    return make(n, d, n, d, std::move(f), std::move(g));
}

std::vector<Jet> FormalMap::components() const {
    std::vector<Jet> out = f;
    out.insert(out.end(), g.begin(), g.end());
    return out;
}

JetMatrix FormalMap::jacobian() const {
    JetMatrix jac(N(), N(), domain, order);
    std::vector<Jet> comp = components();
    for (int i = 0; i < N(); ++i)
        for (int v = 0; v < N(); ++v) jac.at(i, v) = comp[static_cast<size_t>(i)].derive(v);
    return jac;
}

FormalMap compose_maps(const FormalMap& h1, const FormalMap& h2) {
    if (h2.n_src != h1.n_tgt || h2.d_src != h1.d_tgt)
        fail(ErrorKind::DimensionMismatch, "map composition dimensions do not chain");
    std::vector<Jet> args = h1.components();
    std::vector<Jet> f, g;
    for (const auto& c : h2.f) f.push_back(c.compose(args));
    for (const auto& c : h2.g) g.push_back(c.compose(args));
    return FormalMap::make(h1.n_src, h1.d_src, h2.n_tgt, h2.d_tgt, std::move(f), std::move(g));
}

namespace {

void require_dims(const GenericManifold& m, const GenericManifold& mp, const FormalMap& h) {
    if (h.n_src != m.n || h.d_src != m.d)
        fail(ErrorKind::DimensionMismatch, "map source dimensions do not match M");
    if (h.n_tgt != mp.n || h.d_tgt != mp.d)
        fail(ErrorKind::DimensionMismatch, "map target dimensions do not match M'");
    if (m.order != mp.order || m.order != h.order)
        fail(ErrorKind::SpaceMismatch, "manifolds and map must share one truncation order");
}

struct Pullbacks {
    std::vector<Jet> f_psi, g_psi, bar_f, bar_g;
    std::vector<Jet> phi_args; // (F o Psi, barF, barG): arguments for Q' pullbacks
};

Pullbacks pull_to_m(const GenericManifold& m, const FormalMap& h) {
    Pullbacks p;
    std::vector<Jet> psi = graph_args(m);
    p.f_psi = compose_all(h.f, psi);
    p.g_psi = compose_all(h.g, psi);
    std::map<std::string, std::string> swap{{"z", "chi"}, {"w", "tau"}};
    for (const auto& c : h.f) p.bar_f.push_back(c.bar().rename_blocks(swap).promote(m.space));
    for (const auto& c : h.g) p.bar_g.push_back(c.bar().rename_blocks(swap).promote(m.space));
    p.phi_args = p.f_psi;
    p.phi_args.insert(p.phi_args.end(), p.bar_f.begin(), p.bar_f.end());
    p.phi_args.insert(p.phi_args.end(), p.bar_g.begin(), p.bar_g.end());
    return p;
}

} // namespace

SendsReport check_sends(const GenericManifold& m, const GenericManifold& mp, const FormalMap& h) {
    require_dims(m, mp, h);
    SendsReport rep;
    rep.order = m.order;
    Pullbacks p = pull_to_m(m, h);
    rep.residual = IdentityCheck{true, m.order, std::nullopt};
    for (int l = 0; l < mp.d; ++l) {
        Jet res = p.g_psi[static_cast<size_t>(l)] -
                  mp.q[static_cast<size_t>(l)].compose(p.phi_args);
        rep.residual = merge_checks(rep.residual, check_residual(res, m.order));
    }
    rep.ok = rep.residual.ok;
    return rep;
}

MapOnM a_matrix(const GenericManifold& m, const GenericManifold& mp, const FormalMap& h) {
    SendsReport sends = check_sends(m, mp, h);
    if (!sends.ok)
        fail(ErrorKind::NotASelfMap, "H does not send M into M' (first defect at " +
                                         sends.residual.offender->monomial + ")");

    MapOnM out{{}, {}, {}, {}, JetMatrix(m.d, m.d, m.space, m.order), {}};
    Pullbacks p = pull_to_m(m, h);
    std::vector<Jet> psi = graph_args(m);

    // G_w(Psi) and F_w(Psi); Q'_{z'}(Phi).
    JetMatrix gw(mp.d, m.d, m.space, m.order);
    for (int l = 0; l < mp.d; ++l)
        for (int k = 0; k < m.d; ++k)
            gw.at(l, k) = h.g[static_cast<size_t>(l)].derive("w", k + 1).compose(psi);
    JetMatrix fw(mp.n, m.d, m.space, m.order);
    for (int j = 0; j < mp.n; ++j)
        for (int k = 0; k < m.d; ++k)
            fw.at(j, k) = h.f[static_cast<size_t>(j)].derive("w", k + 1).compose(psi);
    JetMatrix qpz(mp.d, mp.n, m.space, m.order);
    for (int l = 0; l < mp.d; ++l)
        for (int j = 0; j < mp.n; ++j)
            qpz.at(l, j) = mp.q[static_cast<size_t>(l)].derive("z", j + 1).compose(p.phi_args);

    out.a_psi = gw - qpz * fw;

    // z-derivative of the defining identity restricted to the graph:
    // G_z(Psi) - Q'_{z'}(Phi) F_z(Psi) = -a(Psi) Q_z.
    JetMatrix gz(mp.d, m.n, m.space, m.order);
    for (int l = 0; l < mp.d; ++l)
        for (int j = 0; j < m.n; ++j)
            gz.at(l, j) = h.g[static_cast<size_t>(l)].derive("z", j + 1).compose(psi);
    JetMatrix fz(mp.n, m.n, m.space, m.order);
    for (int j = 0; j < mp.n; ++j)
        for (int k = 0; k < m.n; ++k)
            fz.at(j, k) = h.f[static_cast<size_t>(j)].derive("z", k + 1).compose(psi);
    JetMatrix qz(m.d, m.n, m.space, m.order);
    for (int l = 0; l < m.d; ++l)
        for (int j = 0; j < m.n; ++j)
            qz.at(l, j) = m.q[static_cast<size_t>(l)].derive("z", j + 1);

    JetMatrix res = gz - qpz * fz + out.a_psi * qz;
    out.eq_z = IdentityCheck{true, res.min_eff(), std::nullopt};
    for (int i = 0; i < res.rows(); ++i)
        for (int j = 0; j < res.cols(); ++j)
            out.eq_z = merge_checks(out.eq_z, check_residual(res.at(i, j), res.min_eff()));

    out.f_psi = std::move(p.f_psi);
    out.g_psi = std::move(p.g_psi);
    out.bar_f = std::move(p.bar_f);
    out.bar_g = std::move(p.bar_g);
    return out;
}

TransversalReport cr_transversal(const GenericManifold& m, const GenericManifold& mp,
                                 const FormalMap& h) {
    MapOnM data = a_matrix(m, mp, h);
    TransversalReport rep;
    rep.order = m.order;
    rep.a0.assign(static_cast<size_t>(m.d), std::vector<Gaussian>(static_cast<size_t>(m.d)));
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j)
            rep.a0[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                data.a_psi.at(i, j).constant_term();
    rep.det_a0 = qdet(rep.a0);
    rep.transversal = !rep.det_a0.is_zero();
    return rep;
}

Lemma31Report verify_lemma31(const GenericManifold& m, const GenericManifold& mp,
                             const FormalMap& h) {
    MapOnM data = a_matrix(m, mp, h);
    Lemma31Report rep;
    rep.order = m.order;
    rep.eq_z = data.eq_z;

    std::vector<Jet> psi = graph_args(m);
    std::vector<Jet> phi_args = data.f_psi;
    phi_args.insert(phi_args.end(), data.bar_f.begin(), data.bar_f.end());
    phi_args.insert(phi_args.end(), data.bar_g.begin(), data.bar_g.end());

    const int n = m.n, d = m.d, N = m.N();

    auto [det_hz, b_adj] = det_adj(h.jacobian());
    JetMatrix b_psi = b_adj.compose(psi);
    Jet det_hz_psi = det_hz.compose(psi);

    // V = (-Q_z, I_d); C = last d columns of V B(Psi).
    JetMatrix v(d, N, m.space, m.order);
    for (int l = 0; l < d; ++l) {
        for (int j = 0; j < n; ++j)
            v.at(l, j) = -m.q[static_cast<size_t>(l)].derive("z", j + 1);
        v.at(l, n + l) = Jet::constant(m.space, m.order, Gaussian::one());
    }
    JetMatrix c = (v * b_psi).column_slice(n, d);

    {
        JetMatrix lhs = JetMatrix::identity(d, m.space, m.order).scaled(det_hz_psi);
        JetMatrix res = lhs - data.a_psi * c;
        int through = res.min_eff();
        rep.det_identity = IdentityCheck{true, through, std::nullopt};
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                rep.det_identity = merge_checks(rep.det_identity, check_residual(res.at(i, j), through));
    }

    // W = (Q_chi, Q_tau); D = last d columns of W barB(Psi);
    // E = D (Q'_{tau'}(Phi))^{-1}.
    std::map<std::string, std::string> swap{{"z", "chi"}, {"w", "tau"}};
    JetMatrix bar_b(N, N, m.space, m.order);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            bar_b.at(i, j) = b_adj.at(i, j).bar().rename_blocks(swap).promote(m.space);
    Jet det_bar_hxi = det_hz.bar().rename_blocks(swap).promote(m.space);

    JetMatrix w(d, N, m.space, m.order);
    for (int l = 0; l < d; ++l) {
        for (int j = 0; j < n; ++j)
            w.at(l, j) = m.q[static_cast<size_t>(l)].derive("chi", j + 1);
        for (int k = 0; k < d; ++k)
            w.at(l, n + k) = m.q[static_cast<size_t>(l)].derive("tau", k + 1);
    }
    JetMatrix dmat = (w * bar_b).column_slice(n, d);

    JetMatrix qptau(mp.d, mp.d, m.space, m.order);
    for (int l = 0; l < mp.d; ++l)
        for (int k = 0; k < mp.d; ++k)
            qptau.at(l, k) = mp.q[static_cast<size_t>(l)].derive("tau", k + 1).compose(phi_args);
    JetMatrix e = dmat * qptau.invert_unit();

    {
        JetMatrix lhs = JetMatrix::identity(d, m.space, m.order).scaled(det_bar_hxi);
        JetMatrix res = lhs - data.a_psi * e;
        int through = res.min_eff();
        rep.bar_det_identity = IdentityCheck{true, through, std::nullopt};
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                rep.bar_det_identity =
                    merge_checks(rep.bar_det_identity, check_residual(res.at(i, j), through));
    }
    return rep;
}

KernelFieldReport kernel_field(const FormalMap& h) {
    KernelFieldReport rep;
    rep.order = h.order;
    JetMatrix hz = h.jacobian();
    Jet det = jet_det(hz);
    const int eff = det.eff_order();
    rep.verified_order = eff;
    if (!det.is_zero_to(eff)) {
        rep.degenerate = false;
        return rep;
    }
    rep.degenerate = true;

    const int N = h.N();
    std::vector<Jet> u;

    // Prefer a nonzero adjugate column: H_Z adj(H_Z) = det I == 0.
    JetMatrix adj = det_adj(hz).adj;
    for (int jcol = 0; jcol < N && u.empty(); ++jcol) {
        bool nonzero = false;
        for (int i = 0; i < N; ++i) nonzero = nonzero || !adj.at(i, jcol).is_zero_to(eff);
        if (!nonzero) continue;
        for (int i = 0; i < N; ++i) u.push_back(adj.at(i, jcol));
    }
    if (u.empty()) {
        auto v = kernel_vector(hz);
        if (!v) fail(ErrorKind::NormalizationFailure, "degenerate map with no certifiable kernel");
        u = std::move(*v);
    }

    int through = eff;
    for (const auto& comp : u) through = std::min(through, comp.eff_order());
    rep.verified_order = through;

    rep.product = IdentityCheck{true, through, std::nullopt};
    for (int i = 0; i < N; ++i) {
        Jet sum(h.domain, h.order);
        for (int j = 0; j < N; ++j) sum += hz.at(i, j) * u[static_cast<size_t>(j)];
        rep.product = merge_checks(rep.product, check_residual(sum, through));
    }

    // L F_j and L G_l with L = sum u_m d/dZ_m: rows of H_Z against U again,
    // recorded separately as the derivation check.
    rep.derivations = IdentityCheck{true, through, std::nullopt};
    std::vector<Jet> comp = h.components();
    for (int i = 0; i < N; ++i) {
        Jet lf(h.domain, h.order);
        for (int v = 0; v < N; ++v)
            lf += u[static_cast<size_t>(v)] * comp[static_cast<size_t>(i)].derive(v);
        rep.derivations = merge_checks(rep.derivations, check_residual(lf, through));
    }

    VectorField field;
    field.domain = h.domain;
    for (int j = 0; j < h.n_src; ++j) field.phi.push_back(u[static_cast<size_t>(j)]);
    for (int l = 0; l < h.d_src; ++l) field.psi.push_back(u[static_cast<size_t>(h.n_src + l)]);
    rep.field = std::move(field);
    return rep;
}

TangencyReport tangency_check(const GenericManifold& m, const VectorField& field) {
    if (static_cast<int>(field.phi.size()) != m.n || static_cast<int>(field.psi.size()) != m.d)
        fail(ErrorKind::DimensionMismatch, "vector field dimensions do not match M");
    TangencyReport rep;
    rep.order = m.order;
    std::vector<Jet> psi_args = graph_args(m);
    rep.residual = IdentityCheck{true, m.order - 1, std::nullopt};
    for (int l = 0; l < m.d; ++l) {
        Jet res = field.psi[static_cast<size_t>(l)].compose(psi_args);
        for (int j = 0; j < m.n; ++j)
            res -= field.phi[static_cast<size_t>(j)].compose(psi_args) *
                   m.q[static_cast<size_t>(l)].derive("z", j + 1);
        int through = std::min(rep.residual.verified_order, res.eff_order());
        rep.residual = merge_checks(rep.residual, check_residual(res, through));
        rep.residual_jets.push_back(res.truncated(through).str());
    }
    rep.tangent = rep.residual.ok;
    return rep;
}

PropagationReport propagation_diagnostic(const GenericManifold& m, const FormalMap& h, int j_max) {
    if (h.n_src != m.n || h.d_src != m.d)
        fail(ErrorKind::DimensionMismatch, "map source dimensions do not match M");
    PropagationReport rep;
    rep.order = m.order;
    Jet det = jet_det(h.jacobian());
    SegreTower tower(m);
    for (int j = 0; j <= j_max; ++j) {
        const int k = 2 * j + 1;
        const SegreEntry& e = tower.at(k);
        std::vector<Jet> args;
        for (int jj = 0; jj < m.n; ++jj)
            args.push_back(Jet::variable(e.space, m.order, "t" + std::to_string(k), jj + 1));
        for (int l = 0; l < m.d; ++l) args.push_back(e.v[static_cast<size_t>(m.n + l)]);
        Jet pulled = det.compose(args);
        PropagationEntry entry;
        entry.j = j;
        entry.segre_level = k;
        entry.verified_order = pulled.eff_order();
        entry.zero = pulled.is_zero_to(entry.verified_order);
        entry.value = pulled.truncated(entry.verified_order).str();
        rep.all_zero = rep.all_zero && entry.zero;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

} // namespace crt
