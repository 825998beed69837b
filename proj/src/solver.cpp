#include "crt/solver.hpp"

#include <algorithm>

#include "crt/qlinalg.hpp"

namespace crt {

std::vector<Jet> coordinate_jets(const SpacePtr& space, int order) {
    std::vector<Jet> out;
    out.reserve(static_cast<size_t>(space->dim()));
    for (int v = 0; v < space->dim(); ++v) out.push_back(Jet::variable(space, order, v));
    return out;
}

std::vector<Jet> compose_all(std::span<const Jet> outer, std::span<const Jet> args) {
    std::vector<Jet> out;
    out.reserve(outer.size());
    for (const auto& f : outer) out.push_back(f.compose(args));
    return out;
}

std::vector<Jet> implicit_solve(std::span<const Jet> phi, const std::vector<std::string>& y_blocks) {
    if (phi.empty()) fail(ErrorKind::DimensionMismatch, "implicit_solve needs at least one equation");
    const SpacePtr S = phi[0].space();
    const int order = phi[0].order();
    for (const auto& p : phi)
        if (!same_space(p.space(), S) || p.order() != order)
            fail(ErrorKind::SpaceMismatch, "implicit_solve equations over different spaces");

    int ydim = 0;
    std::vector<bool> is_y(static_cast<size_t>(S->dim()), false);
    for (const auto& name : y_blocks) {
        int off = S->block_offset(name);
        int d = S->block_dim(name);
        ydim += d;
        for (int j = 0; j < d; ++j) is_y[static_cast<size_t>(off + j)] = true;
    }
    const int k = static_cast<int>(phi.size());
    if (ydim != k) fail(ErrorKind::DimensionMismatch, "implicit_solve: unknown count != equation count");

    for (const auto& p : phi)
        if (!p.constant_term().is_zero())
            fail(ErrorKind::NonzeroConstantTerm, "implicit_solve: Phi(0,0) != 0");

    // x-space: the blocks of S with the unknowns removed, order preserved.
    VarSpace::Blocks xb;
    for (const auto& b : S->blocks())
        if (std::find(y_blocks.begin(), y_blocks.end(), b.first) == y_blocks.end()) xb.push_back(b);
    if (xb.empty()) fail(ErrorKind::DimensionMismatch, "implicit_solve: no free variables");
    SpacePtr X = VarSpace::make(std::move(xb));

    // Flat positions of the unknowns in S, in block order.
    std::vector<int> ypos;
    for (const auto& name : y_blocks) {
        int off = S->block_offset(name);
        for (int j = 0; j < S->block_dim(name); ++j) ypos.push_back(off + j);
    }

    QMatrix jac(static_cast<size_t>(k), std::vector<Gaussian>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            jac[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                phi[static_cast<size_t>(i)].coefficient(
                    Monomial::unit(S->dim(), ypos[static_cast<size_t>(j)]));
    auto jinv = qinverse(jac);
    if (!jinv) fail(ErrorKind::SingularJacobian, "implicit_solve: dPhi/dy(0) is singular");

    std::vector<Jet> y(static_cast<size_t>(k), Jet(X, order));

    // Degree-by-degree: the degree-m defect of Phi(x, y) is linear in the
    // degree-m correction through the constant Jacobian.
    for (int m = 1; m <= order; ++m) {
        std::vector<Jet> args;
        args.reserve(static_cast<size_t>(S->dim()));
        int xflat = 0;
        for (int v = 0; v < S->dim(); ++v) {
            if (is_y[static_cast<size_t>(v)]) {
                int slot = -1;
                for (size_t t = 0; t < ypos.size(); ++t)
                    if (ypos[t] == v) slot = static_cast<int>(t);
                args.push_back(y[static_cast<size_t>(slot)].at_order(m));
            } else {
                args.push_back(Jet::variable(X, m, xflat));
                ++xflat;
            }
        }

        std::vector<Jet> res;
        res.reserve(static_cast<size_t>(k));
        for (const auto& p : phi) res.push_back(p.compose(args));

        // Collect degree-m monomials and apply -J^{-1} per monomial.
        std::map<Monomial, std::vector<Gaussian>> defect;
        for (int i = 0; i < k; ++i) {
            for (const auto& [mo, c] : res[static_cast<size_t>(i)].coeffs()) {
                if (mo.degree() != m) continue;
                auto [it, inserted] =
                    defect.try_emplace(mo, std::vector<Gaussian>(static_cast<size_t>(k), Gaussian::zero()));
                it->second[static_cast<size_t>(i)] = c;
            }
        }
        for (const auto& [mo, b] : defect) {
            for (int j = 0; j < k; ++j) {
                Gaussian corr = Gaussian::zero();
                for (int i = 0; i < k; ++i)
                    corr += (*jinv)[static_cast<size_t>(j)][static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
                y[static_cast<size_t>(j)].add_term(mo, -corr);
            }
        }
    }

    int eff = order;
    for (const auto& p : phi) eff = std::min(eff, p.eff_order());
    for (auto& yj : y) yj = yj.with_eff(eff);
    return y;
}

std::vector<Jet> invert_map(std::span<const Jet> f) {
    if (f.empty()) fail(ErrorKind::DimensionMismatch, "invert_map of empty tuple");
    const SpacePtr S = f[0].space();
    const int order = f[0].order();
    if (static_cast<int>(f.size()) != S->dim())
        fail(ErrorKind::DimensionMismatch, "invert_map: component count != dimension");

    std::map<std::string, std::string> prime;
    VarSpace::Blocks tb = S->blocks();
    for (const auto& b : S->blocks()) {
        prime[b.first] = b.first + "'";
        tb.emplace_back(b.first + "'", b.second);
    }
    SpacePtr T = VarSpace::make(std::move(tb));

    std::vector<Jet> phi;
    std::vector<std::string> yb;
    for (const auto& b : S->blocks()) yb.push_back(b.first + "'");
    for (int i = 0; i < S->dim(); ++i) {
        Jet fi = f[static_cast<size_t>(i)].rename_blocks(prime).promote(T);
        phi.push_back(fi - Jet::variable(T, order, i));
    }
    return implicit_solve(phi, yb);
}

} // namespace crt
