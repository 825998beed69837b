#include "crt/models.hpp"

#include "crt/solver.hpp"

namespace crt {
namespace models {

GenericManifold heisenberg(int order) {
    SpacePtr S = manifold_space(1, 1);
    Jet q = Jet::variable(S, order, "tau") +
            (Gaussian(Rational(0), Rational(2)) *
             (Jet::variable(S, order, "z") * Jet::variable(S, order, "chi")));
    return GenericManifold::make(1, 1, order, {q});
}

GenericManifold flat(int order) {
    SpacePtr S = manifold_space(1, 1);
    return GenericManifold::make(1, 1, order, {Jet::variable(S, order, "tau")});
}

GenericManifold re_weighted_quadric(int order) {
    SpacePtr S = manifold_space(1, 1);
    Jet zchi = Jet::variable(S, order, "z") * Jet::variable(S, order, "chi");
    Jet two_i_zchi = Gaussian(Rational(0), Rational(2)) * zchi;
    Jet one = Jet::constant(S, order, Gaussian::one());
    Jet q = Jet::variable(S, order, "tau") * (one + two_i_zchi) * (one - two_i_zchi).invert_unit();
    return GenericManifold::make(1, 1, order, {q});
}

Jet xi_series(int order) {
    SpacePtr S = VarSpace::make({{"x", 1}, {"xi", 1}});
    Jet x = Jet::variable(S, order, "x");
    Jet xi = Jet::variable(S, order, "xi");
    Jet one = Jet::constant(S, order, Gaussian::one());
    Jet phi = xi - (one - xi * xi) * x;
    return implicit_solve(std::vector<Jet>{phi}, {"xi"}).front();
}

GenericManifold xi_manifold(int order) {
    SpacePtr S = manifold_space(1, 1);
    Jet zchi = Jet::variable(S, order, "z") * Jet::variable(S, order, "chi");
    std::vector<Jet> arg{zchi};
    Jet xi = xi_series(order).compose(arg);
    Jet one = Jet::constant(S, order, Gaussian::one());
    Jet i_xi = Gaussian::i() * xi;
    Jet q = Jet::variable(S, order, "tau") * (one + i_xi) * (one - i_xi).invert_unit();
    return GenericManifold::make(1, 1, order, {q});
}

GenericManifold quadric22(int order) {
    SpacePtr S = manifold_space(2, 2);
    const Gaussian two_i(Rational(0), Rational(2));
    Jet z1 = Jet::variable(S, order, "z", 1), z2 = Jet::variable(S, order, "z", 2);
    Jet c1 = Jet::variable(S, order, "chi", 1), c2 = Jet::variable(S, order, "chi", 2);
    Jet q1 = Jet::variable(S, order, "tau", 1) + two_i * (z1 * c1 + z2 * c2);
    Jet q2 = Jet::variable(S, order, "tau", 2) + two_i * (z1 * c1 - z2 * c2);
    return GenericManifold::make(2, 2, order, {q1, q2});
}

FormalMap squaring_map(int order) {
    SpacePtr S = map_space(1, 1);
    Jet w = Jet::variable(S, order, "w");
    return FormalMap::make(1, 1, 1, 1, {Jet::variable(S, order, "z")}, {w * w});
}

FormalMap dilation(const Gaussian& lambda, int order) {
    SpacePtr S = map_space(1, 1);
    Gaussian weight = lambda * lambda.conj();
    return FormalMap::make(1, 1, 1, 1, {lambda * Jet::variable(S, order, "z")},
                           {weight * Jet::variable(S, order, "w")});
}

} // namespace models
} // namespace crt
