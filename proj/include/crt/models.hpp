#pragma once

#include "crt/manifold.hpp"
#include "crt/mapping.hpp"

namespace crt {
namespace models {

/// Im w = |z|^2:  Q = tau + 2 i z chi.
GenericManifold heisenberg(int order);

/// Im w = 0:  Q = tau.
GenericManifold flat(int order);

/// Im w = 2 (Re w) |z|^2:  Q = tau (1 + 2 i z chi) / (1 - 2 i z chi).
GenericManifold re_weighted_quadric(int order);

/// Im w = (Re w) xi(|z|^2) with xi - (1 - xi^2) x = 0, xi(0) = 0:
/// Q = tau (1 + i xi(z chi)) / (1 - i xi(z chi)). Not of finite type:
/// every Segre floor is (t^k, 0).
GenericManifold xi_manifold(int order);

/// The xi series itself, over a univariate space ("x":1).
Jet xi_series(int order);

/// n = d = 2 quadric Q_l = tau_l + 2 i <A_l z, chi> with A_1 = I and
/// A_2 = diag(1, -1); finite type with witness k = 2.
GenericManifold quadric22(int order);

/// H = (z, w^2) on C^2.
FormalMap squaring_map(int order);

/// Weight-respecting dilation (lambda z, |lambda|^2 w); a self-map of the
/// Heisenberg model for any Gaussian rational lambda.
FormalMap dilation(const Gaussian& lambda, int order);

} // namespace models
} // namespace crt
