#pragma once

#include <optional>
#include <vector>

#include "crt/gaussian.hpp"

namespace crt {

/// Dense exact linear algebra over the Gaussian rationals. Small systems
/// only (constant-level Jacobians, tangency equations, rank probes).
using QMatrix = std::vector<std::vector<Gaussian>>;

int qrank(QMatrix a);

std::optional<QMatrix> qinverse(QMatrix a);

/// Solve A x = b for square A; nullopt when A is singular.
std::optional<std::vector<Gaussian>> qsolve(QMatrix a, std::vector<Gaussian> b);

/// Basis of the right nullspace of an m x n matrix.
std::vector<std::vector<Gaussian>> qnullspace(QMatrix a);

Gaussian qdet(QMatrix a);

} // namespace crt
