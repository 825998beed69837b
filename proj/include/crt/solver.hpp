#pragma once

#include <span>
#include <string>
#include <vector>

#include "crt/jet.hpp"

namespace crt {

/// Solve Phi(x, y) = 0 for y = y(x) with y(0) = 0, where Phi is a k-tuple
/// of jets over a space containing the blocks named in `y_blocks` (total
/// dimension k) and dPhi/dy(0) is invertible. The solution is computed
/// degree by degree with the constant Jacobian (formal Newton) and is
/// exact modulo degree > order. Result jets live over the space with the
/// y-blocks removed.
std::vector<Jet> implicit_solve(std::span<const Jet> phi, const std::vector<std::string>& y_blocks);

/// Compositional inverse of a formal self-map: f is an m-tuple of jets
/// over an m-dimensional space with f(0) = 0 and invertible linear part;
/// returns g over the same space with f(g(x)) = x modulo degree > order.
std::vector<Jet> invert_map(std::span<const Jet> f);

/// Component-wise composition helper: every entry of `outer` is composed
/// with the same argument tuple.
std::vector<Jet> compose_all(std::span<const Jet> outer, std::span<const Jet> args);

/// Coordinate jets of a space, in flat order.
std::vector<Jet> coordinate_jets(const SpacePtr& space, int order);

} // namespace crt
