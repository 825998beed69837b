#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crt/jet.hpp"
#include "crt/jet_matrix.hpp"
#include "crt/report.hpp"

namespace crt {

/// Variable space (z:n, chi:n, tau:d) of a manifold's defining series.
SpacePtr manifold_space(int n, int d);
/// Variable space (z:n, w:d) of maps and vector fields.
SpacePtr map_space(int n, int d);

/// Formal generic submanifold of codimension d in normal coordinates:
/// w = Q(z, conj z, conj w) with Q(z,0,tau) = Q(0,chi,tau) = tau.
struct GenericManifold {
    int n = 0;
    int d = 0;
    int order = 0;
    SpacePtr space;     // (z:n, chi:n, tau:d)
    std::vector<Jet> q; // d jets over space

    int N() const { return n + d; }

    static GenericManifold make(int n, int d, int order, std::vector<Jet> q);
};

/// Substitution tuple for pulling a (z, w)-jet back to the
/// complexification: z -> z, w -> Q(z, chi, tau).
std::vector<Jet> graph_args(const GenericManifold& m);

/// bar Q as a tuple over (z:n, chi:n, w:d): the series barQ(chi, z, w).
std::vector<Jet> bar_q(const GenericManifold& m, const SpacePtr& target);

struct ValidationReport {
    int order = 0;
    IdentityCheck normality;
    IdentityCheck reality;
    bool ok() const { return normality.ok && reality.ok; }
};

/// Checks the normalization and reality identities coefficient-exactly.
/// Failures are reported as data, never thrown.
ValidationReport validate(const GenericManifold& m);

struct Normalization {
    GenericManifold manifold;
    /// Holomorphic change of coordinates (z, w) -> (z, kappa(lambda(z, w)))
    /// as n+d jets over (z:n, w:d); maps the graph of the input onto the
    /// graph of `manifold`.
    std::vector<Jet> change;
};

/// Normal coordinates for a defining tuple Q~ over (z:n, chi:n, tau:d)
/// that satisfies the reality identity but need not be normalized.
/// Throws RealityViolation / DegenerateCodirection on bad input; the
/// output always passes validate().
Normalization from_complex_defining(const std::vector<Jet>& q_tilde);

/// One floor of the Segre tower: v^k = (t^k, u^k) over (t1:n, ..., tk:n).
struct SegreEntry {
    int k = 0;
    SpacePtr space;
    std::vector<Jet> v; // N jets; first n are the t^k coordinates
};

/// Iterated Segre mappings with cached floors: u^1 = 0 and
/// u^k = Q(t^k, t^{k-1}, bar u^{k-1}).
class SegreTower {
public:
    explicit SegreTower(GenericManifold m) : m_(std::move(m)) {}

    const GenericManifold& manifold() const { return m_; }
    const SegreEntry& at(int k);

private:
    GenericManifold m_;
    std::vector<SegreEntry> entries_;
};

SegreEntry segre(const GenericManifold& m, int k);

/// Jacobian of v^k as an N x (k n) jet matrix over the tower space.
JetMatrix segre_jacobian(const SegreEntry& e, int n);

struct FiniteTypeReport {
    bool finite_type = false;
    std::optional<int> witness_k;
    std::vector<int> ranks; // generic rank of v^k for k = 1..max_k
    int target_rank = 0;    // N = n + d
    int max_k = 0;
    int order = 0;
    /// Ranks should be non-decreasing in k; a violation would flag a
    /// truncation artifact and is reported rather than hidden.
    bool ranks_monotone = true;
};

/// Finite type via the generic rank of the iterated Segre mappings;
/// k = d+1 levels suffice, smaller witnesses are reported when found.
FiniteTypeReport finite_type(const GenericManifold& m, int max_k = -1);

/// Holomorphic vector field sum phi_j d/dz_j + sum psi_l d/dw_l with jet
/// coefficients over (z:n, w:d).
struct VectorField {
    SpacePtr domain;
    std::vector<Jet> phi;
    std::vector<Jet> psi;
};

struct NondegReport {
    bool nondegenerate = true;
    int field_degree = 0;
    int order = 0;
    int verified_order = 0;
    std::optional<VectorField> witness;
};

/// Exact kernel computation of the tangency system for coefficient
/// degree <= field_degree: a nonzero tangent field is returned as a
/// witness of degeneracy, otherwise the manifold is holomorphically
/// nondegenerate up to (field_degree, order).
NondegReport holo_nondeg(const GenericManifold& m, int field_degree);

struct IncidenceReport {
    int k = 0;
    int order = 0;
    IdentityCheck forward;  // (v^{k+1}, bar v^k) on the complexification
    IdentityCheck backward; // (v^{k-1}, bar v^k), checked for k >= 2
    bool ok() const { return forward.ok && backward.ok; }
};

IncidenceReport incidence_check(const GenericManifold& m, int k);

} // namespace crt
