#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crt/manifold.hpp"
#include "crt/qlinalg.hpp"

namespace crt {

/// Formal holomorphic map H = (F, G) fixing 0, as n'+d' jets over the
/// source coordinates (z:n, w:d).
struct FormalMap {
    int n_src = 0, d_src = 0;
    int n_tgt = 0, d_tgt = 0;
    SpacePtr domain; // (z:n_src, w:d_src)
    int order = 0;
    std::vector<Jet> f; // n_tgt components
    std::vector<Jet> g; // d_tgt components

    int N() const { return n_src + d_src; }

    static FormalMap make(int n_src, int d_src, int n_tgt, int d_tgt, std::vector<Jet> f,
                          std::vector<Jet> g);
    static FormalMap identity(int n, int d, int order);

    std::vector<Jet> components() const;

    /// Full Jacobian H_Z as an N x N jet matrix over (z, w).
    JetMatrix jacobian() const;
};

/// H2 o H1 by jet composition.
FormalMap compose_maps(const FormalMap& h1, const FormalMap& h2);

struct SendsReport {
    bool ok = false;
    int order = 0;
    IdentityCheck residual;
};

/// Does H map M into M'? Checks G(z,Q) - Q'(F(z,Q), barF, barG) == 0 on
/// the complexification, coefficient-exactly through the order.
SendsReport check_sends(const GenericManifold& m, const GenericManifold& mp, const FormalMap& h);

/// The substituted data on the complexification: pullbacks along
/// Psi(z,chi,tau) = (z, Q, chi, tau) and Phi = (F(z,Q), barF, barG),
/// together with the d x d matrix a(Psi) = G_w(Psi) - Q'_{z'}(Phi) F_w(Psi).
struct MapOnM {
    std::vector<Jet> f_psi;  // F o Psi
    std::vector<Jet> g_psi;  // G o Psi
    std::vector<Jet> bar_f;  // barF(chi, tau), promoted to (z, chi, tau)
    std::vector<Jet> bar_g;
    JetMatrix a_psi;
    /// Consistency: G_z(Psi) - Q'_{z'}(Phi) F_z(Psi) + a(Psi) Q_z == 0.
    IdentityCheck eq_z;
};

MapOnM a_matrix(const GenericManifold& m, const GenericManifold& mp, const FormalMap& h);

struct TransversalReport {
    bool transversal = false;
    QMatrix a0;      // a(0), exact
    Gaussian det_a0; // exact determinant
    int order = 0;
};

/// CR transversality criterion in normal coordinates: det a(0) != 0.
TransversalReport cr_transversal(const GenericManifold& m, const GenericManifold& mp,
                                 const FormalMap& h);

struct Lemma31Report {
    IdentityCheck det_identity;     // det H_Z(Psi) I = a(Psi) C
    IdentityCheck bar_det_identity; // det barH_xi(Psi) I = a(Psi) E
    IdentityCheck eq_z;             // z-derivative consistency from a_matrix
    int order = 0;
};

/// Builds B = adj(H_Z), the bordered matrices V, V', W, W' and the derived
/// C and E, then checks both determinant identities through the effective
/// order (derivatives cost one degree).
Lemma31Report verify_lemma31(const GenericManifold& m, const GenericManifold& mp,
                             const FormalMap& h);

struct KernelFieldReport {
    bool degenerate = false; // det H_Z == 0 as a jet (through eff order)
    std::optional<VectorField> field;
    IdentityCheck product;     // H_Z U == 0
    IdentityCheck derivations; // L F_j == L G_l == 0
    int order = 0;
    int verified_order = 0;
};

/// When det H_Z vanishes as a jet, produces a nonzero formal vector field
/// U annihilated by H_Z (adjugate column when available, Cramer minors
/// otherwise) and certifies H_Z U == 0 and L F = L G = 0.
KernelFieldReport kernel_field(const FormalMap& h);

struct TangencyReport {
    bool tangent = false;
    IdentityCheck residual;
    std::vector<std::string> residual_jets; // one per codimension
    int order = 0;
};

/// Tangency of a holomorphic vector field to M: the residual
/// psi_l(z,Q) - sum_j phi_j(z,Q) dQ_l/dz_j, verified through order-1.
TangencyReport tangency_check(const GenericManifold& m, const VectorField& field);

struct PropagationEntry {
    int j = 0;
    int segre_level = 0; // 2j+1
    bool zero = false;
    std::string value;
    int verified_order = 0;
};

struct PropagationReport {
    std::vector<PropagationEntry> entries;
    bool all_zero = true;
    int order = 0;
};

/// det H_Z composed with the odd Segre mappings v^{2j+1}, j = 0..j_max.
PropagationReport propagation_diagnostic(const GenericManifold& m, const FormalMap& h, int j_max);

} // namespace crt
