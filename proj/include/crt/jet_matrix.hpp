#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "crt/jet.hpp"
#include "crt/rng.hpp"

namespace crt {

/// Dense matrix of jets over a shared space and order.
class JetMatrix {
public:
    JetMatrix(int rows, int cols, SpacePtr space, int order);

    static JetMatrix identity(int n, SpacePtr space, int order);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SpacePtr& space() const { return space_; }
    int order() const { return order_; }

    const Jet& at(int i, int j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    Jet& at(int i, int j) { return e_[static_cast<size_t>(i * cols_ + j)]; }

    JetMatrix operator*(const JetMatrix& o) const;
    JetMatrix operator-(const JetMatrix& o) const;
    JetMatrix operator+(const JetMatrix& o) const;
    JetMatrix transpose() const;
    JetMatrix scaled(const Jet& f) const;

    /// Compose every entry with the same argument tuple.
    JetMatrix compose(std::span<const Jet> args) const;

    /// Columns [c0, c0+k) as a new matrix.
    JetMatrix column_slice(int c0, int k) const;

    bool is_zero_to(int k) const;
    int min_eff() const;

    /// Inverse of a square matrix whose constant term is invertible.
    JetMatrix invert_unit() const;

private:
    int rows_, cols_;
    SpacePtr space_;
    int order_;
    std::vector<Jet> e_;
};

struct DetAdj {
    Jet det;
    JetMatrix adj;
};

/// Determinant and adjugate of a square jet matrix, exact modulo degree >
/// order: A*adj == adj*A == det*I.
DetAdj det_adj(const JetMatrix& a);

Jet jet_det(const JetMatrix& a);

struct RankCertificate {
    int rank = 0;
    /// Pivot positions (row, col) of a witnessing minor in the original
    /// matrix; the minor is a nonzero jet.
    std::vector<std::pair<int, int>> pivots;
    int order = 0;
    int eff_order = 0;
};

/// Largest r such that some r x r minor is a nonzero jet, found by
/// division-free elimination with minimal-valuation pivoting. Exact for
/// the truncation; a lower bound for the untruncated generic rank.
RankCertificate generic_rank(const JetMatrix& a);

struct RandomizedRank {
    int rank = 0;
    std::vector<Gaussian> witness;
};

/// Max exact rank of the evaluated matrix over `tries` random rational
/// points (numerators in [-9,9], denominators in {1,2,3}).
RandomizedRank randomized_rank(const JetMatrix& a, int tries, Rng& rng);

/// A nonzero jet vector v with A v == 0 modulo degree > order whenever the
/// jet rank is below the column count, built from Cramer minors of a
/// witnessing pivot set; nullopt when the matrix has full column rank as
/// a jet matrix.
std::optional<std::vector<Jet>> kernel_vector(const JetMatrix& a);

} // namespace crt
