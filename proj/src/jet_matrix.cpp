#include "crt/jet_matrix.hpp"

#include <algorithm>

#include "crt/qlinalg.hpp"

namespace crt {

JetMatrix::JetMatrix(int rows, int cols, SpacePtr space, int order)
    : rows_(rows), cols_(cols), space_(std::move(space)), order_(order) {
    if (rows <= 0 || cols <= 0) fail(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
    e_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Jet(space_, order_));
}

JetMatrix JetMatrix::identity(int n, SpacePtr space, int order) {
    JetMatrix m(n, n, space, order);
    for (int i = 0; i < n; ++i) m.at(i, i) = Jet::constant(m.space_, order, Gaussian::one());
    return m;
}

JetMatrix JetMatrix::operator*(const JetMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    JetMatrix r(rows_, o.cols_, space_, order_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            Jet sum(space_, order_);
            for (int k = 0; k < cols_; ++k) sum += at(i, k) * o.at(k, j);
            r.at(i, j) = std::move(sum);
        }
    return r;
}

JetMatrix JetMatrix::operator-(const JetMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimensionMismatch, "matrix shape mismatch");
    JetMatrix r = *this;
    for (int i = 0; i < rows_ * cols_; ++i) r.e_[static_cast<size_t>(i)] -= o.e_[static_cast<size_t>(i)];
    return r;
}

JetMatrix JetMatrix::operator+(const JetMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimensionMismatch, "matrix shape mismatch");
    JetMatrix r = *this;
    for (int i = 0; i < rows_ * cols_; ++i) r.e_[static_cast<size_t>(i)] += o.e_[static_cast<size_t>(i)];
    return r;
}

JetMatrix JetMatrix::transpose() const {
    JetMatrix r(cols_, rows_, space_, order_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

JetMatrix JetMatrix::scaled(const Jet& f) const {
    JetMatrix r = *this;
    for (auto& e : r.e_) e = e * f;
    return r;
}

JetMatrix JetMatrix::compose(std::span<const Jet> args) const {
    const SpacePtr target = args.empty() ? space_ : args[0].space();
    const int out_order = args.empty() ? order_ : args[0].order();
    JetMatrix r(rows_, cols_, target, out_order);
    for (int i = 0; i < rows_ * cols_; ++i)
        r.e_[static_cast<size_t>(i)] = e_[static_cast<size_t>(i)].compose(args);
    return r;
}

JetMatrix JetMatrix::column_slice(int c0, int k) const {
    JetMatrix r(rows_, k, space_, order_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < k; ++j) r.at(i, j) = at(i, c0 + j);
    return r;
}

bool JetMatrix::is_zero_to(int k) const {
    for (const auto& e : e_)
        if (!e.is_zero_to(k)) return false;
    return true;
}

int JetMatrix::min_eff() const {
    int eff = order_;
    for (const auto& e : e_) eff = std::min(eff, e.eff_order());
    return eff;
}

JetMatrix JetMatrix::invert_unit() const {
    auto [det, adj] = det_adj(*this);
    Jet dinv = det.invert_unit();
    return adj.scaled(dinv);
}

namespace {

// Determinant by column-subset dynamic programming (Laplace along rows).
Jet det_of(const std::vector<const Jet*>& a, int n, const SpacePtr& space, int order) {
    if (n == 0) return Jet::constant(space, order, Gaussian::one());
    std::vector<std::optional<Jet>> dp(static_cast<size_t>(1) << n);
    dp[0] = Jet::constant(space, order, Gaussian::one());
    for (uint32_t mask = 1; mask < dp.size(); ++mask) {
        int pc = __builtin_popcount(mask);
        Jet sum(space, order);
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const Jet& entry = *a[static_cast<size_t>((pc - 1) * n + j)];
            if (!entry.is_zero()) {
                Jet term = entry * *dp[mask ^ (1u << j)];
                if ((pc - 1 + pos) % 2 == 0) sum += term;
                else sum -= term;
            }
            ++pos;
        }
        dp[mask] = std::move(sum);
    }
    return *dp.back();
}

} // namespace

Jet jet_det(const JetMatrix& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::NotSquare, "determinant of a non-square matrix");
    const int n = a.rows();
    if (n > 12) fail(ErrorKind::DimensionMismatch, "determinant size limit exceeded");
    std::vector<const Jet*> ptr;
    ptr.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ptr.push_back(&a.at(i, j));
    return det_of(ptr, n, a.space(), a.order());
}

DetAdj det_adj(const JetMatrix& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::NotSquare, "adjugate of a non-square matrix");
    const int n = a.rows();
    JetMatrix adj(n, n, a.space(), a.order());
    if (n == 1) {
        adj.at(0, 0) = Jet::constant(a.space(), a.order(), Gaussian::one());
        return {a.at(0, 0), adj};
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<const Jet*> minor;
            minor.reserve(static_cast<size_t>(n - 1) * static_cast<size_t>(n - 1));
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.push_back(&a.at(r, c));
                }
            }
            Jet cof = det_of(minor, n - 1, a.space(), a.order());
            adj.at(j, i) = ((i + j) % 2 == 0) ? std::move(cof) : -cof;
        }
    return {jet_det(a), adj};
}

RankCertificate generic_rank(const JetMatrix& a) {
    const int R = a.rows(), C = a.cols();
    std::vector<std::vector<Jet>> w;
    w.reserve(static_cast<size_t>(R));
    for (int i = 0; i < R; ++i) {
        std::vector<Jet> row;
        row.reserve(static_cast<size_t>(C));
        for (int j = 0; j < C; ++j) row.push_back(a.at(i, j));
        w.push_back(std::move(row));
    }
    std::vector<bool> row_done(static_cast<size_t>(R), false), col_done(static_cast<size_t>(C), false);

    RankCertificate cert;
    cert.order = a.order();
    cert.eff_order = a.min_eff();
    while (true) {
        int bi = -1, bj = -1, bval = 0;
        for (int i = 0; i < R; ++i) {
            if (row_done[static_cast<size_t>(i)]) continue;
            for (int j = 0; j < C; ++j) {
                if (col_done[static_cast<size_t>(j)] || w[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero())
                    continue;
                int v = w[static_cast<size_t>(i)][static_cast<size_t>(j)].valuation();
                if (bi < 0 || v < bval) {
                    bi = i;
                    bj = j;
                    bval = v;
                }
            }
        }
        if (bi < 0) break;
        cert.pivots.emplace_back(bi, bj);
        const Jet pivot = w[static_cast<size_t>(bi)][static_cast<size_t>(bj)];
        for (int r = 0; r < R; ++r) {
            if (r == bi || row_done[static_cast<size_t>(r)]) continue;
            const Jet factor = w[static_cast<size_t>(r)][static_cast<size_t>(bj)];
            if (factor.is_zero()) continue;
            for (int c = 0; c < C; ++c) {
                if (c == bj || col_done[static_cast<size_t>(c)]) continue;
                w[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    w[static_cast<size_t>(r)][static_cast<size_t>(c)] * pivot -
                    factor * w[static_cast<size_t>(bi)][static_cast<size_t>(c)];
            }
            w[static_cast<size_t>(r)][static_cast<size_t>(bj)] = Jet(a.space(), a.order());
        }
        row_done[static_cast<size_t>(bi)] = true;
        col_done[static_cast<size_t>(bj)] = true;
    }
    cert.rank = static_cast<int>(cert.pivots.size());
    return cert;
}

RandomizedRank randomized_rank(const JetMatrix& a, int tries, Rng& rng) {
    RandomizedRank best;
    const int dim = a.space()->dim();
    const int cap = std::min(a.rows(), a.cols());
    for (int t = 0; t < tries; ++t) {
        std::vector<Gaussian> pt;
        pt.reserve(static_cast<size_t>(dim));
        for (int v = 0; v < dim; ++v) pt.push_back(rng.small_gaussian(9, 3));
        QMatrix num(static_cast<size_t>(a.rows()), std::vector<Gaussian>(static_cast<size_t>(a.cols())));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                num[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.at(i, j).evaluate(pt);
        int r = qrank(num);
        if (r > best.rank) {
            best.rank = r;
            best.witness = std::move(pt);
            if (best.rank == cap) break;
        }
    }
    return best;
}

std::optional<std::vector<Jet>> kernel_vector(const JetMatrix& a) {
    RankCertificate cert = generic_rank(a);
    if (cert.rank == a.cols()) return std::nullopt;

    const SpacePtr& space = a.space();
    const int order = a.order();
    if (cert.rank == 0) {
        std::vector<Jet> v(static_cast<size_t>(a.cols()), Jet(space, order));
        v[0] = Jet::constant(space, order, Gaussian::one());
        return v;
    }

    std::vector<int> prow, pcol;
    for (auto& [i, j] : cert.pivots) {
        prow.push_back(i);
        pcol.push_back(j);
    }
    std::sort(prow.begin(), prow.end());
    std::sort(pcol.begin(), pcol.end());

    // Cramer construction: over the pivot rows, the signed maximal minors
    // of the pivot columns plus one free column form a kernel vector whose
    // free-column component is the witnessing (nonzero) minor.
    for (int fc = 0; fc < a.cols(); ++fc) {
        if (std::find(pcol.begin(), pcol.end(), fc) != pcol.end()) continue;
        std::vector<int> cols = pcol;
        cols.push_back(fc);
        std::sort(cols.begin(), cols.end());

        std::vector<Jet> v(static_cast<size_t>(a.cols()), Jet(space, order));
        for (size_t drop = 0; drop < cols.size(); ++drop) {
            std::vector<const Jet*> minor;
            for (int r : prow)
                for (size_t c = 0; c < cols.size(); ++c) {
                    if (c == drop) continue;
                    minor.push_back(&a.at(r, cols[c]));
                }
            Jet d = det_of(minor, cert.rank, space, order);
            v[static_cast<size_t>(cols[drop])] = (drop % 2 == 0) ? std::move(d) : -d;
        }

        bool nonzero = false;
        for (const auto& comp : v) nonzero = nonzero || !comp.is_zero();
        if (!nonzero) continue;

        // Certify A v == 0 at the working order; truncation can in
        // principle spoil a free row, so verify before returning.
        bool ok = true;
        for (int i = 0; i < a.rows() && ok; ++i) {
            Jet sum(space, order);
            for (int j = 0; j < a.cols(); ++j) sum += a.at(i, j) * v[static_cast<size_t>(j)];
            ok = sum.is_zero();
        }
        if (ok) return v;
    }
    fail(ErrorKind::NormalizationFailure, "kernel vector not certifiable at this truncation order");
}

} // namespace crt
