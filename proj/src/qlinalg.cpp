#include "crt/qlinalg.hpp"

namespace crt {

namespace {

// Row echelon with full row reduction; returns pivot columns.
std::vector<int> reduce(QMatrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Gaussian inv = a[r][c].inverse();
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Gaussian f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int qrank(QMatrix a) { return static_cast<int>(reduce(a).size()); }

std::optional<QMatrix> qinverse(QMatrix a) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        a[i].resize(2 * static_cast<size_t>(n), Gaussian::zero());
        a[i][static_cast<size_t>(n + i)] = Gaussian::one();
    }
    auto pivots = reduce(a);
    if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
    QMatrix inv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        inv[i].assign(a[i].begin() + n, a[i].end());
    return inv;
}

std::optional<std::vector<Gaussian>> qsolve(QMatrix a, std::vector<Gaussian> b) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) a[i].push_back(b[static_cast<size_t>(i)]);
    auto pivots = reduce(a);
    if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() >= n)) return std::nullopt;
    std::vector<Gaussian> x(static_cast<size_t>(n), Gaussian::zero());
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(pivots[static_cast<size_t>(i)])] = a[i].back();
    return x;
}

std::vector<std::vector<Gaussian>> qnullspace(QMatrix a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    auto pivots = reduce(a);
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Gaussian>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[static_cast<size_t>(fc)]) continue;
        std::vector<Gaussian> v(static_cast<size_t>(cols), Gaussian::zero());
        v[static_cast<size_t>(fc)] = Gaussian::one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -a[r][static_cast<size_t>(fc)];
        basis.push_back(std::move(v));
    }
    return basis;
}

Gaussian qdet(QMatrix a) {
    const int n = static_cast<int>(a.size());
    Gaussian det = Gaussian::one();
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Gaussian::zero();
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Gaussian inv = a[c][c].inverse();
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            Gaussian f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

} // namespace crt
