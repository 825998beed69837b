#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace crt {

/// Exponent multi-index with cached total degree. Ordered graded-lex so
/// that jet coefficient maps iterate lowest degree first.
class Monomial {
public:
    Monomial() : deg_(0) {}
    explicit Monomial(int nvars) : e_(static_cast<size_t>(nvars), 0), deg_(0) {}
    explicit Monomial(std::vector<uint8_t> e)
        : e_(std::move(e)), deg_(std::accumulate(e_.begin(), e_.end(), 0)) {}

    static Monomial unit(int nvars, int var) {
        Monomial m(nvars);
        m.e_[static_cast<size_t>(var)] = 1;
        m.deg_ = 1;
        return m;
    }

    int degree() const { return deg_; }
    int nvars() const { return static_cast<int>(e_.size()); }
    int exp(int var) const { return e_[static_cast<size_t>(var)]; }
    bool is_constant() const { return deg_ == 0; }
    const std::vector<uint8_t>& exps() const { return e_; }

    Monomial plus(const Monomial& o) const {
        Monomial r = *this;
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = static_cast<uint8_t>(r.e_[k] + o.e_[k]);
        r.deg_ += o.deg_;
        return r;
    }

    /// this / x_var, requires exp(var) > 0.
    Monomial minus_var(int var) const {
        Monomial r = *this;
        --r.e_[static_cast<size_t>(var)];
        --r.deg_;
        return r;
    }

    Monomial plus_var(int var) const {
        Monomial r = *this;
        ++r.e_[static_cast<size_t>(var)];
        ++r.deg_;
        return r;
    }

    int last_var() const {
        for (int k = nvars() - 1; k >= 0; --k)
            if (e_[static_cast<size_t>(k)] > 0) return k;
        return -1;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return a.e_ < b.e_;
    }

private:
    std::vector<uint8_t> e_;
    int deg_;
};

} // namespace crt
