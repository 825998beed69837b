#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "crt/error.hpp"

namespace crt {

/// Ordered list of named variable blocks, e.g. (z:2, chi:2, tau:1) or
/// (t1:n, ..., tk:n). Jets are indexed by flat variable positions; the
/// block structure is what lets series be promoted between spaces and
/// blocks be renamed under conjugation.
class VarSpace {
public:
    using Blocks = std::vector<std::pair<std::string, int>>;

    explicit VarSpace(Blocks blocks);

    static std::shared_ptr<const VarSpace> make(Blocks blocks) {
        return std::make_shared<const VarSpace>(std::move(blocks));
    }

    int dim() const { return dim_; }
    const Blocks& blocks() const { return blocks_; }

    bool has_block(const std::string& name) const;
    int block_dim(const std::string& name) const;
    int block_offset(const std::string& name) const;

    /// Flat index of block variable (1-based position within the block).
    int index(const std::string& block, int pos1) const;

    /// Display name of a flat variable: bare block name for 1-dim blocks,
    /// otherwise name+position ("z2").
    std::string var_name(int flat) const;

    /// Same block layout under new names (order and dims preserved).
    std::shared_ptr<const VarSpace> renamed(const std::map<std::string, std::string>& names) const;

    friend bool operator==(const VarSpace& a, const VarSpace& b) { return a.blocks_ == b.blocks_; }
    friend bool operator!=(const VarSpace& a, const VarSpace& b) { return !(a == b); }

private:
    Blocks blocks_;
    int dim_;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

inline VarSpace::VarSpace(Blocks blocks) : blocks_(std::move(blocks)), dim_(0) {
    for (size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].second <= 0) fail(ErrorKind::DimensionMismatch, "block dimension must be positive");
        for (size_t j = 0; j < i; ++j)
            if (blocks_[j].first == blocks_[i].first)
                fail(ErrorKind::DimensionMismatch, "duplicate block name '" + blocks_[i].first + "'");
        dim_ += blocks_[i].second;
    }
}

inline bool VarSpace::has_block(const std::string& name) const {
    for (const auto& b : blocks_)
        if (b.first == name) return true;
    return false;
}

inline int VarSpace::block_dim(const std::string& name) const {
    for (const auto& b : blocks_)
        if (b.first == name) return b.second;
    fail(ErrorKind::UnknownVariable, "no block '" + name + "'");
}

inline int VarSpace::block_offset(const std::string& name) const {
    int off = 0;
    for (const auto& b : blocks_) {
        if (b.first == name) return off;
        off += b.second;
    }
    fail(ErrorKind::UnknownVariable, "no block '" + name + "'");
}

inline int VarSpace::index(const std::string& block, int pos1) const {
    int off = 0;
    for (const auto& b : blocks_) {
        if (b.first == block) {
            if (pos1 < 1 || pos1 > b.second)
                fail(ErrorKind::UnknownVariable, block + std::to_string(pos1) + " out of range");
            return off + pos1 - 1;
        }
        off += b.second;
    }
    fail(ErrorKind::UnknownVariable, "no block '" + block + "'");
}

inline std::string VarSpace::var_name(int flat) const {
    int off = 0;
    for (const auto& b : blocks_) {
        if (flat < off + b.second) {
            if (b.second == 1) return b.first;
            return b.first + std::to_string(flat - off + 1);
        }
        off += b.second;
    }
    fail(ErrorKind::UnknownVariable, "flat index out of range");
}

inline SpacePtr VarSpace::renamed(const std::map<std::string, std::string>& names) const {
    Blocks out = blocks_;
    for (auto& b : out) {
        auto it = names.find(b.first);
        if (it != names.end()) b.first = it->second;
    }
    return VarSpace::make(std::move(out));
}

} // namespace crt
