#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srlrc/linrs.hpp"
#include "srlrc/local.hpp"

namespace srlrc {

/// One leaf of the group tree: the unit actually carrying a local code.
struct LeafSpec {
    int r = 0;
    int delta = 0;  // 0 when the leaf's local code is not MDS-parameterized
    int n = 0;      // r + delta - 1 when delta > 0
    int q_bits = 0; // local field exponent
};

/// A top-level group: an outer-code slot of width r(). Initially one leaf;
/// partitioning replaces the leaf list. Flattened leaf order is the shard
/// order.
struct GroupSpec {
    std::vector<LeafSpec> leaves;

    int r() const {
        int s = 0;
        for (const auto& l : leaves) s += l.r;
        return s;
    }
    int n() const {
        int s = 0;
        for (const auto& l : leaves) s += l.n;
        return s;
    }
};

/// Full Construction-1 parameter set plus the group tree.
struct CodeProfile {
    int q_bits = 0;  // base field F_{2^q_bits}
    int m = 0;       // global field F_{q^m}
    int k = 0;
    std::vector<GroupSpec> groups;

    int g() const { return static_cast<int>(groups.size()); }
    int N() const {
        int s = 0;
        for (const auto& gr : groups) s += gr.r();
        return s;
    }
    int n() const {
        int s = 0;
        for (const auto& gr : groups) s += gr.n();
        return s;
    }
    int h() const { return N() - k; }

    std::vector<LeafSpec> leaf_list() const;
    std::vector<int> leaf_offsets() const;  // start index of each leaf in [0, n)
    SumRankPartition outer_partition() const;

    /// Throws ProfileInvalid naming the violated inequality.
    void validate() const;

    /// All exponents needed by the tower: local fields, base, global.
    std::vector<int> tower_exponents() const;
};

/// Erasure pattern as a sorted set of global coordinates in [0, n).
struct ErasurePattern {
    std::vector<int> erased;

    static ErasurePattern of(std::vector<int> idx);
    bool contains(int i) const;
    std::vector<int> survivors(int n) const;
    /// Per-leaf survivor index lists (positions local to each leaf).
    std::vector<std::vector<int>> leaf_survivors(const CodeProfile& p) const;
    std::vector<std::vector<int>> leaf_erasures(const CodeProfile& p) const;
};

/// Construction-1 composite: outer code times block-diagonal local
/// generators. Immutable; encode/decode/verify are pure.
class GlobalCode {
   public:
    /// Builds tower, linearized RS outer code, and MDS local codes from the
    /// profile. Explicit local codes (one per leaf) may replace the MDS
    /// defaults; a systematic distribution switches the active outer
    /// generator to the systematic form.
    static GlobalCode construct(const CodeProfile& profile,
                                std::optional<std::vector<LocalCode>> locals = std::nullopt,
                                std::optional<std::vector<int>> systematic = std::nullopt,
                                TowerPtr tower = nullptr);

    /// Assembles a global code around an arbitrary outer generator (used by
    /// multi-layer composition and alternant outer codes).
    static GlobalCode with_outer(TowerPtr tower, int base_field, int ext_field, Matrix outer_gen,
                                 CodeProfile profile, std::vector<LocalCode> locals);

    const CodeProfile& profile() const { return profile_; }
    const TowerPtr& tower() const { return tw_; }
    int base_field() const { return base_; }
    int ext_field() const { return ext_; }
    int k() const { return static_cast<int>(outer_gen_.rows()); }
    int length() const { return static_cast<int>(global_gen_.cols()); }
    const Matrix& outer_generator() const { return outer_gen_; }
    const Matrix& global_generator() const { return global_gen_; }
    const std::vector<LocalCode>& locals() const { return locals_; }
    const std::optional<LinRsCode>& outer_linrs() const { return outer_linrs_; }
    const std::optional<std::vector<int>>& systematic_distribution() const { return sys_dist_; }

    std::vector<uint64_t> encode(std::span<const uint64_t> message) const;

    /// Exact correctability predicate for MSRD outer codes: survivor ranks
    /// sum to at least k.
    bool correctable(const ErasurePattern& pattern) const;
    int survivor_rank_sum(const ErasurePattern& pattern) const;

    /// Folded survivor blocks A_i|_{R_i}, one per leaf.
    std::vector<Matrix> folded_blocks(const ErasurePattern& pattern) const;

    ErasureDecoder decoder(const ErasurePattern& pattern) const;

    /// Decode from a full-length word whose erased positions are ignored.
    std::vector<uint64_t> decode(std::span<const uint64_t> word, const ErasurePattern& pattern) const;

    /// Maximal recoverability per definition: every restriction that keeps
    /// r_i survivors per MDS leaf is MDS. Cost is the product of per-leaf
    /// erasure choices times C(N, k) minors.
    bool verify_mr_exhaustive(uint64_t cap = 20000000) const;

   private:
    GlobalCode() = default;

    TowerPtr tw_;
    int base_ = 0, ext_ = 0;
    CodeProfile profile_;
    std::optional<LinRsCode> outer_linrs_;
    Matrix outer_gen_;
    std::optional<std::vector<int>> sys_dist_;
    std::vector<LocalCode> locals_;  // one per leaf
    Matrix global_gen_;
};

/// e(A,k): the largest e such that every survivor set of size n-e still has
/// block-diagonal rank at least k. Brute force over all erasure subsets.
int e_max_bruteforce(const std::vector<LocalCode>& locals, int k, uint64_t cap = 1 << 22);

/// Closed form for MDS locals sorted with r ascending and delta descending.
int e_max_closed_form(const CodeProfile& profile, int k);

/// e(A,k) + 1; closed form when the ordering precondition holds, otherwise
/// brute force.
int global_distance(const GlobalCode& code);

struct PlanEntry {
    int x;
    long long base;
    long long exponent;
    long double log2_size;
    std::optional<long long> pow2_exponent;  // exact when base is a power of two
};

struct PlanTable {
    std::vector<PlanEntry> entries;
    int argmin_x;
};

/// F(x) = max{x+1, r+delta-1}^{ceil(gr/x)} for x = 1..g, reported in
/// (base, exponent) form; the minimum always lands at x = g.
PlanTable plan_field_size(int g, int r, int delta);

}  // namespace srlrc
