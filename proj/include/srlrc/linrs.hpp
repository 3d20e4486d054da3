#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srlrc/sumrank.hpp"

namespace srlrc {

/// D_a^i(b) = sigma^i(b) N_i(a), sigma(x) = x^q with q the order of `base`.
uint64_t operator_eval(const FieldTower& tower, int base, int ext, uint64_t a, int i, uint64_t b);

/// Linearized Reed-Solomon outer code over F_{q^m} for a sum-rank length
/// partition. Block i of the generator evaluates the operator powers of
/// D_{gamma^{i-1}} at the basis prefix beta_1..beta_{r_i}. Immutable.
class LinRsCode {
   public:
    static LinRsCode make(TowerPtr tower, int base_field, int ext_field, SumRankPartition partition, int k);

    const TowerPtr& tower() const { return tw_; }
    int base_field() const { return base_; }
    int ext_field() const { return ext_; }
    const SumRankPartition& partition() const { return part_; }
    int k() const { return k_; }
    int length() const { return part_.total(); }
    uint64_t gamma() const { return gamma_; }
    const OrderedBasis& basis() const { return basis_; }
    const Matrix& generator() const { return gen_; }

    std::vector<uint64_t> encode(std::span<const uint64_t> message) const;

    /// Systematic form: the identity spread over the first k_i columns of
    /// each block. k_dist must satisfy 0 <= k_i <= r_i and sum to k.
    Matrix systematic_generator(const std::vector<int>& k_dist) const;

    /// (N-k) x N parity-check matrix H with G H^T = 0.
    Matrix dual_parity_check() const;

   private:
    LinRsCode(TowerPtr tw, int base, int ext, SumRankPartition part, int k, uint64_t gamma, OrderedBasis basis,
              Matrix gen)
        : tw_(std::move(tw)), base_(base), ext_(ext), part_(std::move(part)), k_(k), gamma_(gamma),
          basis_(std::move(basis)), gen_(std::move(gen)) {}

    TowerPtr tw_;
    int base_, ext_;
    SumRankPartition part_;
    int k_;
    uint64_t gamma_;
    OrderedBasis basis_;
    Matrix gen_;
};

/// k x N generator matrix for the given parameters; shared by LinRsCode
/// and NestedFamily so their row layouts agree.
Matrix linrs_generator(TowerPtr tower, int base, int ext, const SumRankPartition& part, int k, uint64_t gamma,
                       const OrderedBasis& basis);

/// The nested family G_0 subset G_1 subset ... over the full partition
/// (q-1) groups of size m; G_k is the first k rows. The full matrix is
/// computed once and cached; restrictions to live partitions are views
/// assembled on demand.
class NestedFamily {
   public:
    NestedFamily(TowerPtr tower, int base_field, int ext_field);

    int max_k() const { return static_cast<int>(full_.rows()); }
    int max_groups() const;
    int slot_width() const;  // m
    uint64_t gamma() const { return gamma_; }
    const OrderedBasis& basis() const { return basis_; }
    const Matrix& full() const { return full_; }

    /// First r_i columns of each live slot, first k rows.
    Matrix generator(int k, const SumRankPartition& part) const;
    /// Columns [c0, c1) of slot `group` (0-based), first k rows.
    Matrix block_columns(int k, int group, int c0, int c1) const;

   private:
    TowerPtr tw_;
    int base_, ext_;
    uint64_t gamma_;
    OrderedBasis basis_;
    Matrix full_;
};

/// Precomputed erasure decoder for one survivor configuration: solves
/// x (G A|_R) = y by selecting k independent columns left-to-right and
/// caching the inverse. Construction throws InsufficientRank when the
/// folded matrix has rank below k.
class ErasureDecoder {
   public:
    ErasureDecoder(const Matrix& outer_gen, const std::vector<Matrix>& folded_blocks);

    size_t folded_length() const { return len_; }
    std::vector<uint64_t> decode(std::span<const uint64_t> received) const;

   private:
    std::vector<int> sel_;
    Matrix inv_;
    size_t len_;
};

/// One-shot erasure decode per the decoder above.
std::vector<uint64_t> erasure_decode(const Matrix& outer_gen, const std::vector<Matrix>& folded_blocks,
                                     std::span<const uint64_t> received);

}  // namespace srlrc
