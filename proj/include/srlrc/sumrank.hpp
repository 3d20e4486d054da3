#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "srlrc/linalg.hpp"

namespace srlrc {

/// Sum-rank length partition N = r_1 + ... + r_g.
struct SumRankPartition {
    std::vector<int> r;

    int groups() const { return static_cast<int>(r.size()); }
    int total() const {
        int n = 0;
        for (int x : r) n += x;
        return n;
    }
};

inline constexpr uint64_t kEnumCap = 1ull << 20;

/// Sum of the ranks of the per-group matrix representations of c over the
/// base field of `rep`.
int sum_rank_weight(std::span<const uint64_t> c, const SumRankPartition& p, const OrderedBasis& rep);

/// Enumerates every nonzero codeword of the row space of gen (messages over
/// the generator's field) and feeds it to cb. Throws TooLargeToEnumerate
/// when the message count exceeds cap.
void for_each_nonzero_codeword(const Matrix& gen, uint64_t cap,
                               const std::function<void(std::span<const uint64_t>)>& cb);

/// Brute-force minimum sum-rank distance of a linear code.
int min_sum_rank_distance(const Matrix& gen, const SumRankPartition& p, const OrderedBasis& rep,
                          uint64_t cap = kEnumCap);

struct DistanceEstimate {
    int value;
    bool exact;  // false: sampled, value is only an upper bound on the minimum
};

/// Exact within cap, Monte-Carlo beyond it.
DistanceEstimate sum_rank_distance_estimate(const Matrix& gen, const SumRankPartition& p,
                                            const OrderedBasis& rep, uint64_t cap = kEnumCap,
                                            uint64_t samples = 10000, uint64_t seed = 1);

/// Brute-force minimum Hamming distance of a linear code.
int min_hamming_distance(const Matrix& gen, uint64_t cap = kEnumCap);

/// Minimum sum-rank distance over explicit codeword lists (pairwise; covers
/// non-linear sets).
int min_sum_rank_distance_of_list(const std::vector<std::vector<uint64_t>>& words, const SumRankPartition& p,
                                  const OrderedBasis& rep, uint64_t cap = kEnumCap);

/// d_SR(C) == N - k + 1, by brute force.
bool is_msrd(const Matrix& gen, const SumRankPartition& p, const OrderedBasis& rep, uint64_t cap = kEnumCap);

/// d_H(C A) for A = diag(blocks), blocks over the representation base field
/// (each r_i x r_i invertible).
int hamming_min_after_recoding(const Matrix& gen, const SumRankPartition& p, const std::vector<Matrix>& blocks,
                               uint64_t cap = kEnumCap);

/// All invertible n x n matrices over the given field. Guarded: only for
/// n <= 3 and field order <= 4.
std::vector<Matrix> all_invertible(TowerPtr tower, int field_id, int n);

/// Exhaustive min over every invertible block-diagonal recoding; the
/// minimum lands exactly on d_SR. Only for tiny instances; see the
/// all_invertible guard.
int min_hamming_over_all_recodings(const Matrix& gen, const SumRankPartition& p, int base_field,
                                   uint64_t cap = kEnumCap);

/// Uniformly random invertible matrix (rejection sampling).
Matrix random_invertible(TowerPtr tower, int field_id, int n, std::mt19937_64& rng);

}  // namespace srlrc
