#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srlrc/linalg.hpp"

namespace srlrc {

/// One local group's linear code over its local field: full-rank generator
/// A (r x n), cached parity check, and an MDS flag when known. Immutable.
class LocalCode {
   public:
    /// (r+delta-1, r) MDS code over the given field. delta = 1 gives the
    /// identity, r = 1 gives replication, delta = 2 the single-parity XOR
    /// code; otherwise a systematic Cauchy generator needing q >= r+delta-1.
    static LocalCode mds(TowerPtr tower, int field_id, int r, int delta);

    /// Arbitrary full-rank generator. The MDS flag is set by exhaustive
    /// minor check when feasible, left unknown otherwise.
    static LocalCode general(Matrix generator, uint64_t check_cap = 100000);

    const Matrix& generator() const { return gen_; }
    const Matrix& parity_check() const { return pcheck_; }
    int r() const { return static_cast<int>(gen_.rows()); }
    int n() const { return static_cast<int>(gen_.cols()); }
    int field_id() const { return gen_.field_id(); }
    const TowerPtr& tower() const { return gen_.tower(); }
    std::optional<bool> mds_flag() const { return mds_; }
    /// n - r + 1 when MDS.
    int delta() const { return n() - r() + 1; }

    /// Exhaustive check that every r x r minor of the generator is
    /// invertible. Throws TooLarge beyond cap minors.
    bool is_mds(uint64_t cap = 1000000) const;

    /// Restore a group vector from its survivors. Symbols live over
    /// `symbol_field` (the local field or an extension of it); erased lists
    /// in-group positions. Throws UnrepairableLocally when the survivor
    /// columns drop below rank r.
    std::vector<uint64_t> repair(std::span<const uint64_t> symbols, std::span<const int> erased,
                                 int symbol_field) const;

    /// The outer vector u with u A = symbols (no erasures).
    std::vector<uint64_t> extract_outer(std::span<const uint64_t> symbols, int symbol_field) const;

    /// u A over the symbol field.
    std::vector<uint64_t> encode_group(std::span<const uint64_t> outer, int symbol_field) const;

   private:
    LocalCode(Matrix gen, Matrix pcheck, std::optional<bool> mds)
        : gen_(std::move(gen)), pcheck_(std::move(pcheck)), mds_(mds) {}

    std::vector<uint64_t> solve_outer(std::span<const uint64_t> symbols, std::span<const int> survivors,
                                      int symbol_field) const;

    Matrix gen_;
    Matrix pcheck_;
    std::optional<bool> mds_;
};

/// All r-subsets minor check on an arbitrary full-rank matrix.
bool all_maximal_minors_invertible(const Matrix& gen, uint64_t cap);

}  // namespace srlrc
