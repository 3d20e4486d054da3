#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "srlrc/mrlrc.hpp"

namespace srlrc {

/// T with A T = B for full-rank generators A, B of equal dimension, both
/// embedded into the given common field: T = C^T B where A C^T = I.
Matrix recoding_matrix(const Matrix& a, const Matrix& b);
Matrix recoding_matrix(const LocalCode& src, const LocalCode& dst, TowerPtr tower, int common_field);

/// Two-layer composition: each inner global code acts as the local code of
/// one outer slot (inner dimension = slot width).
GlobalCode make_multilayer(const LinRsCode& outer, const std::vector<GlobalCode>& inner);

/// Mutable reconfiguration state: the current global code plus the stored
/// stripes (one outer codeword image per block of the file). The nested
/// generator family is pinned at creation (gamma, basis, q, m fixed);
/// every reconfiguration keeps stored stripes inside the current code.
/// Single-writer: operations are serialized by the caller.
class DynamicState {
   public:
    explicit DynamicState(const CodeProfile& profile,
                          std::optional<std::vector<LocalCode>> locals = std::nullopt);

    const GlobalCode& code() const { return code_; }
    const NestedFamily& nested() const { return nested_; }
    size_t stripe_count() const { return stripes_.size(); }
    const std::vector<std::vector<uint64_t>>& stripes() const { return stripes_; }

    void set_stripes(std::vector<std::vector<uint64_t>> stripes);
    void encode_stripe(std::span<const uint64_t> message);
    std::vector<uint64_t> decode_stripe(size_t idx) const;

    /// Recode one top-level group to another local code of the same
    /// dimension; only that group's symbols change.
    void recode_group(int group, const LocalCode& target);

    /// Split a top-level group into a Cartesian product of sub-codes whose
    /// dimensions sum to the slot width.
    void partition_group(int group, const std::vector<LocalCode>& subs);

    /// Change a group's locality r_i -> new_r via the nested family; the
    /// group must currently consist of a single leaf. A replacement local
    /// code may be supplied; by default an MDS code with the leaf's delta is
    /// built.
    void change_locality(int group, int new_r, std::optional<LocalCode> new_local = std::nullopt);

    /// k -> new_k with new data appended (one row of new_k - k symbols per
    /// stripe) or the message tail dropped.
    void grow_file(int new_k, const std::vector<std::vector<uint64_t>>& new_data);
    void shrink_file(int new_k);

    /// Append groups (r_i, local code) or drop trailing groups.
    void add_groups(const std::vector<std::pair<int, LocalCode>>& specs);
    void remove_groups(int new_group_count);

   private:
    Matrix group_composite(int group) const;  // block diag of the group's leaf generators over the base field
    std::pair<int, int> group_span(int group) const;  // [offset, offset+width) in shard coordinates

    GlobalCode code_;
    NestedFamily nested_;
    std::vector<std::vector<uint64_t>> stripes_;
};

}  // namespace srlrc
