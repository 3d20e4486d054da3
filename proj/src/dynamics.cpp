#include "srlrc/dynamics.hpp"

#include <cassert>

namespace srlrc {

Matrix recoding_matrix(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.field_id() != b.field_id())
        fail(Errc::DimensionMismatch, "recoding needs equal dimensions over one field");
    const size_t r = a.rows();
    // C^T with A C^T = I, column by column.
    Matrix ct(a.tower(), a.field_id(), a.cols(), r);
    std::vector<uint64_t> e(r, 0);
    for (size_t j = 0; j < r; ++j) {
        e[j] = 1;
        auto x = a.solve(e);
        if (!x) fail(Errc::NotFullRank, "generator rows are dependent");
        for (size_t i = 0; i < a.cols(); ++i) ct.at(i, j) = (*x)[i];
        e[j] = 0;
    }
    Matrix t = ct.mul(b);
    assert(a.mul(t) == b);
    return t;
}

Matrix recoding_matrix(const LocalCode& src, const LocalCode& dst, TowerPtr tower, int common_field) {
    (void)tower;
    return recoding_matrix(src.generator().embed_to(common_field), dst.generator().embed_to(common_field));
}

GlobalCode make_multilayer(const LinRsCode& outer, const std::vector<GlobalCode>& inner) {
    const auto& part = outer.partition();
    if (static_cast<int>(inner.size()) != part.groups())
        fail(Errc::DimensionMismatch, "one inner code per outer slot required");
    CodeProfile profile;
    profile.q_bits = outer.tower()->field(outer.base_field()).bits();
    profile.m = outer.tower()->field(outer.ext_field()).bits() / profile.q_bits;
    profile.k = outer.k();
    std::vector<LocalCode> locals;
    for (int i = 0; i < part.groups(); ++i) {
        const GlobalCode& in = inner[static_cast<size_t>(i)];
        if (in.k() != part.r[static_cast<size_t>(i)])
            fail(Errc::DimensionMismatch, "inner code dimension must equal the slot width");
        if (in.tower() != outer.tower())
            fail(Errc::DimensionMismatch, "inner codes must share the outer tower");
        GroupSpec gs;
        gs.leaves.push_back(LeafSpec{in.k(), 0, in.length(),
                                     in.tower()->field(in.ext_field()).bits()});
        profile.groups.push_back(gs);
        locals.push_back(LocalCode::general(in.global_generator()));
    }
    return GlobalCode::with_outer(outer.tower(), outer.base_field(), outer.ext_field(), outer.generator(),
                                  std::move(profile), std::move(locals));
}

DynamicState::DynamicState(const CodeProfile& profile, std::optional<std::vector<LocalCode>> locals)
    : code_(GlobalCode::construct(profile, std::move(locals))),
      nested_(code_.tower(), code_.base_field(), code_.ext_field()) {
    // The plain outer generator must coincide with its nested-family
    // restriction; all later updates rely on that.
    if (!(code_.outer_generator() == nested_.generator(profile.k, profile.outer_partition())))
        fail(Errc::Internal, "outer generator does not match the nested family");
}

void DynamicState::set_stripes(std::vector<std::vector<uint64_t>> stripes) {
    for (const auto& s : stripes)
        if (s.size() != static_cast<size_t>(code_.length())) fail(Errc::LengthMismatch, "stripe length != n");
    stripes_ = std::move(stripes);
}

void DynamicState::encode_stripe(std::span<const uint64_t> message) { stripes_.push_back(code_.encode(message)); }

std::vector<uint64_t> DynamicState::decode_stripe(size_t idx) const {
    return code_.decode(stripes_[idx], ErasurePattern{});
}

std::pair<int, int> DynamicState::group_span(int group) const {
    const auto& groups = code_.profile().groups;
    int off = 0;
    for (int i = 0; i < group; ++i) off += groups[static_cast<size_t>(i)].n();
    return {off, groups[static_cast<size_t>(group)].n()};
}

Matrix DynamicState::group_composite(int group) const {
    const auto& profile = code_.profile();
    int leaf0 = 0;
    for (int i = 0; i < group; ++i) leaf0 += static_cast<int>(profile.groups[static_cast<size_t>(i)].leaves.size());
    std::vector<Matrix> blocks;
    for (size_t j = 0; j < profile.groups[static_cast<size_t>(group)].leaves.size(); ++j)
        blocks.push_back(code_.locals()[static_cast<size_t>(leaf0) + j].generator().embed_to(code_.base_field()));
    return block_diag(blocks);
}

void DynamicState::recode_group(int group, const LocalCode& target) {
    partition_group(group, {target});
}

void DynamicState::partition_group(int group, const std::vector<LocalCode>& subs) {
    CodeProfile profile = code_.profile();
    if (group < 0 || group >= profile.g()) fail(Errc::GroupCountOutOfRange, "group index out of range");
    if (subs.empty()) fail(Errc::BadPartitionSum, "at least one sub-code required");
    int rsum = 0;
    for (const auto& s : subs) rsum += s.r();
    if (rsum != profile.groups[static_cast<size_t>(group)].r())
        fail(Errc::BadPartitionSum, "sub-localities must sum to the group locality");

    Matrix cur = group_composite(group);
    std::vector<Matrix> target_blocks;
    for (const auto& s : subs) target_blocks.push_back(s.generator().embed_to(code_.base_field()));
    Matrix tgt = block_diag(target_blocks);
    Matrix t = recoding_matrix(cur, tgt).embed_to(code_.ext_field());

    auto [off, width] = group_span(group);
    for (auto& stripe : stripes_) {
        std::vector<uint64_t> slice(stripe.begin() + off, stripe.begin() + off + width);
        auto recoded = t.left_mul(slice);
        stripe.erase(stripe.begin() + off, stripe.begin() + off + width);
        stripe.insert(stripe.begin() + off, recoded.begin(), recoded.end());
    }

    // Leaf bookkeeping.
    int leaf0 = 0;
    for (int i = 0; i < group; ++i) leaf0 += static_cast<int>(profile.groups[static_cast<size_t>(i)].leaves.size());
    int old_leaves = static_cast<int>(profile.groups[static_cast<size_t>(group)].leaves.size());
    std::vector<LeafSpec> new_leaves;
    for (const auto& s : subs) {
        bool mds = s.mds_flag().value_or(false);
        new_leaves.push_back(LeafSpec{s.r(), mds ? s.delta() : 0, s.n(),
                                      s.tower()->field(s.field_id()).bits()});
    }
    profile.groups[static_cast<size_t>(group)].leaves = new_leaves;
    std::vector<LocalCode> locals = code_.locals();
    locals.erase(locals.begin() + leaf0, locals.begin() + leaf0 + old_leaves);
    locals.insert(locals.begin() + leaf0, subs.begin(), subs.end());

    Matrix outer = code_.outer_generator();
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(outer),
                                   std::move(profile), std::move(locals));
}

void DynamicState::change_locality(int group, int new_r, std::optional<LocalCode> new_local) {
    CodeProfile profile = code_.profile();
    if (group < 0 || group >= profile.g()) fail(Errc::GroupCountOutOfRange, "group index out of range");
    auto& gs = profile.groups[static_cast<size_t>(group)];
    if (gs.leaves.size() != 1)
        fail(Errc::ProfileInvalid, "change_locality requires an unpartitioned group; merge first");
    const int old_r = gs.leaves[0].r;
    if (new_r < 1 || new_r > profile.m) fail(Errc::LocalityOutOfRange, "1 <= r_i <= m required");
    if (new_r == old_r && !new_local) return;
    if (new_r < old_r && profile.k > profile.N() - old_r + new_r)
        fail(Errc::WouldViolateKBound, "shrinking would push k above sum r_i");

    int leaf0 = 0;
    for (int i = 0; i < group; ++i) leaf0 += static_cast<int>(profile.groups[static_cast<size_t>(i)].leaves.size());
    const LocalCode& old_code = code_.locals()[static_cast<size_t>(leaf0)];
    if (!new_local && gs.leaves[0].delta <= 0)
        fail(Errc::ProfileInvalid, "non-MDS leaf needs an explicit replacement local code");
    LocalCode next = new_local
                         ? std::move(*new_local)
                         : LocalCode::mds(code_.tower(), code_.tower()->find(gs.leaves[0].q_bits), new_r,
                                          gs.leaves[0].delta);
    if (next.r() != new_r) fail(Errc::DimensionMismatch, "replacement local code dimension != new locality");

    Matrix d;  // appended outer components: message times these nested columns
    if (new_r > old_r) d = nested_.block_columns(profile.k, group, old_r, new_r);

    auto [off, width] = group_span(group);
    const int ext = code_.ext_field();
    for (auto& stripe : stripes_) {
        std::vector<uint64_t> slice(stripe.begin() + off, stripe.begin() + off + width);
        auto u = old_code.extract_outer(slice, ext);
        if (new_r < old_r) {
            u.resize(static_cast<size_t>(new_r));
        } else if (new_r > old_r) {
            auto f = code_.decode(stripe, ErasurePattern{});
            auto extra = d.left_mul(f);
            u.insert(u.end(), extra.begin(), extra.end());
        }
        auto encoded = next.encode_group(u, ext);
        stripe.erase(stripe.begin() + off, stripe.begin() + off + width);
        stripe.insert(stripe.begin() + off, encoded.begin(), encoded.end());
    }

    bool mds = next.mds_flag().value_or(false);
    gs.leaves[0] = LeafSpec{new_r, mds ? next.delta() : 0, next.n(),
                            next.tower()->field(next.field_id()).bits()};
    std::vector<LocalCode> locals = code_.locals();
    locals[static_cast<size_t>(leaf0)] = std::move(next);
    Matrix outer = nested_.generator(profile.k, profile.outer_partition());
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(outer),
                                   std::move(profile), std::move(locals));
}

void DynamicState::grow_file(int new_k, const std::vector<std::vector<uint64_t>>& new_data) {
    CodeProfile profile = code_.profile();
    if (new_k <= profile.k || new_k > profile.N()) fail(Errc::KOutOfRange, "need k < new_k <= sum r_i");
    if (new_data.size() != stripes_.size()) fail(Errc::LengthMismatch, "one data row per stripe required");
    const int added = new_k - profile.k;
    for (const auto& row : new_data)
        if (row.size() != static_cast<size_t>(added)) fail(Errc::LengthMismatch, "data row length != new_k - k");

    Matrix gnew = nested_.generator(new_k, profile.outer_partition());
    std::vector<int> tail(static_cast<size_t>(added));
    for (int i = 0; i < added; ++i) tail[static_cast<size_t>(i)] = profile.k + i;
    Matrix e = gnew.rows_subset(tail);
    std::vector<Matrix> embedded;
    for (const auto& lc : code_.locals()) embedded.push_back(lc.generator().embed_to(code_.ext_field()));
    Matrix add = e.mul(block_diag(embedded));  // (new_k - k) x n
    for (size_t s = 0; s < stripes_.size(); ++s) {
        auto deltav = add.left_mul(new_data[s]);
        for (size_t j = 0; j < stripes_[s].size(); ++j) stripes_[s][j] ^= deltav[j];
    }
    profile.k = new_k;
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(gnew),
                                   std::move(profile), code_.locals());
}

void DynamicState::shrink_file(int new_k) {
    CodeProfile profile = code_.profile();
    if (new_k < 1 || new_k >= profile.k) fail(Errc::KOutOfRange, "need 1 <= new_k < k");
    const int dropped = profile.k - new_k;
    std::vector<int> tail(static_cast<size_t>(dropped));
    for (int i = 0; i < dropped; ++i) tail[static_cast<size_t>(i)] = new_k + i;
    Matrix e = code_.outer_generator().rows_subset(tail);
    std::vector<Matrix> embedded;
    for (const auto& lc : code_.locals()) embedded.push_back(lc.generator().embed_to(code_.ext_field()));
    Matrix sub = e.mul(block_diag(embedded));
    for (auto& stripe : stripes_) {
        auto f = code_.decode(stripe, ErasurePattern{});
        std::vector<uint64_t> dtail(f.begin() + new_k, f.end());
        auto deltav = sub.left_mul(dtail);
        for (size_t j = 0; j < stripe.size(); ++j) stripe[j] ^= deltav[j];
    }
    profile.k = new_k;
    Matrix outer = nested_.generator(new_k, profile.outer_partition());
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(outer),
                                   std::move(profile), code_.locals());
}

void DynamicState::add_groups(const std::vector<std::pair<int, LocalCode>>& specs) {
    CodeProfile profile = code_.profile();
    const int new_g = profile.g() + static_cast<int>(specs.size());
    if (specs.empty()) return;
    if (new_g > nested_.max_groups()) fail(Errc::GroupCountOutOfRange, "g <= q-1 required");
    for (const auto& [r, lc] : specs) {
        if (r < 1 || r > profile.m) fail(Errc::LocalityOutOfRange, "1 <= r_i <= m required");
        if (lc.r() != r) fail(Errc::DimensionMismatch, "local code dimension != declared locality");
    }

    // Per-stripe messages under the current code, before any mutation.
    std::vector<std::vector<uint64_t>> msgs(stripes_.size());
    for (size_t s = 0; s < stripes_.size(); ++s) msgs[s] = code_.decode(stripes_[s], ErasurePattern{});

    std::vector<LocalCode> locals = code_.locals();
    int slot = profile.g();
    for (const auto& [r, lc] : specs) {
        Matrix f = nested_.block_columns(profile.k, slot, 0, r);
        for (size_t s = 0; s < stripes_.size(); ++s) {
            auto u = f.left_mul(msgs[s]);
            auto block = lc.encode_group(u, code_.ext_field());
            stripes_[s].insert(stripes_[s].end(), block.begin(), block.end());
        }
        bool mds = lc.mds_flag().value_or(false);
        GroupSpec gs;
        gs.leaves.push_back(LeafSpec{r, mds ? lc.delta() : 0, lc.n(),
                                     lc.tower()->field(lc.field_id()).bits()});
        profile.groups.push_back(gs);
        locals.push_back(lc);
        ++slot;
    }
    Matrix outer = nested_.generator(profile.k, profile.outer_partition());
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(outer),
                                   std::move(profile), std::move(locals));
}

void DynamicState::remove_groups(int new_group_count) {
    CodeProfile profile = code_.profile();
    if (new_group_count < 1 || new_group_count >= profile.g())
        fail(Errc::GroupCountOutOfRange, "need 1 <= g' < g");
    int keep_r = 0, keep_n = 0, keep_leaves = 0;
    for (int i = 0; i < new_group_count; ++i) {
        keep_r += profile.groups[static_cast<size_t>(i)].r();
        keep_n += profile.groups[static_cast<size_t>(i)].n();
        keep_leaves += static_cast<int>(profile.groups[static_cast<size_t>(i)].leaves.size());
    }
    if (profile.k > keep_r) fail(Errc::WouldViolateKBound, "k exceeds remaining sum r_i");

    for (auto& stripe : stripes_) stripe.resize(static_cast<size_t>(keep_n));
    profile.groups.resize(static_cast<size_t>(new_group_count));
    std::vector<LocalCode> locals = code_.locals();
    locals.erase(locals.begin() + keep_leaves, locals.end());
    Matrix outer = nested_.generator(profile.k, profile.outer_partition());
    code_ = GlobalCode::with_outer(code_.tower(), code_.base_field(), code_.ext_field(), std::move(outer),
                                   std::move(profile), std::move(locals));
}

}  // namespace srlrc
