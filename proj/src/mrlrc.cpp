#include "srlrc/mrlrc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace srlrc {

namespace {

uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<uint64_t>(n - i) / static_cast<uint64_t>(i + 1);
    return r;
}

}  // namespace

std::vector<LeafSpec> CodeProfile::leaf_list() const {
    std::vector<LeafSpec> out;
    for (const auto& gr : groups)
        for (const auto& l : gr.leaves) out.push_back(l);
    return out;
}

std::vector<int> CodeProfile::leaf_offsets() const {
    std::vector<int> out;
    int off = 0;
    for (const auto& gr : groups)
        for (const auto& l : gr.leaves) {
            out.push_back(off);
            off += l.n;
        }
    return out;
}

SumRankPartition CodeProfile::outer_partition() const {
    SumRankPartition p;
    for (const auto& gr : groups) p.r.push_back(gr.r());
    return p;
}

void CodeProfile::validate() const {
    if (q_bits < 1) fail(Errc::ProfileInvalid, "base field exponent must be positive");
    if (m < 1) fail(Errc::ProfileInvalid, "m >= 1 required");
    if (groups.empty()) fail(Errc::ProfileInvalid, "at least one group required");
    const uint64_t q = 1ull << q_bits;
    if (static_cast<uint64_t>(g()) >= q) fail(Errc::ProfileInvalid, "q > g required");
    for (const auto& gr : groups) {
        if (gr.leaves.empty()) fail(Errc::ProfileInvalid, "group without leaves");
        if (gr.r() < 1 || gr.r() > m) fail(Errc::ProfileInvalid, "m >= r_i >= 1 required");
        for (const auto& l : gr.leaves) {
            if (l.r < 1) fail(Errc::ProfileInvalid, "leaf locality must be positive");
            if (l.n < l.r) fail(Errc::ProfileInvalid, "leaf length below its dimension");
            if (l.delta > 0 && l.n != l.r + l.delta - 1)
                fail(Errc::ProfileInvalid, "n_i = r_i + delta_i - 1 required for MDS leaves");
            if (l.q_bits < 1) fail(Errc::ProfileInvalid, "local field exponent must be positive");
            if (q_bits % l.q_bits != 0)
                fail(Errc::ProfileInvalid, "q must be a power of each local field size");
        }
    }
    if (k < 1 || k > N()) fail(Errc::ProfileInvalid, "1 <= k <= sum r_i required");
}

std::vector<int> CodeProfile::tower_exponents() const {
    std::vector<int> e{q_bits, q_bits * m};
    // Every divisor of q_bits is a legal local field; keep them all in the
    // tower so reconfigurations can introduce smaller local fields later.
    for (int d = 1; d <= q_bits; ++d)
        if (q_bits % d == 0) e.push_back(d);
    for (const auto& gr : groups)
        for (const auto& l : gr.leaves) e.push_back(l.q_bits);
    return e;
}

ErasurePattern ErasurePattern::of(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return ErasurePattern{std::move(idx)};
}

bool ErasurePattern::contains(int i) const { return std::binary_search(erased.begin(), erased.end(), i); }

std::vector<int> ErasurePattern::survivors(int n) const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!contains(i)) out.push_back(i);
    return out;
}

std::vector<std::vector<int>> ErasurePattern::leaf_survivors(const CodeProfile& p) const {
    auto leaves = p.leaf_list();
    auto offs = p.leaf_offsets();
    std::vector<std::vector<int>> out(leaves.size());
    for (size_t li = 0; li < leaves.size(); ++li)
        for (int t = 0; t < leaves[li].n; ++t)
            if (!contains(offs[li] + t)) out[li].push_back(t);
    return out;
}

std::vector<std::vector<int>> ErasurePattern::leaf_erasures(const CodeProfile& p) const {
    auto leaves = p.leaf_list();
    auto offs = p.leaf_offsets();
    std::vector<std::vector<int>> out(leaves.size());
    for (size_t li = 0; li < leaves.size(); ++li)
        for (int t = 0; t < leaves[li].n; ++t)
            if (contains(offs[li] + t)) out[li].push_back(t);
    return out;
}

GlobalCode GlobalCode::construct(const CodeProfile& profile, std::optional<std::vector<LocalCode>> locals,
                                 std::optional<std::vector<int>> systematic, TowerPtr tower) {
    profile.validate();
    GlobalCode c;
    c.profile_ = profile;
    c.tw_ = tower ? std::move(tower) : FieldTower::for_exponents(profile.tower_exponents());
    c.base_ = c.tw_->find(profile.q_bits);
    c.ext_ = c.tw_->find(profile.q_bits * profile.m);
    if (c.base_ < 0 || c.ext_ < 0) fail(Errc::ProfileInvalid, "tower does not contain base/global fields");

    c.outer_linrs_ = LinRsCode::make(c.tw_, c.base_, c.ext_, profile.outer_partition(), profile.k);
    c.outer_gen_ = c.outer_linrs_->generator();
    if (systematic) {
        c.outer_gen_ = c.outer_linrs_->systematic_generator(*systematic);
        c.sys_dist_ = std::move(systematic);
    }

    auto leaves = profile.leaf_list();
    if (locals) {
        if (locals->size() != leaves.size()) fail(Errc::ProfileInvalid, "one local code per leaf required");
        for (size_t i = 0; i < leaves.size(); ++i) {
            const LocalCode& lc = (*locals)[i];
            if (lc.r() != leaves[i].r || lc.n() != leaves[i].n)
                fail(Errc::ProfileInvalid, "local code shape does not match leaf " + std::to_string(i));
        }
        c.locals_ = std::move(*locals);
    } else {
        for (const auto& l : leaves) {
            if (l.delta <= 0) fail(Errc::ProfileInvalid, "leaf without delta needs an explicit local code");
            c.locals_.push_back(LocalCode::mds(c.tw_, c.tw_->find(l.q_bits), l.r, l.delta));
        }
    }

    std::vector<Matrix> embedded;
    embedded.reserve(c.locals_.size());
    for (const auto& lc : c.locals_) embedded.push_back(lc.generator().embed_to(c.ext_));
    c.global_gen_ = c.outer_gen_.mul(block_diag(embedded));
    return c;
}

GlobalCode GlobalCode::with_outer(TowerPtr tower, int base_field, int ext_field, Matrix outer_gen,
                                  CodeProfile profile, std::vector<LocalCode> locals) {
    GlobalCode c;
    c.tw_ = std::move(tower);
    c.base_ = base_field;
    c.ext_ = ext_field;
    c.profile_ = std::move(profile);
    auto leaves = c.profile_.leaf_list();
    if (locals.size() != leaves.size()) fail(Errc::ProfileInvalid, "one local code per leaf required");
    if (static_cast<int>(outer_gen.cols()) != c.profile_.N())
        fail(Errc::DimensionMismatch, "outer generator width != sum of localities");
    c.outer_gen_ = std::move(outer_gen);
    c.locals_ = std::move(locals);
    std::vector<Matrix> embedded;
    embedded.reserve(c.locals_.size());
    for (const auto& lc : c.locals_) embedded.push_back(lc.generator().embed_to(c.ext_));
    c.global_gen_ = c.outer_gen_.mul(block_diag(embedded));
    return c;
}

std::vector<uint64_t> GlobalCode::encode(std::span<const uint64_t> message) const {
    if (message.size() != static_cast<size_t>(k())) fail(Errc::LengthMismatch, "message length != k");
    return global_gen_.left_mul(message);
}

std::vector<Matrix> GlobalCode::folded_blocks(const ErasurePattern& pattern) const {
    auto surv = pattern.leaf_survivors(profile_);
    std::vector<Matrix> out;
    out.reserve(locals_.size());
    for (size_t li = 0; li < locals_.size(); ++li)
        out.push_back(locals_[li].generator().cols_subset(surv[li]));
    return out;
}

int GlobalCode::survivor_rank_sum(const ErasurePattern& pattern) const {
    int s = 0;
    for (const auto& b : folded_blocks(pattern)) s += static_cast<int>(b.rank());
    return s;
}

bool GlobalCode::correctable(const ErasurePattern& pattern) const { return survivor_rank_sum(pattern) >= k(); }

ErasureDecoder GlobalCode::decoder(const ErasurePattern& pattern) const {
    auto blocks = folded_blocks(pattern);
    // Blocks live over per-leaf fields; lift them to the common base first
    // so the decoder sees one field.
    for (auto& b : blocks) b = b.embed_to(base_);
    return ErasureDecoder(outer_gen_, blocks);
}

std::vector<uint64_t> GlobalCode::decode(std::span<const uint64_t> word, const ErasurePattern& pattern) const {
    if (word.size() != static_cast<size_t>(length())) fail(Errc::LengthMismatch, "word length != n");
    auto dec = decoder(pattern);
    auto surv = pattern.survivors(length());
    std::vector<uint64_t> rec(surv.size());
    for (size_t i = 0; i < surv.size(); ++i) rec[i] = word[static_cast<size_t>(surv[i])];
    return dec.decode(rec);
}

bool GlobalCode::verify_mr_exhaustive(uint64_t cap) const {
    auto leaves = profile_.leaf_list();
    uint64_t restrictions = 1;
    for (size_t li = 0; li < leaves.size(); ++li) {
        if (!locals_[li].mds_flag().value_or(false))
            fail(Errc::ProfileInvalid, "MR verification by restriction needs MDS leaves");
        int del = locals_[li].delta();
        uint64_t c = binom(leaves[li].n, del - 1);
        if (restrictions > cap / std::max<uint64_t>(c, 1)) fail(Errc::TooLarge, "restriction count exceeds cap");
        restrictions *= c;
    }
    uint64_t minors = binom(profile_.N(), k());
    if (minors == 0 || restrictions > cap / std::max<uint64_t>(minors, 1))
        fail(Errc::TooLarge, "restriction x minor count exceeds cap");

    auto offs = profile_.leaf_offsets();
    // Odometer over per-leaf erased subsets of size delta_i - 1.
    std::vector<std::vector<int>> choice(leaves.size());
    for (size_t li = 0; li < leaves.size(); ++li) {
        int e = locals_[li].delta() - 1;
        choice[li].resize(static_cast<size_t>(e));
        for (int t = 0; t < e; ++t) choice[li][static_cast<size_t>(t)] = t;
    }
    auto advance_leaf = [&](size_t li) {
        auto& idx = choice[li];
        int n = leaves[li].n;
        int e = static_cast<int>(idx.size());
        int i = e - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - e + i) --i;
        if (i < 0) {
            for (int t = 0; t < e; ++t) idx[static_cast<size_t>(t)] = t;
            return false;  // wrapped
        }
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < e; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        return true;
    };

    while (true) {
        std::vector<int> delta_cols;  // surviving columns of the restriction
        for (size_t li = 0; li < leaves.size(); ++li) {
            std::vector<char> gone(static_cast<size_t>(leaves[li].n), 0);
            for (int t : choice[li]) gone[static_cast<size_t>(t)] = 1;
            for (int t = 0; t < leaves[li].n; ++t)
                if (!gone[static_cast<size_t>(t)]) delta_cols.push_back(offs[li] + t);
        }
        Matrix restricted = global_gen_.cols_subset(delta_cols);
        if (!all_maximal_minors_invertible(restricted, cap)) return false;
        // Advance the odometer of odometers.
        size_t li = 0;
        while (li < leaves.size() && !advance_leaf(li)) ++li;
        if (li == leaves.size()) break;
    }
    return true;
}

int e_max_bruteforce(const std::vector<LocalCode>& locals, int k, uint64_t cap) {
    int n = 0;
    for (const auto& lc : locals) n += lc.n();
    if (n >= 63 || (1ull << n) > cap) fail(Errc::TooLarge, "2^n exceeds brute-force cap");
    std::vector<int> worst(static_cast<size_t>(n) + 1, 1 << 30);
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        int e = std::popcount(mask);
        int ranksum = 0;
        int off = 0;
        for (const auto& lc : locals) {
            std::vector<int> surv;
            for (int t = 0; t < lc.n(); ++t)
                if (!((mask >> (off + t)) & 1)) surv.push_back(t);
            ranksum += static_cast<int>(lc.generator().cols_subset(surv).rank());
            off += lc.n();
        }
        worst[static_cast<size_t>(e)] = std::min(worst[static_cast<size_t>(e)], ranksum);
    }
    int e = 0;
    for (int t = 1; t <= n; ++t)
        if (worst[static_cast<size_t>(t)] >= k) e = t;
    return e;
}

int e_max_closed_form(const CodeProfile& profile, int k) {
    auto leaves = profile.leaf_list();
    for (size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].delta <= 0) fail(Errc::PreconditionNotSorted, "closed form requires MDS leaves");
        if (i + 1 < leaves.size() &&
            (leaves[i].r > leaves[i + 1].r || leaves[i].delta < leaves[i + 1].delta))
            fail(Errc::PreconditionNotSorted, "requires r ascending and delta descending");
    }
    if (k < 1 || k > profile.N()) fail(Errc::KOutOfRange, "k out of range");
    int acc = 0;
    size_t ell = 0;
    while (acc + leaves[ell].r < k) {
        acc += leaves[ell].r;
        ++ell;
    }
    int deltasum = 0;
    for (size_t i = 0; i < ell; ++i) deltasum += leaves[i].delta - 1;
    return profile.n() - k - deltasum;
}

int global_distance(const GlobalCode& code) {
    try {
        return e_max_closed_form(code.profile(), code.k()) + 1;
    } catch (const Error& e) {
        if (e.code() != Errc::PreconditionNotSorted) throw;
    }
    return e_max_bruteforce(code.locals(), code.k()) + 1;
}

PlanTable plan_field_size(int g, int r, int delta) {
    if (g < 1 || r < 1 || delta < 1) fail(Errc::ProfileInvalid, "g, r, delta >= 1 required");
    PlanTable table;
    long double best = 0;
    table.argmin_x = 1;
    for (int x = 1; x <= g; ++x) {
        PlanEntry e;
        e.x = x;
        e.base = std::max<long long>(x + 1, r + delta - 1);
        e.exponent = (static_cast<long long>(g) * r + x - 1) / x;
        e.log2_size = static_cast<long double>(e.exponent) * std::log2l(static_cast<long double>(e.base));
        if ((e.base & (e.base - 1)) == 0) {
            long long b2 = 0;
            for (long long v = e.base; v > 1; v >>= 1) ++b2;
            e.pow2_exponent = b2 * e.exponent;
        }
        table.entries.push_back(e);
        if (x == 1 || e.log2_size <= best) {
            best = e.log2_size;
            table.argmin_x = x;
        }
    }
    return table;
}

}  // namespace srlrc
