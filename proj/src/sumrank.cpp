#include "srlrc/sumrank.hpp"

#include <algorithm>
#include <cassert>

namespace srlrc {

namespace {

// Rank of the m x s matrix whose column j is the expansion of c[j], computed
// over the representation subfield without allocating a Matrix.
int group_rank(std::span<const uint64_t> c, const OrderedBasis& rep) {
    const Field& S = rep.tower()->field(rep.subfield());
    const int m = rep.size();
    const int s = static_cast<int>(c.size());
    // cols[j] = coordinates of c[j]
    std::vector<std::vector<uint64_t>> cols(static_cast<size_t>(s));
    for (int j = 0; j < s; ++j) cols[static_cast<size_t>(j)] = rep.expand(c[static_cast<size_t>(j)]);
    int rank = 0;
    std::vector<int> pivot_col;  // column holding pivot for row `pr`
    std::vector<int> pivot_row;
    for (int j = 0; j < s && rank < m; ++j) {
        auto& v = cols[static_cast<size_t>(j)];
        for (size_t b = 0; b < pivot_row.size(); ++b) {
            uint64_t coef = v[static_cast<size_t>(pivot_row[b])];
            if (!coef) continue;
            auto& pv = cols[static_cast<size_t>(pivot_col[b])];
            for (int r = 0; r < m; ++r) v[static_cast<size_t>(r)] ^= S.mul(coef, pv[static_cast<size_t>(r)]);
        }
        int pr = 0;
        while (pr < m && v[static_cast<size_t>(pr)] == 0) ++pr;
        if (pr == m) continue;
        uint64_t pinv = S.inv(v[static_cast<size_t>(pr)]);
        for (int r = 0; r < m; ++r) v[static_cast<size_t>(r)] = S.mul(pinv, v[static_cast<size_t>(r)]);
        for (size_t b = 0; b < pivot_row.size(); ++b) {
            auto& pv = cols[static_cast<size_t>(pivot_col[b])];
            uint64_t coef = pv[static_cast<size_t>(pr)];
            if (!coef) continue;
            for (int r = 0; r < m; ++r) pv[static_cast<size_t>(r)] ^= S.mul(coef, v[static_cast<size_t>(r)]);
        }
        pivot_col.push_back(j);
        pivot_row.push_back(pr);
        ++rank;
    }
    return rank;
}

uint64_t checked_message_count(const Matrix& gen, uint64_t cap) {
    const uint64_t q = gen.field().order();
    uint64_t count = 1;
    // Nonzero codeword count q^k - 1 must stay within cap.
    for (size_t i = 0; i < gen.rows(); ++i) {
        if (count > (cap + 1) / q) fail(Errc::TooLargeToEnumerate, "message space exceeds enumeration cap");
        count *= q;
    }
    return count;
}

}  // namespace

int sum_rank_weight(std::span<const uint64_t> c, const SumRankPartition& p, const OrderedBasis& rep) {
    if (static_cast<int>(c.size()) != p.total()) fail(Errc::LengthMismatch, "vector length != partition total");
    int w = 0;
    size_t off = 0;
    for (int ri : p.r) {
        w += group_rank(c.subspan(off, static_cast<size_t>(ri)), rep);
        off += static_cast<size_t>(ri);
    }
    return w;
}

void for_each_nonzero_codeword(const Matrix& gen, uint64_t cap,
                               const std::function<void(std::span<const uint64_t>)>& cb) {
    const uint64_t total = checked_message_count(gen, cap);
    const Field& F = gen.field();
    const uint64_t q = F.order();
    const size_t k = gen.rows(), ncols = gen.cols();
    std::vector<uint64_t> digits(k, 0), cw(ncols, 0);
    for (uint64_t step = 1; step < total; ++step) {
        // Odometer increment with incremental codeword update.
        for (size_t d = 0; d < k; ++d) {
            uint64_t old = digits[d];
            uint64_t nxt = old + 1 == q ? 0 : old + 1;
            digits[d] = nxt;
            uint64_t delta = old ^ nxt;
            for (size_t j = 0; j < ncols; ++j) cw[j] ^= F.mul(delta, gen.at(d, j));
            if (nxt != 0) break;
        }
        cb(cw);
    }
}

int min_sum_rank_distance(const Matrix& gen, const SumRankPartition& p, const OrderedBasis& rep, uint64_t cap) {
    if (static_cast<int>(gen.cols()) != p.total()) fail(Errc::LengthMismatch, "generator width != partition total");
    if (gen.rows() == 0) fail(Errc::TooLargeToEnumerate, "code must contain at least two words");
    int best = p.total() + 1;
    for_each_nonzero_codeword(gen, cap, [&](std::span<const uint64_t> cw) {
        int w = sum_rank_weight(cw, p, rep);
        if (w < best) best = w;
    });
    return best;
}

DistanceEstimate sum_rank_distance_estimate(const Matrix& gen, const SumRankPartition& p, const OrderedBasis& rep,
                                            uint64_t cap, uint64_t samples, uint64_t seed) {
    try {
        return {min_sum_rank_distance(gen, p, rep, cap), true};
    } catch (const Error& e) {
        if (e.code() != Errc::TooLargeToEnumerate) throw;
    }
    const Field& F = gen.field();
    std::mt19937_64 rng(seed);
    int best = p.total() + 1;
    std::vector<uint64_t> msg(gen.rows());
    for (uint64_t it = 0; it < samples; ++it) {
        bool nonzero = false;
        for (auto& v : msg) {
            v = rng() % F.order();
            nonzero |= v != 0;
        }
        if (!nonzero) continue;
        auto cw = gen.left_mul(msg);
        best = std::min(best, sum_rank_weight(cw, p, rep));
    }
    return {best, false};
}

int min_hamming_distance(const Matrix& gen, uint64_t cap) {
    if (gen.rows() == 0) fail(Errc::TooLargeToEnumerate, "code must contain at least two words");
    int best = static_cast<int>(gen.cols()) + 1;
    for_each_nonzero_codeword(gen, cap, [&](std::span<const uint64_t> cw) {
        int w = 0;
        for (uint64_t v : cw) w += v != 0;
        if (w < best) best = w;
    });
    return best;
}

int min_sum_rank_distance_of_list(const std::vector<std::vector<uint64_t>>& words, const SumRankPartition& p,
                                  const OrderedBasis& rep, uint64_t cap) {
    if (words.size() < 2) fail(Errc::TooLargeToEnumerate, "need at least two words");
    if (words.size() * words.size() > cap) fail(Errc::TooLargeToEnumerate, "pair count exceeds cap");
    int best = p.total() + 1;
    std::vector<uint64_t> diff(words[0].size());
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j) {
            for (size_t t = 0; t < diff.size(); ++t) diff[t] = words[i][t] ^ words[j][t];
            best = std::min(best, sum_rank_weight(diff, p, rep));
        }
    return best;
}

bool is_msrd(const Matrix& gen, const SumRankPartition& p, const OrderedBasis& rep, uint64_t cap) {
    return min_sum_rank_distance(gen, p, rep, cap) == p.total() - static_cast<int>(gen.rows()) + 1;
}

int hamming_min_after_recoding(const Matrix& gen, const SumRankPartition& p, const std::vector<Matrix>& blocks,
                               uint64_t cap) {
    if (static_cast<int>(blocks.size()) != p.groups()) fail(Errc::DimensionMismatch, "one block per group required");
    for (size_t i = 0; i < blocks.size(); ++i) {
        const Matrix& b = blocks[i];
        if (static_cast<int>(b.rows()) != p.r[i] || b.rows() != b.cols() || b.rank() != b.rows())
            fail(Errc::NotInvertibleBlock, "block " + std::to_string(i) + " is not invertible r_i x r_i");
    }
    std::vector<Matrix> embedded;
    embedded.reserve(blocks.size());
    for (const auto& b : blocks) embedded.push_back(b.embed_to(gen.field_id()));
    Matrix recoded = gen.mul(block_diag(embedded));
    return min_hamming_distance(recoded, cap);
}

std::vector<Matrix> all_invertible(TowerPtr tower, int field_id, int n) {
    const Field& F = tower->field(field_id);
    if (n > 3 || F.order() > 4) fail(Errc::TooLarge, "GL enumeration limited to n <= 3, q <= 4");
    std::vector<Matrix> out;
    const uint64_t q = F.order();
    std::vector<uint64_t> cells(static_cast<size_t>(n) * n, 0);
    while (true) {
        Matrix m(tower, field_id, static_cast<size_t>(n), static_cast<size_t>(n));
        for (int i = 0; i < n * n; ++i) m.at(static_cast<size_t>(i / n), static_cast<size_t>(i % n)) = cells[static_cast<size_t>(i)];
        if (m.rank() == static_cast<size_t>(n)) out.push_back(std::move(m));
        int d = 0;
        while (d < n * n && ++cells[static_cast<size_t>(d)] == q) cells[static_cast<size_t>(d++)] = 0;
        if (d == n * n) break;
    }
    return out;
}

int min_hamming_over_all_recodings(const Matrix& gen, const SumRankPartition& p, int base_field, uint64_t cap) {
    std::vector<std::vector<Matrix>> gls;
    gls.reserve(p.r.size());
    for (int ri : p.r) gls.push_back(all_invertible(gen.tower(), base_field, ri));
    std::vector<size_t> idx(p.r.size(), 0);
    int best = static_cast<int>(gen.cols()) + 1;
    while (true) {
        std::vector<Matrix> blocks;
        blocks.reserve(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) blocks.push_back(gls[i][idx[i]]);
        best = std::min(best, hamming_min_after_recoding(gen, p, blocks, cap));
        size_t d = 0;
        while (d < idx.size() && ++idx[d] == gls[d].size()) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    return best;
}

Matrix random_invertible(TowerPtr tower, int field_id, int n, std::mt19937_64& rng) {
    const Field& F = tower->field(field_id);
    while (true) {
        Matrix m(tower, field_id, static_cast<size_t>(n), static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(static_cast<size_t>(i), static_cast<size_t>(j)) = rng() % F.order();
        if (m.rank() == static_cast<size_t>(n)) return m;
    }
}

}  // namespace srlrc
