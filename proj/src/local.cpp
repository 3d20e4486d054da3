#include "srlrc/local.hpp"

#include <cassert>

namespace srlrc {

namespace {

uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<uint64_t>(n - i) / static_cast<uint64_t>(i + 1);
    return r;
}

}  // namespace

bool all_maximal_minors_invertible(const Matrix& gen, uint64_t cap) {
    const int r = static_cast<int>(gen.rows());
    const int n = static_cast<int>(gen.cols());
    if (binom(n, r) > cap) fail(Errc::TooLarge, "too many minors to enumerate");
    std::vector<int> idx(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        if (gen.cols_subset(idx).rank() != static_cast<size_t>(r)) return false;
        int i = r - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return true;
}

LocalCode LocalCode::mds(TowerPtr tower, int field_id, int r, int delta) {
    const Field& F = tower->field(field_id);
    if (r < 1 || delta < 1) fail(Errc::ProfileInvalid, "r >= 1 and delta >= 1 required");
    const int n = r + delta - 1;
    Matrix gen(tower, field_id, static_cast<size_t>(r), static_cast<size_t>(n));
    if (delta == 1) {
        for (int i = 0; i < r; ++i) gen.at(static_cast<size_t>(i), static_cast<size_t>(i)) = 1;
    } else if (r == 1) {
        for (int j = 0; j < n; ++j) gen.at(0, static_cast<size_t>(j)) = 1;
    } else if (delta == 2) {
        // Single-parity XOR code, valid over any field.
        for (int i = 0; i < r; ++i) {
            gen.at(static_cast<size_t>(i), static_cast<size_t>(i)) = 1;
            gen.at(static_cast<size_t>(i), static_cast<size_t>(n - 1)) = 1;
        }
    } else {
        if (static_cast<uint64_t>(n) > F.order())
            fail(Errc::FieldTooSmall, "q >= r+delta-1 required for an MDS local code");
        // Systematic Cauchy generator (I | B), B[i][j] = 1/(x_i + y_j) with
        // x_i = i, y_j = r + j; every square submatrix of B is invertible.
        for (int i = 0; i < r; ++i) {
            gen.at(static_cast<size_t>(i), static_cast<size_t>(i)) = 1;
            for (int j = 0; j < delta - 1; ++j)
                gen.at(static_cast<size_t>(i), static_cast<size_t>(r + j)) =
                    F.inv(static_cast<uint64_t>(i) ^ static_cast<uint64_t>(r + j));
        }
    }
    Matrix pcheck = gen.nullspace();
    std::optional<bool> flag = true;
    if (binom(n, r) <= 100000 && !all_maximal_minors_invertible(gen, 100000))
        fail(Errc::Internal, "constructed local code failed the MDS minor check");
    return LocalCode(std::move(gen), std::move(pcheck), flag);
}

LocalCode LocalCode::general(Matrix generator, uint64_t check_cap) {
    if (generator.rank() != generator.rows()) fail(Errc::NotFullRank, "local generator must have full row rank");
    Matrix pcheck = generator.nullspace();
    std::optional<bool> flag;
    if (binom(static_cast<int>(generator.cols()), static_cast<int>(generator.rows())) <= check_cap)
        flag = all_maximal_minors_invertible(generator, check_cap);
    return LocalCode(std::move(generator), std::move(pcheck), flag);
}

bool LocalCode::is_mds(uint64_t cap) const { return all_maximal_minors_invertible(gen_, cap); }

std::vector<uint64_t> LocalCode::solve_outer(std::span<const uint64_t> symbols, std::span<const int> survivors,
                                             int symbol_field) const {
    Matrix a = gen_.cols_subset(survivors).embed_to(symbol_field);
    if (a.rank() != gen_.rows())
        fail(Errc::UnrepairableLocally, "survivor columns have rank below r; escalate to global decode");
    std::vector<uint64_t> ys(survivors.size());
    for (size_t i = 0; i < survivors.size(); ++i) ys[i] = symbols[static_cast<size_t>(survivors[i])];
    auto u = a.transpose().solve(ys);
    if (!u) fail(Errc::Inconsistent, "group symbols are not a local codeword");
    return *u;
}

std::vector<uint64_t> LocalCode::repair(std::span<const uint64_t> symbols, std::span<const int> erased,
                                        int symbol_field) const {
    if (symbols.size() != static_cast<size_t>(n())) fail(Errc::LengthMismatch, "group length mismatch");
    std::vector<char> gone(static_cast<size_t>(n()), 0);
    for (int e : erased) {
        if (e < 0 || e >= n()) fail(Errc::LengthMismatch, "erased index out of group");
        gone[static_cast<size_t>(e)] = 1;
    }
    std::vector<int> survivors;
    for (int i = 0; i < n(); ++i)
        if (!gone[static_cast<size_t>(i)]) survivors.push_back(i);
    auto u = solve_outer(symbols, survivors, symbol_field);
    return encode_group(u, symbol_field);
}

std::vector<uint64_t> LocalCode::extract_outer(std::span<const uint64_t> symbols, int symbol_field) const {
    if (symbols.size() != static_cast<size_t>(n())) fail(Errc::LengthMismatch, "group length mismatch");
    std::vector<int> survivors(static_cast<size_t>(n()));
    for (int i = 0; i < n(); ++i) survivors[static_cast<size_t>(i)] = i;
    return solve_outer(symbols, survivors, symbol_field);
}

std::vector<uint64_t> LocalCode::encode_group(std::span<const uint64_t> outer, int symbol_field) const {
    if (outer.size() != static_cast<size_t>(r())) fail(Errc::LengthMismatch, "outer vector length != r");
    return gen_.embed_to(symbol_field).left_mul(outer);
}

}  // namespace srlrc
