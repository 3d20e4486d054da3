#include <random>

#include "doctest.h"
#include "srlrc/linrs.hpp"

using namespace srlrc;

TEST_CASE("linear operator evaluation") {
    auto t = FieldTower::build({1, 2});
    const Field& F4 = t->field(1);
    std::mt19937_64 rng(3);

    // D_a^0(b) = b.
    for (uint64_t b = 0; b < 4; ++b) CHECK(operator_eval(*t, 0, 1, 2, 0, b) == b);

    // F_4/F_2: D_w(w) = sigma(w) N_1(w) = w^2 * w = 1.
    CHECK(operator_eval(*t, 0, 1, 2, 1, 2) == 1);

    // Composition: D_a^{i+1} = D_a(D_a^i(b)).
    for (int it = 0; it < 100; ++it) {
        uint64_t a = rng() % 4, b = rng() % 4;
        for (int i = 0; i < 3; ++i) {
            uint64_t lhs = operator_eval(*t, 0, 1, a, i + 1, b);
            uint64_t rhs = operator_eval(*t, 0, 1, a, 1, operator_eval(*t, 0, 1, a, i, b));
            CHECK(lhs == rhs);
        }
    }

    // F_q-linearity in b.
    for (int it = 0; it < 100; ++it) {
        uint64_t a = rng() % 4, b1 = rng() % 4, b2 = rng() % 4;
        CHECK(operator_eval(*t, 0, 1, a, 2, F4.add(b1, b2)) ==
              F4.add(operator_eval(*t, 0, 1, a, 2, b1), operator_eval(*t, 0, 1, a, 2, b2)));
    }

    // m = 1 (sigma = id): D_a^i(b) = b a^i, monomial evaluation.
    auto t1 = FieldTower::build({2});
    const Field& F = t1->field(0);
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b)
            for (int i = 0; i < 4; ++i)
                CHECK(operator_eval(*t1, 0, 0, a, i, b) == F.mul(b, F.pow(a, static_cast<uint64_t>(i))));
}

TEST_CASE("generator matrix layout") {
    auto t = FieldTower::build({2, 4});
    // k = 1: single row of basis prefixes.
    auto c1 = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 1}}, 1);
    const Matrix& g1 = c1.generator();
    REQUIRE(g1.rows() == 1);
    CHECK(g1.at(0, 0) == c1.basis().element(0));
    CHECK(g1.at(0, 1) == c1.basis().element(1));
    CHECK(g1.at(0, 2) == c1.basis().element(0));

    // m = r_i = 1 with beta_1 = 1: classical Vandermonde rows (gamma^{i-1})^j.
    auto t8 = FieldTower::build({3});
    auto rs = LinRsCode::make(t8, 0, 0, SumRankPartition{{1, 1, 1, 1, 1}}, 3);
    const Field& F8 = t8->field(0);
    uint64_t gamma = rs.gamma();
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 5; ++i)
            CHECK(rs.generator().at(static_cast<size_t>(j), static_cast<size_t>(i)) ==
                  F8.pow(F8.pow(gamma, static_cast<uint64_t>(i)), static_cast<uint64_t>(j)));

    // Parameter validation.
    CHECK_THROWS_AS(LinRsCode::make(t, 0, 1, SumRankPartition{{3, 1}}, 1), Error);        // r_i > m
    CHECK_THROWS_AS(LinRsCode::make(t, 0, 1, SumRankPartition{{1, 1, 1, 1}}, 1), Error);  // g > q-1
    CHECK_THROWS_AS(LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 5), Error);        // k > N
}

TEST_CASE("linearized RS codes are MSRD") {
    // q=4, m=2, g=2, r=(2,2), k=2 -> d_SR = 3 = N-k+1.
    auto t = FieldTower::build({2, 4});
    auto code = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 2);
    auto rep = polynomial_basis(t, 0, 1);
    CHECK(min_sum_rank_distance(code.generator(), code.partition(), rep) == 3);
    CHECK(is_msrd(code.generator(), code.partition(), rep));

    // A small sweep of parameter sets.
    for (int k = 1; k <= 4; ++k)
        CHECK(is_msrd(LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, k).generator(),
                      SumRankPartition{{2, 2}}, rep));
    for (int k = 1; k <= 3; ++k)
        CHECK(is_msrd(LinRsCode::make(t, 0, 1, SumRankPartition{{1, 2}}, k).generator(),
                      SumRankPartition{{1, 2}}, rep));

    // Any k columns of the generator form an information set (MDS consequence).
    auto g = code.generator();
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            std::vector<int> idx{a, b};
            CHECK(g.cols_subset(idx).rank() == 2);
        }
}

TEST_CASE("recoding-minimum equality on a tiny linearized RS code") {
    // q=2, m=2, g=1, r=2, k=1: min over all 6 invertible 2x2 F_2 blocks.
    auto t = FieldTower::build({1, 2});
    auto code = LinRsCode::make(t, 0, 1, SumRankPartition{{2}}, 1);
    auto rep = polynomial_basis(t, 0, 1);
    int dsr = min_sum_rank_distance(code.generator(), code.partition(), rep);
    CHECK(min_hamming_over_all_recodings(code.generator(), code.partition(), 0) == dsr);
}

TEST_CASE("systematic generator") {
    auto t = FieldTower::build({2, 4});
    auto code = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 3);

    // k = N: the identity.
    auto full = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 4);
    CHECK(full.systematic_generator({2, 2}) == Matrix::identity(t, 1, 4));

    // Valid distribution: systematic columns carry the message verbatim.
    std::mt19937_64 rng(8);
    for (auto dist : {std::vector<int>{2, 1}, std::vector<int>{1, 2}, std::vector<int>{0, 3}}) {
        if (dist[1] > 2) continue;
        Matrix gs = code.systematic_generator(dist);
        for (int it = 0; it < 20; ++it) {
            std::vector<uint64_t> msg(3);
            for (auto& v : msg) v = rng() % 16;
            auto cw = gs.left_mul(msg);
            size_t mi = 0;
            int off = 0;
            for (size_t gi = 0; gi < 2; ++gi) {
                for (int tcol = 0; tcol < dist[gi]; ++tcol)
                    CHECK(cw[static_cast<size_t>(off + tcol)] == msg[mi++]);
                off += 2;
            }
            // Row space unchanged: the plain decoder still inverts it.
            std::vector<Matrix> blocks{Matrix::identity(t, 0, 2), Matrix::identity(t, 0, 2)};
            auto back = erasure_decode(gs, blocks, cw);
            CHECK(back == msg);
        }
    }

    CHECK_THROWS_AS(code.systematic_generator({3, 0}), Error);  // k_i > r_i
    CHECK_THROWS_AS(code.systematic_generator({1, 1}), Error);  // sum != k
}

TEST_CASE("erasure decoding round-trips exactly when ranks reach k") {
    auto t = FieldTower::build({2, 4});
    auto code = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 2);
    const Field& E = t->field(1);
    std::mt19937_64 rng(12);

    // Exhaustive over survivor subsets of the outer coordinates.
    for (uint64_t mask = 0; mask < 16; ++mask) {
        std::vector<Matrix> blocks;
        int ranksum = 0;
        for (int gi = 0; gi < 2; ++gi) {
            std::vector<int> surv;
            for (int tcol = 0; tcol < 2; ++tcol)
                if ((mask >> (2 * gi + tcol)) & 1) surv.push_back(tcol);
            Matrix ident = Matrix::identity(t, 0, 2);
            blocks.push_back(ident.cols_subset(surv));
            ranksum += static_cast<int>(surv.size());
        }
        if (ranksum >= 2) {
            ErasureDecoder dec(code.generator(), blocks);
            for (int it = 0; it < 20; ++it) {
                std::vector<uint64_t> msg{rng() % 16, rng() % 16};
                auto cw = code.encode(msg);
                std::vector<uint64_t> rec;
                for (int j = 0; j < 4; ++j)
                    if ((mask >> j) & 1) rec.push_back(cw[static_cast<size_t>(j)]);
                CHECK(dec.decode(rec) == msg);
            }
        } else {
            CHECK_THROWS_AS(ErasureDecoder(code.generator(), blocks), Error);
        }
    }

    // Folded through genuinely rank-reducing blocks (not just erasures).
    for (int it = 0; it < 30; ++it) {
        std::vector<Matrix> blocks;
        int ranksum = 0;
        for (int gi = 0; gi < 2; ++gi) {
            Matrix b(t, 0, 2, 1 + rng() % 3);
            for (size_t i = 0; i < b.rows(); ++i)
                for (size_t j = 0; j < b.cols(); ++j) b.at(i, j) = rng() % 4;
            ranksum += static_cast<int>(b.rank());
            blocks.push_back(std::move(b));
        }
        std::vector<uint64_t> msg{rng() % 16, rng() % 16};
        auto cw = code.encode(msg);
        std::vector<uint64_t> folded;
        size_t off = 0;
        for (const auto& b : blocks) {
            auto be = b.embed_to(1);
            std::vector<uint64_t> grp(cw.begin() + static_cast<long>(off),
                                      cw.begin() + static_cast<long>(off + b.rows()));
            auto img = be.left_mul(grp);
            folded.insert(folded.end(), img.begin(), img.end());
            off += b.rows();
        }
        if (ranksum >= 2) {
            CHECK(erasure_decode(code.generator(), blocks, folded) == msg);
        } else {
            CHECK_THROWS_AS(erasure_decode(code.generator(), blocks, folded), Error);
        }
    }

    // Encode is F_{q^m}-linear.
    const auto& g = code.generator();
    for (int it = 0; it < 40; ++it) {
        std::vector<uint64_t> x{rng() % 16, rng() % 16}, y{rng() % 16, rng() % 16};
        uint64_t c = rng() % 16;
        std::vector<uint64_t> xc(2);
        for (int j = 0; j < 2; ++j)
            xc[static_cast<size_t>(j)] = E.mul(c, x[static_cast<size_t>(j)]) ^ y[static_cast<size_t>(j)];
        auto lhs = g.left_mul(xc);
        auto cx = g.left_mul(x);
        auto cy = g.left_mul(y);
        for (int j = 0; j < 4; ++j)
            CHECK(lhs[static_cast<size_t>(j)] ==
                  (E.mul(c, cx[static_cast<size_t>(j)]) ^ cy[static_cast<size_t>(j)]));
    }
}

TEST_CASE("dual parity check") {
    auto t = FieldTower::build({2, 4});
    auto rep = polynomial_basis(t, 0, 1);

    // k = N-1: a single parity row.
    auto c3 = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 3);
    Matrix h3 = c3.dual_parity_check();
    CHECK(h3.rows() == 1);
    auto prod = c3.generator().mul(h3.transpose());
    for (size_t i = 0; i < prod.rows(); ++i)
        for (size_t j = 0; j < prod.cols(); ++j) CHECK(prod.at(i, j) == 0);

    // The dual of a linearized RS code is itself MSRD.
    auto c2 = LinRsCode::make(t, 0, 1, SumRankPartition{{2, 2}}, 2);
    Matrix h2 = c2.dual_parity_check();
    CHECK(h2.rows() == 2);
    CHECK(is_msrd(h2, c2.partition(), rep));
}

TEST_CASE("nested generator family") {
    auto t = FieldTower::build({2, 4});
    NestedFamily fam(t, 0, 1);
    CHECK(fam.max_k() == 6);  // (q-1) m = 3*2
    CHECK(fam.max_groups() == 3);
    auto rep = polynomial_basis(t, 0, 1);

    // G_k is the first k rows of G_{k'}.
    SumRankPartition full{{2, 2, 2}};
    for (int k = 1; k < 6; ++k) {
        Matrix gk = fam.generator(k, full);
        Matrix gk1 = fam.generator(k + 1, full);
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < 6; ++c)
                CHECK(gk.at(static_cast<size_t>(j), static_cast<size_t>(c)) ==
                      gk1.at(static_cast<size_t>(j), static_cast<size_t>(c)));
    }

    // Every level is MSRD (k = 6 is the whole space, distance 1 by rank).
    for (int k = 1; k <= 5; ++k) CHECK(is_msrd(fam.generator(k, full), full, rep));
    CHECK(fam.generator(6, full).rank() == 6);

    // Restrictions agree with directly built codes.
    for (auto part : {SumRankPartition{{2, 1}}, SumRankPartition{{1, 2, 2}}, SumRankPartition{{2, 2}}}) {
        for (int k = 1; k <= std::min(4, part.total()); ++k) {
            auto direct = LinRsCode::make(t, 0, 1, part, k);
            CHECK(direct.generator() == fam.generator(k, part));
        }
    }
}
