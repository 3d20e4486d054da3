#include "srlrc/alternant.hpp"

#include "srlrc/linrs.hpp"

namespace srlrc {

Matrix subextension_subcode(const Matrix& parity_check, TowerPtr tower, int subext_field) {
    const int extf = parity_check.field_id();
    const Field& E = tower->field(extf);
    const Field& S = tower->field(subext_field);
    if (E.bits() % S.bits() != 0) fail(Errc::NotAPowerChain, "subextension field does not divide the code field");
    const int s = E.bits() / S.bits();
    const size_t h = parity_check.rows(), N = parity_check.cols();
    if (s == 1) {
        // Same field: the code itself.
        Matrix pc = parity_check;
        return pc.nullspace();
    }
    OrderedBasis rep = polynomial_basis(tower, subext_field, extf);
    Matrix expanded(tower, subext_field, h * static_cast<size_t>(s), N);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < N; ++j) {
            auto coords = rep.expand(parity_check.at(i, j));
            for (int t = 0; t < s; ++t) expanded.at(i * static_cast<size_t>(s) + static_cast<size_t>(t), j) = coords[static_cast<size_t>(t)];
        }
    return expanded.nullspace();
}

AlternantCode alternant_code(TowerPtr tower, int q0_bits, int s, int m, SumRankPartition partition, int designed) {
    if (s < 1) fail(Errc::NotAPowerChain, "s >= 1 required");
    if (designed < 1) fail(Errc::ProfileInvalid, "designed distance >= 1 required");
    AlternantCode a;
    a.tower = tower;
    a.q0_field = tower->find(q0_bits);
    a.subext_field = tower->find(q0_bits * m);
    a.base_field = tower->find(q0_bits * s);
    a.ext_field = tower->find(q0_bits * s * m);
    if (a.q0_field < 0 || a.subext_field < 0 || a.base_field < 0 || a.ext_field < 0)
        fail(Errc::NotAPowerChain, "tower lacks one of the four required fields");
    a.s = s;
    a.m = m;
    a.designed = designed;
    a.partition = partition;

    if (designed == 1) {
        // Dual of the zero-dimensional code is the whole space.
        a.gamma = tower->field(a.ext_field).generator();
        a.gen = Matrix::identity(tower, a.subext_field, static_cast<size_t>(partition.total()));
        return a;
    }
    LinRsCode parent = LinRsCode::make(tower, a.base_field, a.ext_field, partition, designed - 1);
    a.gamma = parent.gamma();
    // The parent generator is the parity check of its dual.
    a.gen = subextension_subcode(parent.generator(), tower, a.subext_field);
    return a;
}

AlternantCode alternant_code(int q0_bits, int s, int m, SumRankPartition partition, int designed) {
    auto tower = FieldTower::for_exponents({q0_bits, q0_bits * m, q0_bits * s, q0_bits * s * m});
    return alternant_code(tower, q0_bits, s, m, std::move(partition), designed);
}

AlternantReport verify_bounds(const AlternantCode& code, uint64_t cap) {
    AlternantReport rep{};
    rep.d_designed = code.designed;
    rep.dim_actual = code.dim();
    rep.dim_bound = code.dimension_bound();
    OrderedBasis basis = polynomial_basis(code.tower, code.q0_field, code.subext_field);
    rep.d_actual = code.dim() == code.length()
                       ? 1
                       : min_sum_rank_distance(code.gen, code.partition, basis, cap);
    return rep;
}

bool alternant_threshold(const GlobalCode& global, int designed, const ErasurePattern& pattern) {
    int ranksum = global.survivor_rank_sum(pattern);
    return ranksum >= global.profile().N() - designed + 1;
}

}  // namespace srlrc
