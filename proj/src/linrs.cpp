#include "srlrc/linrs.hpp"

#include <cassert>

namespace srlrc {

uint64_t operator_eval(const FieldTower& tower, int base, int ext, uint64_t a, int i, uint64_t b) {
    const Field& E = tower.field(ext);
    return E.mul(tower.frobenius(b, ext, base, i), tower.norm(a, ext, base, i));
}

Matrix linrs_generator(TowerPtr tower, int base, int ext, const SumRankPartition& part, int k, uint64_t gamma,
                       const OrderedBasis& basis) {
    const Field& E = tower->field(ext);
    Matrix gen(tower, ext, static_cast<size_t>(k), static_cast<size_t>(part.total()));
    size_t off = 0;
    for (int i = 0; i < part.groups(); ++i) {
        uint64_t a = E.pow(gamma, static_cast<uint64_t>(i));  // gamma^{i-1} in 1-based terms
        int ri = part.r[static_cast<size_t>(i)];
        // Row j entry: sigma^j(beta_t) * N_j(a); both advance one sigma/mul per row.
        std::vector<uint64_t> sig(static_cast<size_t>(ri));
        for (int t = 0; t < ri; ++t) sig[static_cast<size_t>(t)] = basis.element(t);
        uint64_t norm = 1;
        for (int j = 0; j < k; ++j) {
            for (int t = 0; t < ri; ++t) gen.at(static_cast<size_t>(j), off + static_cast<size_t>(t)) = E.mul(sig[static_cast<size_t>(t)], norm);
            for (int t = 0; t < ri; ++t) sig[static_cast<size_t>(t)] = tower->frobenius(sig[static_cast<size_t>(t)], ext, base, 1);
            norm = E.mul(tower->frobenius(norm, ext, base, 1), a);
        }
        off += static_cast<size_t>(ri);
    }
    return gen;
}

LinRsCode LinRsCode::make(TowerPtr tower, int base_field, int ext_field, SumRankPartition partition, int k) {
    const Field& B = tower->field(base_field);
    const Field& E = tower->field(ext_field);
    if (E.bits() % B.bits() != 0) fail(Errc::ProfileInvalid, "extension field is not over the base field");
    int m = E.bits() / B.bits();
    int g = partition.groups();
    if (g < 1 || static_cast<uint64_t>(g) > B.order() - 1)
        fail(Errc::ProfileInvalid, "g <= q-1 required");
    for (int ri : partition.r)
        if (ri < 1 || ri > m) fail(Errc::ProfileInvalid, "1 <= r_i <= m required");
    int N = partition.total();
    if (k < 1 || k > N) fail(Errc::ProfileInvalid, "1 <= k <= N required");

    uint64_t gamma = E.generator();
    OrderedBasis basis = polynomial_basis(tower, base_field, ext_field);
    Matrix gen = linrs_generator(tower, base_field, ext_field, partition, k, gamma, basis);
    return LinRsCode(std::move(tower), base_field, ext_field, std::move(partition), k, gamma, std::move(basis),
                     std::move(gen));
}

std::vector<uint64_t> LinRsCode::encode(std::span<const uint64_t> message) const {
    if (message.size() != static_cast<size_t>(k_)) fail(Errc::LengthMismatch, "message length != k");
    return gen_.left_mul(message);
}

Matrix LinRsCode::systematic_generator(const std::vector<int>& k_dist) const {
    if (static_cast<int>(k_dist.size()) != part_.groups())
        fail(Errc::BadDistribution, "one k_i per group required");
    int sum = 0;
    for (int i = 0; i < part_.groups(); ++i) {
        if (k_dist[static_cast<size_t>(i)] < 0 || k_dist[static_cast<size_t>(i)] > part_.r[static_cast<size_t>(i)])
            fail(Errc::BadDistribution, "0 <= k_i <= r_i required");
        sum += k_dist[static_cast<size_t>(i)];
    }
    if (sum != k_) fail(Errc::BadDistribution, "k_i must sum to k");

    std::vector<int> sys_cols;
    int off = 0;
    for (int i = 0; i < part_.groups(); ++i) {
        for (int t = 0; t < k_dist[static_cast<size_t>(i)]; ++t) sys_cols.push_back(off + t);
        off += part_.r[static_cast<size_t>(i)];
    }
    // Any k coordinates of an MSRD code form an information set.
    Matrix sub = gen_.cols_subset(sys_cols);
    return sub.inverse().mul(gen_);
}

Matrix LinRsCode::dual_parity_check() const { return gen_.nullspace(); }

NestedFamily::NestedFamily(TowerPtr tower, int base_field, int ext_field)
    : tw_(tower), base_(base_field), ext_(ext_field), gamma_(tower->field(ext_field).generator()),
      basis_(polynomial_basis(tower, base_field, ext_field)) {
    const Field& B = tw_->field(base_);
    const Field& E = tw_->field(ext_);
    int m = E.bits() / B.bits();
    int g = static_cast<int>(B.order()) - 1;
    SumRankPartition full_part{std::vector<int>(static_cast<size_t>(g), m)};
    full_ = linrs_generator(tw_, base_, ext_, full_part, g * m, gamma_, basis_);
}

int NestedFamily::max_groups() const { return static_cast<int>(tw_->field(base_).order()) - 1; }

int NestedFamily::slot_width() const { return tw_->field(ext_).bits() / tw_->field(base_).bits(); }

Matrix NestedFamily::generator(int k, const SumRankPartition& part) const {
    if (k < 0 || k > max_k()) fail(Errc::KOutOfRange, "nested k out of range");
    if (part.groups() > max_groups()) fail(Errc::GroupCountOutOfRange, "more groups than q-1 slots");
    const int m = slot_width();
    std::vector<int> cols;
    for (int i = 0; i < part.groups(); ++i) {
        if (part.r[static_cast<size_t>(i)] < 1 || part.r[static_cast<size_t>(i)] > m)
            fail(Errc::LocalityOutOfRange, "1 <= r_i <= m required");
        for (int t = 0; t < part.r[static_cast<size_t>(i)]; ++t) cols.push_back(i * m + t);
    }
    std::vector<int> rows(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) rows[static_cast<size_t>(j)] = j;
    return full_.rows_subset(rows).cols_subset(cols);
}

Matrix NestedFamily::block_columns(int k, int group, int c0, int c1) const {
    if (k < 0 || k > max_k()) fail(Errc::KOutOfRange, "nested k out of range");
    const int m = slot_width();
    if (group < 0 || group >= max_groups()) fail(Errc::GroupCountOutOfRange, "slot out of range");
    if (c0 < 0 || c1 > m || c0 > c1) fail(Errc::LocalityOutOfRange, "column range out of slot");
    std::vector<int> cols;
    for (int t = c0; t < c1; ++t) cols.push_back(group * m + t);
    std::vector<int> rows(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) rows[static_cast<size_t>(j)] = j;
    return full_.rows_subset(rows).cols_subset(cols);
}

ErasureDecoder::ErasureDecoder(const Matrix& outer_gen, const std::vector<Matrix>& folded_blocks) {
    size_t nr = 0;
    for (const auto& b : folded_blocks) nr += b.rows();
    if (nr != outer_gen.cols()) fail(Errc::DimensionMismatch, "folded block rows != outer length");
    std::vector<Matrix> embedded;
    embedded.reserve(folded_blocks.size());
    for (const auto& b : folded_blocks) embedded.push_back(b.embed_to(outer_gen.field_id()));
    Matrix folded = outer_gen.mul(block_diag(embedded));  // k x survivors
    len_ = folded.cols();
    const size_t k = outer_gen.rows();
    sel_ = folded.independent_columns(k);
    if (sel_.size() != k)
        fail(Errc::InsufficientRank, "survivor ranks sum below k; pattern not correctable");
    inv_ = folded.cols_subset(sel_).inverse();
}

std::vector<uint64_t> ErasureDecoder::decode(std::span<const uint64_t> received) const {
    if (received.size() != len_) fail(Errc::LengthMismatch, "received length != folded length");
    std::vector<uint64_t> ysel(sel_.size());
    for (size_t i = 0; i < sel_.size(); ++i) ysel[i] = received[static_cast<size_t>(sel_[i])];
    return inv_.left_mul(ysel);
}

std::vector<uint64_t> erasure_decode(const Matrix& outer_gen, const std::vector<Matrix>& folded_blocks,
                                     std::span<const uint64_t> received) {
    return ErasureDecoder(outer_gen, folded_blocks).decode(received);
}

}  // namespace srlrc
