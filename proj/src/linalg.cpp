#include "srlrc/linalg.hpp"

#include <cassert>

namespace srlrc {

Matrix Matrix::identity(TowerPtr tower, int field_id, size_t n) {
    Matrix m(std::move(tower), field_id, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(TowerPtr tower, int field_id, const std::vector<std::vector<uint64_t>>& rows) {
    size_t r = rows.size();
    size_t c = r ? rows[0].size() : 0;
    Matrix m(std::move(tower), field_id, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) fail(Errc::DimensionMismatch, "ragged rows");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::mul(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || fid_ != rhs.fid_) fail(Errc::DimensionMismatch, "matrix product shape/field");
    const Field& F = field();
    Matrix out(tw_, fid_, rows_, rhs.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t t = 0; t < cols_; ++t) {
            uint64_t v = at(i, t);
            if (!v) continue;
            for (size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) ^= F.mul(v, rhs.at(t, j));
        }
    return out;
}

std::vector<uint64_t> Matrix::left_mul(std::span<const uint64_t> x) const {
    if (x.size() != rows_) fail(Errc::DimensionMismatch, "left_mul length");
    const Field& F = field();
    std::vector<uint64_t> out(cols_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t v = x[i];
        if (!v) continue;
        for (size_t j = 0; j < cols_; ++j) out[j] ^= F.mul(v, at(i, j));
    }
    return out;
}

std::vector<uint64_t> Matrix::right_mul(std::span<const uint64_t> x) const {
    if (x.size() != cols_) fail(Errc::DimensionMismatch, "right_mul length");
    const Field& F = field();
    std::vector<uint64_t> out(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < cols_; ++j) acc ^= F.mul(at(i, j), x[j]);
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(tw_, fid_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

namespace {

// In-place row echelon reduction; returns pivot column per eliminated row.
std::vector<size_t> echelon(Matrix& m) {
    const Field& F = m.field();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t pr = row;
        while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        uint64_t pinv = F.inv(m.at(row, col));
        for (size_t j = col; j < m.cols(); ++j) m.at(row, j) = F.mul(pinv, m.at(row, j));
        for (size_t r = 0; r < m.rows(); ++r) {
            if (r == row) continue;
            uint64_t v = m.at(r, col);
            if (!v) continue;
            for (size_t j = col; j < m.cols(); ++j) m.at(r, j) ^= F.mul(v, m.at(row, j));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

size_t Matrix::rank() const {
    Matrix m = *this;
    return echelon(m).size();
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) fail(Errc::DimensionMismatch, "inverse of non-square matrix");
    Matrix aug = hconcat(identity(tw_, fid_, rows_));
    auto piv = echelon(aug);
    // A pivot escaping into the identity half means the left block is rank
    // deficient.
    if (piv.size() != rows_ || (rows_ && piv[rows_ - 1] >= cols_)) fail(Errc::Singular, "matrix is singular");
    Matrix out(tw_, fid_, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(i, j) = aug.at(i, cols_ + j);
    return out;
}

std::optional<std::vector<uint64_t>> Matrix::solve(std::span<const uint64_t> y) const {
    if (y.size() != rows_) fail(Errc::DimensionMismatch, "solve rhs length");
    Matrix aug(tw_, fid_, rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = y[i];
    }
    auto piv = echelon(aug);
    // Inconsistent iff some pivot landed in the rhs column.
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<uint64_t> x(cols_, 0);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, cols_);
    return x;
}

Matrix Matrix::nullspace() const {
    Matrix m = *this;
    auto piv = echelon(m);
    std::vector<char> is_pivot(cols_, 0);
    for (size_t p : piv) is_pivot[p] = 1;
    Matrix out(tw_, fid_, cols_ - piv.size(), cols_);
    size_t r = 0;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        out.at(r, f) = 1;
        for (size_t pr = 0; pr < piv.size(); ++pr) out.at(r, piv[pr]) = m.at(pr, f);  // char 2: -x = x
        ++r;
    }
    return out;
}

Matrix Matrix::cols_subset(std::span<const int> idx) const {
    Matrix out(tw_, fid_, rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) out.at(i, j) = at(i, static_cast<size_t>(idx[j]));
    return out;
}

Matrix Matrix::rows_subset(std::span<const int> idx) const {
    Matrix out(tw_, fid_, idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(i, j) = at(static_cast<size_t>(idx[i]), j);
    return out;
}

Matrix Matrix::hconcat(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || fid_ != rhs.fid_) fail(Errc::DimensionMismatch, "hconcat shape/field");
    Matrix out(tw_, fid_, rows_, cols_ + rhs.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (size_t j = 0; j < rhs.cols_; ++j) out.at(i, cols_ + j) = rhs.at(i, j);
    }
    return out;
}

Matrix Matrix::embed_to(int field_id) const {
    Matrix out(tw_, field_id, rows_, cols_);
    for (size_t i = 0; i < rows_ * cols_; ++i)
        out.a_[i] = tw_->embed(a_[i], fid_, field_id);
    return out;
}

std::vector<int> Matrix::independent_columns(size_t max_count) const {
    const Field& F = field();
    std::vector<int> chosen;
    // Reduced copies of accepted columns plus their pivot rows.
    std::vector<std::vector<uint64_t>> basis;
    std::vector<size_t> pivot_row;
    for (size_t c = 0; c < cols_ && chosen.size() < max_count; ++c) {
        std::vector<uint64_t> v(rows_);
        for (size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        for (size_t b = 0; b < basis.size(); ++b) {
            uint64_t coef = v[pivot_row[b]];
            if (!coef) continue;
            for (size_t r = 0; r < rows_; ++r) v[r] ^= F.mul(coef, basis[b][r]);
        }
        size_t pr = 0;
        while (pr < rows_ && v[pr] == 0) ++pr;
        if (pr == rows_) continue;
        uint64_t pinv = F.inv(v[pr]);
        for (size_t r = 0; r < rows_; ++r) v[r] = F.mul(pinv, v[r]);
        // Keep the basis mutually reduced so one ascending pass suffices.
        for (size_t b = 0; b < basis.size(); ++b) {
            uint64_t coef = basis[b][pr];
            if (!coef) continue;
            for (size_t r = 0; r < rows_; ++r) basis[b][r] ^= F.mul(coef, v[r]);
        }
        basis.push_back(std::move(v));
        pivot_row.push_back(pr);
        chosen.push_back(static_cast<int>(c));
    }
    return chosen;
}

Matrix matrix_rep(std::span<const uint64_t> v, const OrderedBasis& basis) {
    Matrix out(basis.tower(), basis.subfield(), static_cast<size_t>(basis.size()), v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        auto coords = basis.expand(v[j]);
        for (size_t i = 0; i < coords.size(); ++i) out.at(i, j) = coords[i];
    }
    return out;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return {};
    size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        if (b.field_id() != blocks[0].field_id()) fail(Errc::DimensionMismatch, "block_diag field mismatch");
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out(blocks[0].tower(), blocks[0].field_id(), rows, cols);
    size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) out.at(ro + i, co + j) = b.at(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return out;
}

}  // namespace srlrc
