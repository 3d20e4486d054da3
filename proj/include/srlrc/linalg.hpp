#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srlrc/gf.hpp"

namespace srlrc {

/// Dense row-major matrix over one tower field. Exact arithmetic, Gaussian
/// elimination with first-nonzero pivoting throughout.
class Matrix {
   public:
    Matrix() = default;
    Matrix(TowerPtr tower, int field_id, size_t rows, size_t cols)
        : tw_(std::move(tower)), fid_(field_id), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(TowerPtr tower, int field_id, size_t n);
    static Matrix from_rows(TowerPtr tower, int field_id, const std::vector<std::vector<uint64_t>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    int field_id() const { return fid_; }
    const TowerPtr& tower() const { return tw_; }
    const Field& field() const { return tw_->field(fid_); }

    uint64_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    std::span<const uint64_t> row(size_t r) const { return {a_.data() + r * cols_, cols_}; }
    std::span<uint64_t> row(size_t r) { return {a_.data() + r * cols_, cols_}; }

    Matrix mul(const Matrix& rhs) const;
    std::vector<uint64_t> left_mul(std::span<const uint64_t> x) const;  // x * M, x of length rows()
    std::vector<uint64_t> right_mul(std::span<const uint64_t> x) const; // M * x, x of length cols()
    Matrix transpose() const;

    size_t rank() const;
    Matrix inverse() const;                                         // throws Singular
    std::optional<std::vector<uint64_t>> solve(std::span<const uint64_t> y) const;  // M x = y, nullopt if inconsistent
    Matrix nullspace() const;  // rows form a basis of {x : M x^T = 0}

    Matrix cols_subset(std::span<const int> idx) const;
    Matrix rows_subset(std::span<const int> idx) const;
    Matrix hconcat(const Matrix& rhs) const;

    /// Entry-wise embedding into another tower field.
    Matrix embed_to(int field_id) const;

    /// Greedy left-to-right selection of up to max_count linearly
    /// independent columns.
    std::vector<int> independent_columns(size_t max_count) const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ &&
               (!tw_ || !o.tw_ || field().bits() == o.field().bits());
    }

   private:
    TowerPtr tw_;
    int fid_ = 0;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint64_t> a_;
};

/// Block diagonal of the given blocks (all over the same field).
Matrix block_diag(const std::vector<Matrix>& blocks);

/// Matrix representation of a vector over the extension field: column j is
/// the expansion of v[j] on the basis, an m x s matrix over the subfield.
Matrix matrix_rep(std::span<const uint64_t> v, const OrderedBasis& basis);

}  // namespace srlrc
