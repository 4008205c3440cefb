#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phrasecom {

struct Triplet {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double value = 0.0;

    bool operator==(const Triplet&) const = default;
};

/// Compressed sparse row matrix of doubles.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    /// Duplicate coordinates are summed; explicit zeros are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t r) const {
        return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<const double> row_values(std::size_t r) const {
        return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<double> row_values(std::size_t r) {
        return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    double at(std::size_t r, std::size_t c) const;

    /// y = A x.
    void multiply(std::span<const double> x, std::span<double> y) const;
    /// y = A^T x.
    void multiply_transpose(std::span<const double> x, std::span<double> y) const;

    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;

    /// Row-major (row, col) ordered triplets.
    std::vector<Triplet> triplets() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_idx_;
    std::vector<double> values_;
};

}  // namespace phrasecom
