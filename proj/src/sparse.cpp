#include "phrasecom/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace phrasecom {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < triplets.size();) {
        const auto& t = triplets[i];
        if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet outside matrix shape");
        double sum = 0.0;
        std::size_t j = i;
        for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j)
            sum += triplets[j].value;
        if (sum != 0.0) {
            m.col_idx_.push_back(t.col);
            m.values_.push_back(sum);
            ++m.row_ptr_[t.row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
    auto cols = row_cols(r);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(c));
    if (it == cols.end() || *it != c) return 0.0;
    return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
        y[r] = acc;
    }
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(cols_), 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double xr = x[r];
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) y[col_idx_[k]] += values_[k] * xr;
    }
}

std::vector<double> SparseMatrix::row_sums() const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out[r] += values_[k];
    return out;
}

std::vector<double> SparseMatrix::col_sums() const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k) out[col_idx_[k]] += values_[k];
    return out;
}

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(values_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            out.push_back({static_cast<std::uint32_t>(r), col_idx_[k], values_[k]});
    return out;
}

}  // namespace phrasecom
