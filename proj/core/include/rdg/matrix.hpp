#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rdg {

/// Dense row-major matrix. Small (S x S for a handful of types), so no
/// attempt at anything clever.
template <typename T>
class BasicMatrix {
  public:
    BasicMatrix() = default;
    BasicMatrix(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("matrix dimensions must be non-negative");
    }
    BasicMatrix(int rows, int cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != static_cast<std::size_t>(rows) * cols)
            throw std::invalid_argument("matrix data size does not match dimensions");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    bool operator==(const BasicMatrix& other) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using IntMatrix = BasicMatrix<std::int64_t>;

} // namespace rdg
