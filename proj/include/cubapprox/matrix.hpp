#pragma once

#include "cubapprox/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cubapprox {

/// Dense matrix over Q, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RatMatrix operator*(const RatMatrix& rhs) const;
    std::vector<Rat> apply(std::span<const Rat> v) const;
    RatMatrix transpose() const;

    Rat determinant() const;
    std::size_t rank() const;
    /// Inverse, or nullopt when singular.
    std::optional<RatMatrix> inverse() const;
    /// Basis of the right kernel {v : M v = 0}.
    std::vector<std::vector<Rat>> kernel() const;

    bool operator==(const RatMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

}  // namespace cubapprox
