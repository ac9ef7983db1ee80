#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fintop {

using Integer = boost::multiprecision::cpp_int;

/// Exact integer matrix, column-sparse. Each column keeps (row, value)
/// pairs sorted by row with no stored zeros.
class IntegerMatrix
{
public:
    using Column = std::vector<std::pair<std::size_t, Integer>>;

    IntegerMatrix(std::size_t rows = 0, std::size_t cols = 0);

    /// Row-major dense input.
    static IntegerMatrix from_dense(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    Integer get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Integer& value);

    const Column& column(std::size_t c) const { return columns_.at(c); }

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    /// Row-major dense copy.
    std::vector<std::vector<Integer>> to_dense() const;

    /// this * other. Throws std::invalid_argument on a shape mismatch.
    IntegerMatrix multiply(const IntegerMatrix& other) const;

private:
    std::size_t rows_;
    std::vector<Column> columns_;
};

} // namespace fintop
