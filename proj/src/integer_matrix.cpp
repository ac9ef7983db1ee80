#include "fintop/integer_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace fintop {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<Integer>>& rows, std::size_t cols)
{
    if (!rows.empty())
        cols = rows.front().size();
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("IntegerMatrix::from_dense: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] != 0)
                m.columns_[c].emplace_back(r, rows[r][c]);
    }
    return m;
}

Integer IntegerMatrix::get(std::size_t r, std::size_t c) const
{
    const Column& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& entry, std::size_t row) { return entry.first < row; });
    if (it != col.end() && it->first == r)
        return it->second;
    return 0;
}

void IntegerMatrix::set(std::size_t r, std::size_t c, const Integer& value)
{
    if (r >= rows_)
        throw std::out_of_range("IntegerMatrix::set: row out of range");
    Column& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& entry, std::size_t row) { return entry.first < row; });
    if (it != col.end() && it->first == r) {
        if (value == 0)
            col.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        col.emplace(it, r, value);
    }
}

std::size_t IntegerMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += col.size();
    return n;
}

std::vector<std::vector<Integer>> IntegerMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> out(rows_, std::vector<Integer>(cols()));
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, v] : columns_[c])
            out[r][c] = v;
    return out;
}

IntegerMatrix IntegerMatrix::multiply(const IntegerMatrix& other) const
{
    if (cols() != other.rows())
        throw std::invalid_argument("IntegerMatrix::multiply: shape mismatch");
    IntegerMatrix out(rows_, other.cols());
    std::vector<Integer> acc(rows_);
    std::vector<bool> touched(rows_);
    for (std::size_t c = 0; c < other.cols(); ++c) {
        std::vector<std::size_t> hit;
        for (const auto& [k, v] : other.columns_[c]) {
            for (const auto& [r, w] : columns_[k]) {
                if (!touched[r]) {
                    touched[r] = true;
                    acc[r] = 0;
                    hit.push_back(r);
                }
                acc[r] += w * v;
            }
        }
        std::sort(hit.begin(), hit.end());
        for (std::size_t r : hit) {
            if (acc[r] != 0)
                out.columns_[c].emplace_back(r, acc[r]);
            touched[r] = false;
        }
    }
    return out;
}

} // namespace fintop
