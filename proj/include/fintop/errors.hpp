#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fintop {

/// Malformed input: unknown identifiers, cyclic order data, invalid covers,
/// unparsable files. Line/column are 1-based and zero when not applicable.
class InputError : public std::runtime_error
{
public:
    explicit InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column)
    {
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column)
    {
        if (line == 0)
            return what;
        std::string out = "line " + std::to_string(line);
        if (column != 0)
            out += ", column " + std::to_string(column);
        return out + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A structure failed validation (e.g. not a regular CW face poset).
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace fintop
