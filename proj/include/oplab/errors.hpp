#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

// Error categories map onto CLI exit codes: precondition violations exit 2,
// parse failures exit 65 (see cli.cpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct RangeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct RankDeficiencyError : PreconditionError {
    RankDeficiencyError(std::size_t column, const std::string& what)
        : PreconditionError(what), column(column) {}
    std::size_t column;
};

struct OverflowError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace oplab
