#ifndef NILCOHOM_ERROR_HPP
#define NILCOHOM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nilcohom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(int line, int column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

// Structurally invalid model: integrability violation, d^2 != 0, unknown catalog entry.
struct ModelError : Error {
    using Error::Error;
};

// A hypothesis required by an operation does not hold; what() names it, e.g. "B^{2,1} fails".
struct HypothesisError : Error {
    using Error::Error;
};

// Precondition violations inside the algebra: unsolvable equation, non-invertible operator, bad bidegree.
struct MathError : Error {
    using Error::Error;
};

} // namespace nilcohom

#endif
