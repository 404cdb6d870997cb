#pragma once

// Dense exact linear algebra over Q.  Elimination is fraction-free
// (Bareiss) on integer rows; the final reduced echelon form is rational.

#include <cstddef>
#include <optional>
#include <vector>

#include "paracr/jet.hpp"

namespace paracr {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Columns side by side: [*this | other].
    RationalMatrix hcat(const RationalMatrix& other) const;
    RationalMatrix transposed() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct Echelon {
    RationalMatrix reduced;            ///< reduced row echelon form
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

enum class Backend { Serial, Parallel };

/// Reduced row echelon form.  Pivots are taken in column order, so earlier
/// columns are preferred as basic variables.
Echelon rref(const RationalMatrix& m, Backend backend = Backend::Serial);

std::size_t rank(const RationalMatrix& m, Backend backend = Backend::Serial);

/// Basis of {v : m v = 0}, one vector per free column (free entry 1).
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m,
                                             Backend backend = Backend::Serial);

/// A solution of m v = rhs with every free variable set to zero, or nullopt
/// if the system is inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& rhs,
                                           Backend backend = Backend::Serial);

}  // namespace paracr
