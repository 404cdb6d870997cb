#include "paracr/linalg.hpp"

#include <utility>

namespace paracr {

RationalMatrix RationalMatrix::hcat(const RationalMatrix& other) const
{
    if (rows_ != other.rows_) throw StructuralError("hcat: row count mismatch");
    RationalMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
    }
    return out;
}

RationalMatrix RationalMatrix::transposed() const
{
    RationalMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

// Clear denominators row by row; row scaling does not change the row space.
IntRows toIntegerRows(const RationalMatrix& m)
{
    IntRows rows(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    return rows;
}

void bareissUpdateRow(std::vector<mpz_class>& row, const std::vector<mpz_class>& pivotRow,
                      std::size_t col, const mpz_class& prev, mpz_class& tmp)
{
    const mpz_class factor = row[col];
    const mpz_class& piv = pivotRow[col];
    for (std::size_t j = col + 1; j < row.size(); ++j) {
        // row[j] = (piv*row[j] - factor*pivotRow[j]) / prev, exact
        mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), piv.get_mpz_t());
        mpz_mul(tmp.get_mpz_t(), factor.get_mpz_t(), pivotRow[j].get_mpz_t());
        mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), tmp.get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
    }
    row[col] = 0;
}

// Forward fraction-free elimination; returns pivot columns.  Rows below the
// pivot row are independent of each other, which is where the parallel
// backend splits the work.
std::vector<std::size_t> bareissForward(IntRows& rows, std::size_t cols, Backend backend)
{
    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const std::vector<mpz_class>& pivotRow = rows[r];
        const long count = static_cast<long>(rows.size());
        if (backend == Backend::Parallel) {
#pragma omp parallel
            {
                mpz_class tmp;
#pragma omp for schedule(dynamic, 1)
                for (long i = static_cast<long>(r) + 1; i < count; ++i)
                    bareissUpdateRow(rows[i], pivotRow, c, prev, tmp);
            }
        } else {
            mpz_class tmp;
            for (long i = static_cast<long>(r) + 1; i < count; ++i)
                bareissUpdateRow(rows[i], pivotRow, c, prev, tmp);
        }
        prev = rows[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Echelon rref(const RationalMatrix& m, Backend backend)
{
    IntRows rows = toIntegerRows(m);
    const std::vector<std::size_t> pivots = bareissForward(rows, m.cols(), backend);

    Echelon out{RationalMatrix(m.rows(), m.cols()), pivots};
    const std::size_t r = pivots.size();
    // Normalize the echelon rows to rationals.
    for (std::size_t i = 0; i < r; ++i) {
        const mpz_class& lead = rows[i][pivots[i]];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational q(rows[i][j], lead);
            q.canonicalize();
            out.reduced(i, j) = q;
        }
    }
    // Back substitution: clear entries above each pivot, bottom-up.
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t pc = pivots[k];
        const long upto = static_cast<long>(k);
        auto clear = [&](long i) {
            const Rational f = out.reduced(i, pc);
            if (f == 0) return;
            for (std::size_t j = pc; j < m.cols(); ++j)
                if (out.reduced(k, j) != 0) out.reduced(i, j) -= f * out.reduced(k, j);
        };
        if (backend == Backend::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (long i = 0; i < upto; ++i) clear(i);
        } else {
            for (long i = 0; i < upto; ++i) clear(i);
        }
    }
    return out;
}

std::size_t rank(const RationalMatrix& m, Backend backend)
{
    IntRows rows = toIntegerRows(m);
    return bareissForward(rows, m.cols(), backend).size();
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, Backend backend)
{
    const Echelon e = rref(m, backend);
    std::vector<bool> isPivot(m.cols(), false);
    for (std::size_t c : e.pivots) isPivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (isPivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& rhs,
                                           Backend backend)
{
    if (rhs.size() != m.rows()) throw StructuralError("solve: right-hand side has wrong length");
    RationalMatrix aug(m.rows(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i) aug(i, 0) = rhs[i];
    const Echelon e = rref(m.hcat(aug), backend);
    std::vector<Rational> v(m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt;
        v[e.pivots[i]] = e.reduced(i, m.cols());
    }
    return v;
}

}  // namespace paracr
