#pragma once

#include "polyinv/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polyinv {

using QVector = std::vector<Rational>;

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    QVector row(std::size_t i) const;
    QVector apply(const QVector& v) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct Echelon {
    std::vector<QVector> rows;       // nonzero rows of the reduced echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

// Gauss-Jordan over Q: reduced row echelon form, pivots chosen left to right.
Echelon rref(const QMatrix& A);
std::size_t rank(const QMatrix& A);

// Right-kernel basis in free-variable form: for each free column f (ascending),
// a vector with 1 at f, 0 at the other free columns.
std::vector<QVector> kernel_basis(const QMatrix& A);
std::vector<QVector> kernel_basis(const Echelon& E, std::size_t cols);

// Canonical basis of a span: reduced echelon rows (first nonzero entry 1).
std::vector<QVector> canonical_span(const std::vector<QVector>& vs, std::size_t dim);

std::vector<QVector> kernel_of_linear_forms(const std::vector<LinearForm>& forms, std::size_t m);

// Coefficient vectors of polynomials with respect to a list of independent generators.
// Returns nothing when some polynomial is outside their span.
std::optional<std::vector<QVector>> coordinates(const std::vector<Polynomial>& ps, const std::vector<Polynomial>& gens);
QMatrix coefficient_matrix(const std::vector<Polynomial>& ps);
Polynomial combine(const QVector& coeffs, const std::vector<Polynomial>& gens, const Ctx& ctx);

// ---- modular arithmetic ----

namespace modp {

using u64 = std::uint64_t;

u64 mul(u64 a, u64 b, u64 p);
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);
// Nothing when p divides the denominator.
std::optional<u64> reduce(const Rational& q, u64 p);
// Primes just below 2^62, largest first.
u64 nth_prime(std::size_t i);

// Row-echelon accumulator modulo p with incremental insertion.
class Echelon {
public:
    Echelon(std::size_t cols, u64 p) : cols_(cols), p_(p) {}
    // Returns true when the row increased the rank.
    bool insert(std::vector<u64> row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    // Pivot columns ascending and the free-variable kernel basis.
    std::vector<std::size_t> pivots() const;
    std::vector<std::vector<u64>> kernel() const;

private:
    std::size_t cols_;
    u64 p_;
    std::vector<std::vector<u64>> rows_;  // each row normalized with pivot 1
    std::vector<std::size_t> piv_;
};

bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out);

}  // namespace modp

struct ModularKernel {
    std::vector<QVector> basis;  // free-variable form, reconstructed over Q
    std::size_t dim_mod = 0;     // kernel dimension at the primes used
    std::size_t primes_used = 0;
};

// `rows_mod(p)` returns the constraint matrix reduced modulo p, or nothing for a bad prime.
// Kernel vectors are CRT-lifted across primes with identical pivot structure and rationally
// reconstructed; succeeds when two consecutive reconstructions agree.
std::optional<ModularKernel> modular_kernel(
    const std::function<std::optional<std::vector<std::vector<modp::u64>>>(modp::u64)>& rows_mod, std::size_t cols,
    std::size_t max_primes = 400);

// ---- polynomial matrices ----

class PolyMatrix {
public:
    PolyMatrix(Ctx ctx, std::size_t rows, std::size_t cols);

    const Ctx& ctx() const { return ctx_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Polynomial& at(std::size_t i, std::size_t j) { return num_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return num_[i * cols_ + j]; }

    // Entries become num/den when denominators are set.
    bool has_denominators() const { return !den_.empty(); }
    const Polynomial& den(std::size_t i, std::size_t j) const;
    void set_den(std::size_t i, std::size_t j, Polynomial d);

    // Throws if a denominator vanishes at the point.
    QMatrix evaluate(std::span<const Rational> point) const;
    std::string entry_string(std::size_t i, std::size_t j) const;

private:
    Ctx ctx_;
    std::size_t rows_, cols_;
    std::vector<Polynomial> num_;
    std::vector<Polynomial> den_;
};

// Row i holds the coefficient polynomials of y_0..y_{m-1} in ps[i]. The y-variables are
// ctx indices [y_begin, y_begin+m); every other occurring variable must be in x_ctx (a prefix).
PolyMatrix matrix_from_linear_polys(const std::vector<Polynomial>& ps, std::size_t y_begin, std::size_t m,
                                    const Ctx& x_ctx);

// Fraction-free (Bareiss) determinant of a square polynomial matrix given row-major.
Polynomial determinant(std::vector<Polynomial> M, std::size_t n);

struct Minor {
    std::vector<std::size_t> rows, cols;
    Polynomial det;
};

// All s x s minors; index sets in lexicographic order (rows outer, columns inner).
std::vector<Minor> minors(const PolyMatrix& A, std::size_t s, std::size_t limit = 200000);

// Cell of a parametric kernel: points where `equations` vanish and `inequation` does not.
// There rank A = rank, and the columns of `kernel` (cols x (cols - rank), entries
// numerator/denominator) form a kernel basis of A.
struct KernelCell {
    std::vector<Polynomial> equations;
    Polynomial inequation;
    std::size_t rank = 0;
    std::vector<std::size_t> minor_rows, minor_cols;
    PolyMatrix kernel;        // rational-function form, denominators = det M
    PolyMatrix kernel_poly;   // same columns times polynomials nonzero on the cell (polynomial entries)

    bool contains(std::span<const Rational> point) const;
};

// Covers the parameter space by cells ordered by rank descending, then by the index sets of
// the chosen nonsingular minor. Within one rank the cells are made disjoint by adding the
// determinants of earlier minors to the equations; empty cells are skipped via radical
// membership.
std::vector<KernelCell> parametric_kernel_cells(const PolyMatrix& A);

// Index of the first cell containing the point.
std::optional<std::size_t> locate_cell(const std::vector<KernelCell>& cells, std::span<const Rational> point);

}  // namespace polyinv
