#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "strata/fp/field.hpp"
#include "strata/fp/kernels.hpp"

namespace strata::fp {

using Vec = std::vector<uint32_t>;

/// Dense row-major matrix over F_p.  The computational workhorse behind the
/// sparse interface; row operations go through the dispatched kernels.
class DenseMat {
public:
    DenseMat() : rows_(0), cols_(0), p_(2) {}
    DenseMat(std::size_t rows, std::size_t cols, uint32_t p)
        : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    static DenseMat identity(std::size_t n, uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    uint32_t p() const { return p_; }

    uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, uint32_t v) { a_[i * cols_ + j] = v; }
    uint32_t* row(std::size_t i) { return a_.data() + i * cols_; }
    const uint32_t* row(std::size_t i) const { return a_.data() + i * cols_; }

    bool is_zero() const;
    bool operator==(const DenseMat& o) const = default;

    DenseMat mul(const DenseMat& o) const;
    DenseMat add(const DenseMat& o) const;
    DenseMat sub(const DenseMat& o) const;
    DenseMat scaled(uint32_t c) const;
    DenseMat transpose() const;
    DenseMat kron(const DenseMat& o) const;
    Vec apply(const Vec& v) const;  // matrix * column vector

private:
    std::size_t rows_, cols_;
    uint32_t p_;
    std::vector<uint32_t> a_;
};

struct DenseEchelon {
    DenseMat R;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with deterministic pivoting: lowest-index column
/// first, then lowest-index remaining row.
DenseEchelon rref(DenseMat A);

std::size_t rank(const DenseMat& A);

/// Basis of the right kernel {v : Av = 0}; deterministic (one vector per free
/// column, in column order).
std::vector<Vec> kernel_basis(const DenseMat& A);

/// Exact solution of Ax = b, or nullopt when inconsistent.  Every returned
/// solution is verified by substitution.
std::optional<Vec> solve(const DenseMat& A, const Vec& b);

/// Coefficients c_0..c_n of det(x*I - A), monic of degree n.  Hessenberg
/// reduction followed by the standard recurrence.
Vec charpoly(const DenseMat& A);

/// Incrementally maintained reduced row echelon basis of a row space.
class RowBasis {
public:
    RowBasis(std::size_t cols, uint32_t p) : cols_(cols), p_(p) {}

    /// Reduce v against the basis and insert the residual if nonzero.
    /// Returns true when the rank grew.
    bool add(Vec v);

    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;

    /// Coordinates of v in the basis rows (RREF: read off pivot entries), or
    /// nullopt when v is outside the span.
    std::optional<Vec> coords(const Vec& v) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Basis of {v : v orthogonal-free-coordinates}, i.e. the nullspace of the
    /// stacked basis rows viewed as a matrix.
    std::vector<Vec> nullspace() const;

    DenseMat as_matrix() const;

private:
    std::size_t cols_;
    uint32_t p_;
    std::vector<Vec> rows_;            // RREF rows ordered by pivot column
    std::vector<std::size_t> pivots_;  // pivot column per row
};

/// Sparse matrix in canonical triplet form: entries sorted by (row, col),
/// no duplicates, no explicit zeros.
struct SparseEntry {
    std::size_t row, col;
    uint32_t val;
    bool operator==(const SparseEntry&) const = default;
};

struct SparseEchelonResult;

class SparseMatrix {
public:
    SparseMatrix(std::size_t rows, std::size_t cols, uint32_t p)
        : rows_(rows), cols_(cols), p_(p) {}
    SparseMatrix(std::size_t rows, std::size_t cols, uint32_t p, std::vector<SparseEntry> entries);

    static SparseMatrix from_dense(const DenseMat& d);
    static SparseMatrix identity(std::size_t n, uint32_t p);
    DenseMat to_dense() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    uint32_t p() const { return p_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    bool operator==(const SparseMatrix& o) const = default;

    SparseEchelonResult echelon() const;
    std::size_t rank() const;
    std::vector<Vec> kernel_basis() const;
    std::optional<Vec> solve(const Vec& b) const;

private:
    std::size_t rows_, cols_;
    uint32_t p_;
    std::vector<SparseEntry> entries_;
};

struct SparseEchelonResult {
    SparseMatrix R;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

}  // namespace strata::fp
