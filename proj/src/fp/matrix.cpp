#include "strata/fp/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata::fp {

DenseMat DenseMat::identity(std::size_t n, uint32_t p) {
    DenseMat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1 % p);
    return m;
}

bool DenseMat::is_zero() const {
    for (uint32_t v : a_)
        if (v) return false;
    return true;
}

DenseMat DenseMat::mul(const DenseMat& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix product shape mismatch");
    DenseMat r(rows_, o.cols_, p_);
    const Kernels& k = active_kernels();
    for (std::size_t i = 0; i < rows_; ++i) {
        uint32_t* out = r.row(i);
        for (std::size_t t = 0; t < cols_; ++t) {
            uint32_t c = at(i, t);
            if (c) k.axpy(out, o.row(t), c, o.cols_, p_);
        }
    }
    return r;
}

DenseMat DenseMat::add(const DenseMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("matrix sum shape mismatch");
    PrimeField F(p_);
    DenseMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.add(a_[i], o.a_[i]);
    return r;
}

DenseMat DenseMat::sub(const DenseMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("matrix diff shape mismatch");
    PrimeField F(p_);
    DenseMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.sub(a_[i], o.a_[i]);
    return r;
}

DenseMat DenseMat::scaled(uint32_t c) const {
    DenseMat r = *this;
    active_kernels().scale(r.a_.data(), c % p_, r.a_.size(), p_);
    return r;
}

DenseMat DenseMat::transpose() const {
    DenseMat r(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

DenseMat DenseMat::kron(const DenseMat& o) const {
    DenseMat r(rows_ * o.rows_, cols_ * o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            uint32_t c = at(i, j);
            if (!c) continue;
            for (std::size_t u = 0; u < o.rows_; ++u)
                for (std::size_t v = 0; v < o.cols_; ++v)
                    r.set(i * o.rows_ + u, j * o.cols_ + v, (c * o.at(u, v)) % p_);
        }
    return r;
}

Vec DenseMat::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    Vec out(rows_, 0);
    const Kernels& k = active_kernels();
    for (std::size_t i = 0; i < rows_; ++i) out[i] = k.dot(row(i), v.data(), cols_, p_);
    return out;
}

DenseEchelon rref(DenseMat A) {
    const uint32_t p = A.p();
    PrimeField F(p);
    const Kernels& k = active_kernels();
    DenseEchelon res;
    std::size_t r = 0;
    for (std::size_t col = 0; col < A.cols() && r < A.rows(); ++col) {
        std::size_t piv = A.rows();
        for (std::size_t i = r; i < A.rows(); ++i)
            if (A.at(i, col)) {
                piv = i;
                break;
            }
        if (piv == A.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < A.cols(); ++j) {
                uint32_t t = A.at(r, j);
                A.set(r, j, A.at(piv, j));
                A.set(piv, j, t);
            }
        uint32_t inv = F.inv(A.at(r, col));
        if (inv != 1) k.scale(A.row(r), inv, A.cols(), p);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r) continue;
            uint32_t c = A.at(i, col);
            if (c) k.axpy(A.row(i), A.row(r), p - c, A.cols(), p);
        }
        res.pivots.push_back(col);
        ++r;
    }
    res.rank = r;
    res.R = std::move(A);
    return res;
}

std::size_t rank(const DenseMat& A) { return rref(A).rank; }

std::vector<Vec> kernel_basis(const DenseMat& A) {
    DenseEchelon e = rref(A);
    const uint32_t p = A.p();
    PrimeField F(p);
    std::vector<bool> is_pivot(A.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(A.cols(), 0);
        v[f] = 1 % p;
        for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = F.neg(e.R.at(r, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const DenseMat& A, const Vec& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve shape mismatch");
    DenseMat aug(A.rows(), A.cols() + 1, A.p());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.set(i, j, A.at(i, j));
        aug.set(i, A.cols(), b[i]);
    }
    DenseEchelon e = rref(std::move(aug));
    Vec x(A.cols(), 0);
    for (std::size_t r = 0; r < e.rank; ++r) {
        if (e.pivots[r] == A.cols()) return std::nullopt;  // pivot in the RHS column
        x[e.pivots[r]] = e.R.at(r, A.cols());
    }
    // Exactness check by substitution; cheap relative to the elimination.
    if (A.apply(x) != b) throw std::logic_error("solve produced an invalid solution");
    return x;
}

namespace {

// Similarity reduction to upper Hessenberg form in place.
void hessenberg(DenseMat& H) {
    const std::size_t n = H.rows();
    const uint32_t p = H.p();
    PrimeField F(p);
    if (n < 3) return;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = n;
        for (std::size_t i = j + 1; i < n; ++i)
            if (H.at(i, j)) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) {
                uint32_t t = H.at(j + 1, c);
                H.set(j + 1, c, H.at(piv, c));
                H.set(piv, c, t);
            }
            for (std::size_t r = 0; r < n; ++r) {
                uint32_t t = H.at(r, j + 1);
                H.set(r, j + 1, H.at(r, piv));
                H.set(r, piv, t);
            }
        }
        uint32_t inv = F.inv(H.at(j + 1, j));
        for (std::size_t i = j + 2; i < n; ++i) {
            uint32_t m = F.mul(H.at(i, j), inv);
            if (!m) continue;
            // Row op R_i -= m R_{j+1}, matching column op C_{j+1} += m C_i.
            active_kernels().axpy(H.row(i), H.row(j + 1), p - m, n, p);
            for (std::size_t r = 0; r < n; ++r) H.set(r, j + 1, F.add(H.at(r, j + 1), F.mul(m, H.at(r, i))));
        }
    }
}

}  // namespace

Vec charpoly(const DenseMat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("charpoly needs a square matrix");
    const std::size_t n = A.rows();
    const uint32_t p = A.p();
    PrimeField F(p);
    DenseMat H = A;
    hessenberg(H);
    // p_m = charpoly of leading m x m block of H, via expansion along the
    // last column of the Hessenberg matrix.
    std::vector<Vec> ps;
    ps.push_back(Vec{1 % p});
    for (std::size_t m = 1; m <= n; ++m) {
        Vec q(m + 1, 0);
        const Vec& prev = ps[m - 1];
        // (x - H[m-1][m-1]) * prev
        for (std::size_t t = 0; t < prev.size(); ++t) {
            q[t + 1] = F.add(q[t + 1], prev[t]);
            q[t] = F.sub(q[t], F.mul(H.at(m - 1, m - 1), prev[t]));
        }
        uint32_t subprod = 1 % p;
        for (std::size_t i = 1; i < m; ++i) {
            subprod = F.mul(subprod, H.at(m - i, m - i - 1));
            if (!subprod) break;
            uint32_t c = F.mul(H.at(m - 1 - i, m - 1), subprod);
            if (!c) continue;
            const Vec& lower = ps[m - 1 - i];
            for (std::size_t t = 0; t < lower.size(); ++t) q[t] = F.sub(q[t], F.mul(c, lower[t]));
        }
        ps.push_back(std::move(q));
    }
    return ps[n];
}

bool RowBasis::add(Vec v) {
    if (v.size() != cols_) throw std::invalid_argument("row basis width mismatch");
    v = reduce(std::move(v));
    std::size_t piv = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
        if (v[j]) {
            piv = j;
            break;
        }
    if (piv == cols_) return false;
    PrimeField F(p_);
    uint32_t inv = F.inv(v[piv]);
    if (inv != 1) active_kernels().scale(v.data(), inv, cols_, p_);
    // Keep full RREF: clear this pivot column in existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        uint32_t c = rows_[r][piv];
        if (c) active_kernels().axpy(rows_[r].data(), v.data(), p_ - c, cols_, p_);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, piv);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
    return true;
}

Vec RowBasis::reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        uint32_t c = v[pivots_[r]];
        if (c) active_kernels().axpy(v.data(), rows_[r].data(), p_ - c, cols_, p_);
    }
    return v;
}

bool RowBasis::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](uint32_t x) { return x == 0; });
}

std::optional<Vec> RowBasis::coords(const Vec& v) const {
    if (!contains(v)) return std::nullopt;
    Vec c(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) c[r] = v[pivots_[r]];
    return c;
}

std::vector<Vec> RowBasis::nullspace() const { return strata::fp::kernel_basis(as_matrix()); }

DenseMat RowBasis::as_matrix() const {
    DenseMat m(rows_.size(), cols_, p_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, rows_[i][j]);
    return m;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, uint32_t p, std::vector<SparseEntry> entries)
    : rows_(rows), cols_(cols), p_(p) {
    PrimeField F(p);
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (const SparseEntry& e : entries) {
        if (e.row >= rows || e.col >= cols) throw std::invalid_argument("sparse entry out of bounds");
        uint32_t v = e.val % p;
        if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
            entries_.back().val = F.add(entries_.back().val, v);
            if (entries_.back().val == 0) entries_.pop_back();
        } else if (v) {
            entries_.push_back({e.row, e.col, v});
        }
    }
}

SparseMatrix SparseMatrix::from_dense(const DenseMat& d) {
    SparseMatrix s(d.rows(), d.cols(), d.p());
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (uint32_t v = d.at(i, j)) s.entries_.push_back({i, j, v});
    return s;
}

SparseMatrix SparseMatrix::identity(std::size_t n, uint32_t p) {
    return from_dense(DenseMat::identity(n, p));
}

DenseMat SparseMatrix::to_dense() const {
    DenseMat d(rows_, cols_, p_);
    for (const SparseEntry& e : entries_) d.set(e.row, e.col, e.val);
    return d;
}

SparseEchelonResult SparseMatrix::echelon() const {
    DenseEchelon e = rref(to_dense());
    return {from_dense(e.R), e.rank, e.pivots};
}

std::size_t SparseMatrix::rank() const { return strata::fp::rank(to_dense()); }

std::vector<Vec> SparseMatrix::kernel_basis() const { return strata::fp::kernel_basis(to_dense()); }

std::optional<Vec> SparseMatrix::solve(const Vec& b) const { return strata::fp::solve(to_dense(), b); }

}  // namespace strata::fp
