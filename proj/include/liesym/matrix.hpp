#pragma once

// Dense exact matrices over Q(i) and the row-reduction toolkit built on
// them: solving with inconsistency certificates, kernels, canonical
// subspaces.  Everything is exact; all pivoting is by first nonzero entry,
// so results are deterministic.

#include "liesym/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace liesym {

using Vec = std::vector<GaussianRational>;

inline Vec& operator+=(Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw error("vector size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec& operator-=(Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw error("vector size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(const GaussianRational& c, Vec v) {
    for (auto& x : v) x *= c;
    return v;
}
inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const GaussianRational& x) { return x.is_zero(); });
}
inline Vec unit_vec(std::size_t n, std::size_t j) {
    Vec v(n);
    v.at(j) = 1;
    return v;
}

/// The scalar m with w == m * ref, when one exists and ref is nonzero.
inline std::optional<GaussianRational> scalar_multiple_of(const Vec& w, const Vec& ref) {
    if (w.size() != ref.size()) return std::nullopt;
    GaussianRational m;
    bool set = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (ref[i].is_zero()) {
            if (!w[i].is_zero()) return std::nullopt;
            continue;
        }
        GaussianRational q = w[i] / ref[i];
        if (set && q != m) return std::nullopt;
        m = q;
        set = true;
    }
    if (!set) return std::nullopt;
    return m;
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw error("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_cols(const std::vector<Vec>& cols) {
        if (cols.empty()) return Matrix(0, 0);
        Matrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw error("ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& at(std::size_t i, std::size_t j) {
        check(i, j);
        return a_[i * cols_ + j];
    }
    const GaussianRational& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return a_[i * cols_ + j];
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(),
                           [](const GaussianRational& x) { return x.is_zero(); });
    }
    bool is_square() const { return rows_ == cols_; }

    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    Vec row(std::size_t i) const {
        Vec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec& v) {
        if (v.size() != rows_) throw error("column size mismatch");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    GaussianRational trace() const {
        if (!is_square()) throw error("trace of non-square matrix");
        GaussianRational t;
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const GaussianRational& c, Matrix m) {
        for (auto& x : m.a_) x *= c;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw error("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const GaussianRational& x = a.at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
            }
        return c;
    }
    friend Vec operator*(const Matrix& a, const Vec& v) {
        if (a.cols_ != v.size()) throw error("matrix-vector shape mismatch");
        Vec r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!a.at(i, j).is_zero()) r[i] += a.at(i, j) * v[j];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Commutator a*b - b*a.
    friend Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw error("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of bounds for " + std::to_string(rows_) + "x" +
                        std::to_string(cols_));
    }
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<GaussianRational> a_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw error("hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

/// Row echelon data: t * input == r, r in reduced row echelon form.
struct Echelon {
    Matrix r;
    Matrix t;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

inline Echelon rref(const Matrix& m) {
    Echelon e;
    e.r = m;
    e.t = Matrix::identity(m.rows());
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && e.r.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < e.r.cols(); ++j) std::swap(e.r.at(row, j), e.r.at(piv, j));
            for (std::size_t j = 0; j < e.t.cols(); ++j) std::swap(e.t.at(row, j), e.t.at(piv, j));
        }
        GaussianRational inv = e.r.at(row, col).inverse();
        for (std::size_t j = col; j < e.r.cols(); ++j) e.r.at(row, j) *= inv;
        for (std::size_t j = 0; j < e.t.cols(); ++j) e.t.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || e.r.at(i, col).is_zero()) continue;
            GaussianRational f = e.r.at(i, col);
            for (std::size_t j = col; j < e.r.cols(); ++j) e.r.at(i, j) -= f * e.r.at(row, j);
            for (std::size_t j = 0; j < e.t.cols(); ++j) e.t.at(i, j) -= f * e.t.at(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.rank = row;
    return e;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Columns span the kernel of m; the basis is canonical (one column per
/// free variable, in increasing column order).
inline Matrix kernel(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix k(m.cols(), free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t f = free_cols[fi];
        k.at(f, fi) = 1;
        for (std::size_t r = 0; r < e.rank; ++r) k.at(e.pivots[r], fi) = -e.r.at(r, f);
    }
    return k;
}

/// Outcome of solving a*x = b.  When inconsistent, `certificate` is a row
/// combination y with yᵀa = 0 and yᵀb != 0, witnessing unsolvability.
struct LinearSolution {
    bool consistent = false;
    Vec particular;
    Matrix homogeneous;
    Vec certificate;
};

inline LinearSolution solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw error("rhs size mismatch");
    Echelon e = rref(a);
    Vec tb = e.t * b;
    LinearSolution s;
    for (std::size_t i = e.rank; i < a.rows(); ++i) {
        if (!tb[i].is_zero()) {
            s.consistent = false;
            s.certificate = e.t.row(i);
            return s;
        }
    }
    s.consistent = true;
    s.particular = Vec(a.cols());
    for (std::size_t r = 0; r < e.rank; ++r) s.particular[e.pivots[r]] = tb[r];
    s.homogeneous = kernel(a);
    return s;
}

inline GaussianRational det(const Matrix& m) {
    if (!m.is_square()) throw error("determinant of non-square matrix");
    Matrix w = m;
    GaussianRational d(1);
    std::size_t n = w.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w.at(piv, col).is_zero()) ++piv;
        if (piv == n) return GaussianRational(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(col, j), w.at(piv, j));
            d = -d;
        }
        d *= w.at(col, col);
        GaussianRational inv = w.at(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (w.at(i, col).is_zero()) continue;
            GaussianRational f = w.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return d;
}

inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw error("inverse of non-square matrix");
    Echelon e = rref(m);
    if (e.rank != m.rows()) throw error("matrix is singular");
    return e.t;
}

/// A subspace of an ambient coordinate space, held by a canonical
/// (reduced column echelon) basis so that equal subspaces compare equal.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = Matrix(ambient, 0);
        return s;
    }
    static Subspace full(std::size_t ambient) {
        return span(Matrix::identity(ambient));
    }
    /// Span of the columns of `gens` (need not be independent).
    static Subspace span(const Matrix& gens) {
        Subspace s;
        s.ambient_ = gens.rows();
        Echelon e = rref(gens.transpose());
        std::vector<Vec> base;
        for (std::size_t i = 0; i < e.rank; ++i) base.push_back(e.r.row(i));
        s.basis_ = base.empty() ? Matrix(s.ambient_, 0) : Matrix::from_cols(base);
        return s;
    }
    static Subspace span(std::size_t ambient, const std::vector<Vec>& gens) {
        if (gens.empty()) return zero(ambient);
        return span(Matrix::from_cols(gens));
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_vector(std::size_t j) const { return basis_.col(j); }

    bool contains(const Vec& v) const {
        if (v.size() != ambient_) throw error("ambient dimension mismatch");
        if (liesym::is_zero(v)) return true;
        if (dim() == 0) return false;
        return solve(basis_, v).consistent;
    }
    bool contains(const Subspace& o) const {
        for (std::size_t j = 0; j < o.dim(); ++j)
            if (!contains(o.basis_vector(j))) return false;
        return true;
    }

    /// Coordinates of v in this basis; throws if v is not a member.
    Vec coordinates_of(const Vec& v) const {
        LinearSolution s = solve(basis_, v);
        if (!s.consistent) throw error("vector not in subspace");
        return s.particular;
    }

    Subspace sum(const Subspace& o) const {
        require_same_ambient(o);
        return span(hstack(basis_, o.basis_));
    }
    Subspace intersect(const Subspace& o) const {
        require_same_ambient(o);
        if (dim() == 0 || o.dim() == 0) return zero(ambient_);
        Matrix stacked = hstack(basis_, GaussianRational(-1) * o.basis_);
        Matrix k = kernel(stacked);
        std::vector<Vec> gens;
        for (std::size_t j = 0; j < k.cols(); ++j) {
            Vec coeffs(dim());
            for (std::size_t i = 0; i < dim(); ++i) coeffs[i] = k.at(i, j);
            gens.push_back(basis_ * coeffs);
        }
        return span(ambient_, gens);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    void require_same_ambient(const Subspace& o) const {
        if (ambient_ != o.ambient_) throw error("ambient dimension mismatch");
    }

    std::size_t ambient_ = 0;
    Matrix basis_;
};

/// Matrix of a linear map restricted to an invariant subspace: solves
/// op * basis == basis * r columnwise.  Throws if the subspace is not
/// invariant under op.
inline Matrix restrict_operator(const Matrix& op, const Subspace& s) {
    Matrix r(s.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
        Vec image = op * s.basis_vector(j);
        LinearSolution sol = solve(s.basis(), image);
        if (!sol.consistent) throw error("subspace is not invariant under operator");
        for (std::size_t i = 0; i < s.dim(); ++i) r.at(i, j) = sol.particular[i];
    }
    return r;
}

}  // namespace liesym
