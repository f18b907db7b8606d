#pragma once

// Bilinear forms with a declared symmetry kind, restriction to subspaces,
// and radical computation.

#include "liesym/matrix.hpp"

#include <string>

namespace liesym {

enum class FormKind { symmetric, antisymmetric };

class BilinearForm {
public:
    BilinearForm(Matrix gram, FormKind kind) : gram_(std::move(gram)), kind_(kind) {
        if (!gram_.is_square()) throw error("gram matrix must be square");
        const Matrix t = gram_.transpose();
        const bool ok = (kind == FormKind::symmetric) ? (t == gram_)
                                                      : (GaussianRational(-1) * t == gram_);
        if (!ok)
            throw error(std::string("gram matrix does not match declared ") +
                        (kind == FormKind::symmetric ? "symmetric" : "antisymmetric") + " kind");
    }

    const Matrix& gram() const { return gram_; }
    FormKind kind() const { return kind_; }
    std::size_t dim() const { return gram_.rows(); }

    GaussianRational apply(const Vec& x, const Vec& y) const {
        if (x.size() != dim() || y.size() != dim()) throw error("form argument size mismatch");
        GaussianRational acc;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j)
                if (!gram_.at(i, j).is_zero()) acc += x[i] * gram_.at(i, j) * y[j];
        }
        return acc;
    }

    /// Gram matrix of the restriction to the columns of `basis`.
    Matrix restricted_gram(const Matrix& basis) const {
        return basis.transpose() * gram_ * basis;
    }

private:
    Matrix gram_;
    FormKind kind_;
};

/// Radical of the form restricted to `s`: vectors of s pairing to zero with
/// all of s, returned in ambient coordinates.
inline Subspace form_radical(const BilinearForm& b, const Subspace& s) {
    if (s.dim() == 0) return Subspace::zero(s.ambient());
    Matrix g = b.restricted_gram(s.basis());
    Matrix k = kernel(g);
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < k.cols(); ++j) gens.push_back(s.basis() * k.col(j));
    return Subspace::span(s.ambient(), gens);
}

inline bool nondegenerate_on(const BilinearForm& b, const Subspace& s) {
    return form_radical(b, s).dim() == 0;
}

/// Vectors of `within` pairing to zero with every vector of `s`.
inline Subspace orthogonal_complement(const BilinearForm& b, const Subspace& s,
                                      const Subspace& within) {
    if (s.dim() == 0) return within;
    // Condition rows: (gram * s_j)ᵀ x = 0 for each basis vector s_j,
    // solved inside `within` via its coordinates.
    Matrix cond(s.dim(), within.dim());
    for (std::size_t r = 0; r < s.dim(); ++r) {
        Vec gsj = b.gram() * s.basis_vector(r);
        for (std::size_t j = 0; j < within.dim(); ++j) {
            GaussianRational acc;
            Vec wj = within.basis_vector(j);
            for (std::size_t i = 0; i < wj.size(); ++i) acc += gsj[i] * wj[i];
            cond.at(r, j) = acc;
        }
    }
    Matrix k = kernel(cond);
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < k.cols(); ++j) gens.push_back(within.basis() * k.col(j));
    return Subspace::span(within.ambient(), gens);
}

}  // namespace liesym
