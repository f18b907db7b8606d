#pragma once

// Finite-dimensional Lie algebras over Q(i), given by exact structure
// constants on a distinguished basis.  Validation reports carry witnesses:
// a failing Jacobi triple comes with its defect vector
//   [x,[y,z]] + [y,[z,x]] + [z,[x,y]].

#include "liesym/bilinear.hpp"
#include "liesym/eigen.hpp"
#include "liesym/matrix.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace liesym {

class LieAlgebra {
public:
    explicit LieAlgebra(std::size_t dim, std::vector<std::string> labels = {})
        : dim_(dim), labels_(std::move(labels)) {
        if (labels_.empty())
            for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
        if (labels_.size() != dim_) throw error("label count does not match dimension");
    }

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    Vec basis_vector(std::size_t i) const { return unit_vec(dim_, i); }

    /// Record [e_i, e_j] = v verbatim; the mirrored pair is implied unless
    /// it is also set explicitly (validation checks the two agree).
    void set_bracket(std::size_t i, std::size_t j, Vec v) {
        if (i >= dim_ || j >= dim_ || v.size() != dim_) throw error("bracket entry out of range");
        table_[{i, j}] = std::move(v);
    }
    void add_bracket_term(std::size_t i, std::size_t j, std::size_t k, const GaussianRational& c) {
        if (i >= dim_ || j >= dim_ || k >= dim_) throw error("bracket entry out of range");
        auto it = table_.find({i, j});
        if (it == table_.end()) it = table_.emplace(std::make_pair(i, j), Vec(dim_)).first;
        it->second[k] += c;
    }

    Vec bracket_basis(std::size_t i, std::size_t j) const {
        auto it = table_.find({i, j});
        if (it != table_.end()) return it->second;
        it = table_.find({j, i});
        if (it != table_.end()) {
            Vec v(dim_);
            v -= it->second;
            return v;
        }
        return Vec(dim_);
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        if (x.size() != dim_ || y.size() != dim_) throw error("bracket operand has wrong dimension");
        Vec out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                Vec b = bracket_basis(i, j);
                GaussianRational c = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k) out[k] += c * b[k];
            }
        }
        return out;
    }

    /// Matrix of ad(x): column j holds [x, e_j].
    Matrix ad(const Vec& x) const {
        Matrix m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec col = bracket(x, basis_vector(j));
            for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
        }
        return m;
    }
    Matrix ad_basis(std::size_t i) const { return ad(basis_vector(i)); }

    struct Validation {
        bool ok = true;
        std::string reason;
        std::vector<std::size_t> witness;  // basis indices of the failure
        Vec defect;
    };

    /// Checks self-brackets vanish, explicitly doubled entries are
    /// antisymmetric, and the Jacobi identity holds on all basis triples.
    Validation validate() const {
        for (const auto& [key, v] : table_) {
            if (key.first == key.second && !is_zero(v))
                return {false, "nonzero self-bracket", {key.first}, v};
            if (key.first != key.second && table_.count({key.second, key.first})) {
                Vec sum = v + table_.at({key.second, key.first});
                if (!is_zero(sum))
                    return {false, "antisymmetry violated", {key.first, key.second}, sum};
            }
        }
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = j + 1; k < dim_; ++k) {
                    Vec d = bracket(basis_vector(i), bracket_basis(j, k)) +
                            bracket(basis_vector(j), bracket_basis(k, i)) +
                            bracket(basis_vector(k), bracket_basis(i, j));
                    if (!is_zero(d)) return {false, "Jacobi identity fails", {i, j, k}, d};
                }
        return {};
    }

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::map<std::pair<std::size_t, std::size_t>, Vec> table_;
};

/// Span of all [a, b] with a in s, b in t.
inline Subspace bracket_space(const LieAlgebra& g, const Subspace& s, const Subspace& t) {
    std::vector<Vec> gens;
    for (std::size_t a = 0; a < s.dim(); ++a)
        for (std::size_t b = 0; b < t.dim(); ++b)
            gens.push_back(g.bracket(s.basis_vector(a), t.basis_vector(b)));
    return Subspace::span(g.dim(), gens);
}

inline std::vector<Subspace> derived_series(const LieAlgebra& g) {
    std::vector<Subspace> series{Subspace::full(g.dim())};
    while (series.back().dim() > 0) {
        Subspace next = bracket_space(g, series.back(), series.back());
        if (next == series.back()) break;
        series.push_back(next);
    }
    return series;
}

inline std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
    std::vector<Subspace> series{Subspace::full(g.dim())};
    while (series.back().dim() > 0) {
        Subspace next = bracket_space(g, series.front(), series.back());
        if (next == series.back()) break;
        series.push_back(next);
    }
    return series;
}

inline bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }
inline bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }
inline bool is_abelian_subspace(const LieAlgebra& g, const Subspace& s) {
    return bracket_space(g, s, s).dim() == 0;
}

/// Center: simultaneous kernel of all basis adjoints, computed from the
/// stacked column actions.
inline Subspace center(const LieAlgebra& g) {
    std::size_t n = g.dim();
    if (n == 0) return Subspace::zero(0);
    Matrix stacked(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix a = g.ad_basis(i);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) stacked.at(i * n + r, c) = a.at(r, c);
    }
    return Subspace::span(kernel(stacked));
}

/// Gram matrix of the Killing form B(x, y) = tr(ad x ad y) on the basis.
inline Matrix killing_gram(const LieAlgebra& g) {
    std::size_t n = g.dim();
    std::vector<Matrix> ads;
    ads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad_basis(i));
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            GaussianRational t = (ads[i] * ads[j]).trace();
            k.at(i, j) = t;
            k.at(j, i) = t;
        }
    return k;
}

inline BilinearForm killing_form(const LieAlgebra& g) {
    return BilinearForm(killing_gram(g), FormKind::symmetric);
}

inline bool is_ideal(const LieAlgebra& g, const Subspace& s) {
    return s.contains(bracket_space(g, Subspace::full(g.dim()), s));
}

/// Maximal solvable ideal, via the trace-form criterion: the radical is the
/// Killing-orthogonal complement of the derived algebra.  The result is
/// re-verified to be a solvable ideal.
inline Subspace radical(const LieAlgebra& g) {
    Subspace derived = bracket_space(g, Subspace::full(g.dim()), Subspace::full(g.dim()));
    Subspace rad = orthogonal_complement(killing_form(g), derived, Subspace::full(g.dim()));
    if (!is_ideal(g, rad)) throw error("radical computation produced a non-ideal");
    Subspace cur = rad;
    for (std::size_t step = 0; step <= g.dim() + 1 && cur.dim() > 0; ++step) {
        Subspace next = bracket_space(g, cur, cur);
        if (next == cur) throw error("radical computation produced a non-solvable ideal");
        cur = next;
    }
    return rad;
}

/// Lie algebra structure induced on a bracket-closed subspace, using the
/// given independent ambient columns as the new basis, in that order.
inline LieAlgebra subalgebra_from_basis(const LieAlgebra& g, const Matrix& basis,
                                        std::vector<std::string> labels = {}) {
    std::size_t d = basis.cols();
    if (rank(basis) != d) throw error("subalgebra basis must be independent");
    if (labels.empty())
        for (std::size_t i = 0; i < d; ++i) labels.push_back("s" + std::to_string(i));
    LieAlgebra sub(d, std::move(labels));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Vec b = g.bracket(basis.col(i), basis.col(j));
            LinearSolution s = solve(basis, b);
            if (!s.consistent) throw error("subspace is not closed under bracket");
            sub.set_bracket(i, j, s.particular);
        }
    return sub;
}

/// Lie algebra structure induced on a bracket-closed subspace, in the
/// coordinates of its canonical basis.
inline LieAlgebra subalgebra_from_subspace(const LieAlgebra& g, const Subspace& s,
                                           std::vector<std::string> labels = {}) {
    return subalgebra_from_basis(g, s.basis(), std::move(labels));
}

/// Quotient by an ideal.  The complement is the canonical one spanned by
/// the standard basis vectors away from the ideal's pivot coordinates;
/// `projection * section` is the identity on the quotient.
struct QuotientMap {
    LieAlgebra algebra;
    Matrix projection;                    // dim(g) -> dim(q)
    Matrix section;                       // dim(q) -> dim(g), standard-vector lift
    std::vector<std::size_t> complement;  // ambient indices of the lifted basis
};

inline QuotientMap quotient(const LieAlgebra& g, const Subspace& ideal) {
    if (!is_ideal(g, ideal)) throw error("quotient requires an ideal");
    std::size_t n = g.dim();
    Echelon e = rref(ideal.basis().transpose());
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) comp.push_back(i);
    std::size_t q = comp.size();

    // Change of basis [ideal basis | complement]: inverse rows past the
    // ideal block give quotient coordinates.
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < ideal.dim(); ++j) cols.push_back(ideal.basis_vector(j));
    for (std::size_t c : comp) cols.push_back(unit_vec(n, c));
    Matrix m = Matrix::from_cols(cols);
    Matrix minv = inverse(m);
    Matrix proj(q, n), sect(n, q);
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < n; ++c) proj.at(r, c) = minv.at(ideal.dim() + r, c);
    for (std::size_t j = 0; j < q; ++j) sect.at(comp[j], j) = 1;

    std::vector<std::string> labels;
    for (std::size_t c : comp) labels.push_back(g.label(c));
    LieAlgebra qa(q, std::move(labels));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j)
            qa.set_bracket(i, j, proj * g.bracket(sect.col(i), sect.col(j)));
    return {std::move(qa), std::move(proj), std::move(sect), std::move(comp)};
}

/// Preimage of a quotient subspace under the projection.
inline Subspace preimage(const QuotientMap& qm, const Subspace& s, const Subspace& ideal) {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < s.dim(); ++j) gens.push_back(qm.section * s.basis_vector(j));
    for (std::size_t j = 0; j < ideal.dim(); ++j) gens.push_back(ideal.basis_vector(j));
    return Subspace::span(qm.section.rows(), gens);
}

struct LeviReport {
    bool ok = true;
    std::string reason;
};

/// Certifies a claimed semisimple complement: bracket-closed, intrinsically
/// nondegenerate trace form, and a vector-space complement to the radical.
inline LeviReport verify_levi(const LieAlgebra& g, const Subspace& levi) {
    for (std::size_t i = 0; i < levi.dim(); ++i)
        for (std::size_t j = i + 1; j < levi.dim(); ++j)
            if (!levi.contains(g.bracket(levi.basis_vector(i), levi.basis_vector(j))))
                return {false, "complement is not closed under bracket"};
    if (levi.dim() > 0) {
        LieAlgebra sub = subalgebra_from_subspace(g, levi);
        if (rank(killing_gram(sub)) != levi.dim())
            return {false, "complement has degenerate trace form"};
    }
    Subspace rad = radical(g);
    if (levi.intersect(rad).dim() != 0) return {false, "complement meets the radical"};
    if (levi.sum(rad) != Subspace::full(g.dim()))
        return {false, "complement plus radical does not span"};
    return {};
}

/// Semidirect product of a base algebra with an abelian summand it acts
/// on: `action[i]` is the operator of the i-th base basis vector on the
/// abelian part (the caller supplies a genuine representation).
inline LieAlgebra semidirect_abelian(const LieAlgebra& base, const std::vector<Matrix>& action,
                                     std::vector<std::string> module_labels = {}) {
    if (action.size() != base.dim()) throw error("one action operator per base basis vector");
    std::size_t m = action.empty() ? 0 : action.front().rows();
    for (const auto& a : action)
        if (!a.is_square() || a.rows() != m) throw error("action operators must share a square shape");
    std::vector<std::string> labels = base.labels();
    if (module_labels.empty())
        for (std::size_t k = 0; k < m; ++k) module_labels.push_back("m" + std::to_string(k));
    if (module_labels.size() != m) throw error("module label count mismatch");
    for (auto& l : module_labels) labels.push_back(std::move(l));

    std::size_t n = base.dim() + m;
    LieAlgebra g(n, std::move(labels));
    for (std::size_t i = 0; i < base.dim(); ++i)
        for (std::size_t j = i + 1; j < base.dim(); ++j) {
            Vec v(n);
            Vec w = base.bracket_basis(i, j);
            for (std::size_t k = 0; k < base.dim(); ++k) v[k] = w[k];
            g.set_bracket(i, j, v);
        }
    for (std::size_t i = 0; i < base.dim(); ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec v(n);
            for (std::size_t k = 0; k < m; ++k) v[base.dim() + k] = action[i].at(k, j);
            g.set_bracket(i, base.dim() + j, v);
        }
    return g;
}

/// Outer direct sum, labels concatenated.
inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels()) labels.push_back(l);
    LieAlgebra g(a.dim() + b.dim(), std::move(labels));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            Vec v(g.dim());
            Vec w = a.bracket_basis(i, j);
            for (std::size_t k = 0; k < a.dim(); ++k) v[k] = w[k];
            g.set_bracket(i, j, v);
        }
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j) {
            Vec v(g.dim());
            Vec w = b.bracket_basis(i, j);
            for (std::size_t k = 0; k < b.dim(); ++k) v[a.dim() + k] = w[k];
            g.set_bracket(a.dim() + i, a.dim() + j, v);
        }
    return g;
}

}  // namespace liesym
