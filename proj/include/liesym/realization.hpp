#pragma once

// Extrinsic data: a pair (g, k, p) acting affinely on a split symplectic
// vector space V = V1 (+) V2 through a linear part Lambda: g -> sp(V) and a
// translation part v: g -> V.  Validation runs a fixed sequence of named
// checks (s1, s2, s3, a, b, c, d, e) and reports the first failure.

#include "liesym/bilinear.hpp"
#include "liesym/eigen.hpp"
#include "liesym/matrix.hpp"
#include "liesym/pair.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesym {

/// Membership in the symplectic algebra of the form with gram g:
/// g a + a^T g = 0.
inline bool in_sp(const Matrix& a, const Matrix& gram) {
    return (gram * a + a.transpose() * gram).is_zero();
}

/// The rank-two symplectic endomorphism x o y = y x^T gram + x y^T gram.
inline Matrix circ(const Vec& x, const Vec& y, const Matrix& gram) {
    std::size_t n = gram.rows();
    if (x.size() != n || y.size() != n) throw error("circ operands must match the form");
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            GaussianRational acc;
            for (std::size_t k = 0; k < n; ++k) acc += (y[r] * x[k] + x[r] * y[k]) * gram.at(k, c);
            m.at(r, c) = acc;
        }
    return m;
}

/// Element (A, u) of the affine symplectic algebra.
struct AffineElement {
    Matrix a;
    Vec u;
};

/// [(A,u),(B,w)] = ([A,B], Aw - Bu).
inline AffineElement asp_bracket(const AffineElement& x, const AffineElement& y) {
    return {commutator(x.a, y.a), x.a * y.u - y.a * x.u};
}

struct SplitSymplecticSpace {
    BilinearForm omega;
    Subspace v1, v2;

    SplitSymplecticSpace(BilinearForm om, Subspace a, Subspace b)
        : omega(std::move(om)), v1(std::move(a)), v2(std::move(b)) {
        if (v1.ambient() != omega.dim() || v2.ambient() != omega.dim())
            throw error("split components must live in the form's space");
    }
    std::size_t dim() const { return omega.dim(); }
};

struct RealizationCheck {
    bool ok = true;
    std::string check;  // empty when ok; else one of s1, s2, s3, a, b, c, d, e
    std::string reason;
};

class ExtrinsicRealization {
public:
    ExtrinsicRealization(SymmetricPair pair, SplitSymplecticSpace space, std::vector<Matrix> lambda,
                         Matrix v)
        : pair_(std::move(pair)), space_(std::move(space)), lambda_(std::move(lambda)), v_(std::move(v)) {
        std::size_t n = pair_.algebra().dim(), d = space_.dim();
        if (lambda_.size() != n) throw error("one linear part per algebra basis vector");
        for (const auto& m : lambda_)
            if (m.rows() != d || m.cols() != d) throw error("linear parts must act on the space");
        if (v_.rows() != d || v_.cols() != n) throw error("translation part must map algebra to space");
    }

    const SymmetricPair& pair() const { return pair_; }
    const SplitSymplecticSpace& space() const { return space_; }
    const std::vector<Matrix>& lambda() const { return lambda_; }
    const Matrix& v() const { return v_; }

    Matrix lambda_of(const Vec& x) const {
        Matrix m(space_.dim(), space_.dim());
        for (std::size_t i = 0; i < lambda_.size(); ++i)
            if (!x[i].is_zero()) m += x[i] * lambda_[i];
        return m;
    }
    Vec translation_of(const Vec& x) const { return v_ * x; }

private:
    SymmetricPair pair_;
    SplitSymplecticSpace space_;
    std::vector<Matrix> lambda_;
    Matrix v_;
};

inline RealizationCheck validate_space(const SplitSymplecticSpace& s) {
    if (rank(s.omega.gram()) != s.dim()) return {false, "s1", "form on the space is degenerate"};
    if (s.v1.intersect(s.v2).dim() != 0 || s.v1.sum(s.v2) != Subspace::full(s.dim()))
        return {false, "s2", "V1 and V2 do not split the space"};
    for (std::size_t i = 0; i < s.v1.dim(); ++i)
        for (std::size_t j = 0; j < s.v2.dim(); ++j)
            if (!s.omega.apply(s.v1.basis_vector(i), s.v2.basis_vector(j)).is_zero())
                return {false, "s3", "V1 and V2 are not orthogonal for the form"};
    return {};
}

inline RealizationCheck validate_realization(const ExtrinsicRealization& r) {
    RealizationCheck sc = validate_space(r.space());
    if (!sc.ok) return sc;

    const LieAlgebra& g = r.pair().algebra();
    const Matrix& gram = r.space().omega.gram();
    const Subspace &v1 = r.space().v1, &v2 = r.space().v2;

    for (std::size_t i = 0; i < g.dim(); ++i)
        if (!in_sp(r.lambda()[i], gram))
            return {false, "a", "linear part of " + g.label(i) + " is not in the symplectic algebra"};

    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            Vec b = g.bracket_basis(i, j);
            if (r.lambda_of(b) != commutator(r.lambda()[i], r.lambda()[j]))
                return {false, "b",
                        "linear parts of " + g.label(i) + ", " + g.label(j) +
                            " do not respect the bracket"};
            Vec affine = r.lambda()[i] * r.v().col(j) - r.lambda()[j] * r.v().col(i);
            if (r.translation_of(b) != affine)
                return {false, "b",
                        "translation parts of " + g.label(i) + ", " + g.label(j) +
                            " do not respect the bracket"};
        }

    if (Subspace::span(kernel(r.v())) != r.pair().k())
        return {false, "c", "kernel of the translation part differs from k"};

    {
        const Subspace& p = r.pair().p();
        std::vector<Vec> img;
        for (std::size_t j = 0; j < p.dim(); ++j) img.push_back(r.v() * p.basis_vector(j));
        Subspace vp = Subspace::span(r.space().dim(), img);
        if (vp.dim() != p.dim() || vp != v1)
            return {false, "d", "translation part does not map p isomorphically onto V1"};
    }

    auto maps_into = [&](const Matrix& op, const Subspace& from, const Subspace& to) {
        for (std::size_t j = 0; j < from.dim(); ++j)
            if (!to.contains(op * from.basis_vector(j))) return false;
        return true;
    };
    const Subspace& k = r.pair().k();
    const Subspace& p = r.pair().p();
    for (std::size_t j = 0; j < k.dim(); ++j) {
        Matrix op = r.lambda_of(k.basis_vector(j));
        if (!maps_into(op, v1, v1) || !maps_into(op, v2, v2))
            return {false, "e", "linear part of k does not preserve the splitting"};
    }
    for (std::size_t j = 0; j < p.dim(); ++j) {
        Matrix op = r.lambda_of(p.basis_vector(j));
        if (!maps_into(op, v1, v2) || !maps_into(op, v2, v1))
            return {false, "e", "linear part of p does not swap the splitting"};
    }
    return {};
}

struct RankOneRealizationReport {
    bool ok = true;
    std::string reason;
};

/// For a rank-one-type pair, the linear part of e0 must be diagonalizable
/// with even integer spectrum splitting V by residue: eigenvalues 2 mod 4
/// span V1 and eigenvalues 0 mod 4 span V2.
inline RankOneRealizationReport check_rank_one_realization(const ExtrinsicRealization& r,
                                                           const Sl2Triple& t) {
    std::vector<Eigenspace> eig;
    try {
        eig = eigendecomposition(r.lambda_of(t.e0));
    } catch (const error& e) {
        return {false, std::string("linear part of e0: ") + e.what()};
    }
    std::vector<Vec> gen1, gen2;
    for (const auto& es : eig) {
        if (!es.value.is_even_integer())
            return {false, "linear part of e0 has an eigenvalue that is not an even integer"};
        Int val = es.value.to_integer();
        Int residue = ((val % 4) + 4) % 4;
        auto& bucket = (residue == 2) ? gen1 : gen2;
        for (std::size_t j = 0; j < es.space.dim(); ++j) bucket.push_back(es.space.basis_vector(j));
    }
    std::size_t d = r.space().dim();
    if (Subspace::span(d, gen1) != r.space().v1)
        return {false, "eigenvalues 2 mod 4 do not span V1"};
    if (Subspace::span(d, gen2) != r.space().v2)
        return {false, "eigenvalues 0 mod 4 do not span V2"};
    return {};
}

struct RestrictedRealization {
    ExtrinsicRealization realization;
    RealizationCheck check;
};

/// Cut a realization down to a reduced pair sitting inside the original
/// algebra via `embedding` (ambient columns for the reduced basis).  The
/// space keeps the weight lines of `torus` proportional to `lambda0`: odd
/// multiples from V1, even multiples from V2, re-expressed on the canonical
/// basis of the restricted space.
inline RestrictedRealization restrict_realization(const ExtrinsicRealization& r,
                                                  const SymmetricPair& reduced,
                                                  const Matrix& embedding,
                                                  const std::vector<Vec>& torus, const Vec& lambda0) {
    if (embedding.rows() != r.pair().algebra().dim() || embedding.cols() != reduced.algebra().dim())
        throw error("embedding shape does not match the reduced pair");
    if (lambda0.size() != torus.size()) throw error("weight length must match the torus");

    std::vector<Matrix> ops;
    for (const Vec& t : torus) ops.push_back(r.lambda_of(t));
    std::size_t d = r.space().dim();

    // Weight w is kept when w = m * lambda0 with m an integer of the parity
    // appropriate to the half it meets.
    std::vector<Vec> gen1, gen2;
    for (const auto& ws : simultaneous_eigendecomposition(ops, d)) {
        auto m = scalar_multiple_of(ws.weight, lambda0);
        if (!m || !m->is_integer()) continue;
        bool odd = !m->is_even_integer();
        const Subspace& half = odd ? r.space().v1 : r.space().v2;
        Subspace cut = ws.space.intersect(half);
        auto& bucket = odd ? gen1 : gen2;
        for (std::size_t j = 0; j < cut.dim(); ++j) bucket.push_back(cut.basis_vector(j));
    }
    Subspace nv1 = Subspace::span(d, gen1), nv2 = Subspace::span(d, gen2);
    Subspace total = nv1.sum(nv2);

    // Canonical coordinates on the restricted space: V1 basis then V2 basis.
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < nv1.dim(); ++j) cols.push_back(nv1.basis_vector(j));
    for (std::size_t j = 0; j < nv2.dim(); ++j) cols.push_back(nv2.basis_vector(j));
    Matrix basis = Matrix::from_cols(cols);
    std::size_t nd = cols.size();
    if (total.dim() != nd) throw error("restricted halves overlap");

    Matrix ngram = r.space().omega.restricted_gram(basis);
    std::vector<Vec> u1, u2;
    for (std::size_t j = 0; j < nv1.dim(); ++j) u1.push_back(unit_vec(nd, j));
    for (std::size_t j = 0; j < nv2.dim(); ++j) u2.push_back(unit_vec(nd, nv1.dim() + j));
    SplitSymplecticSpace nspace{BilinearForm(ngram, FormKind::antisymmetric),
                                Subspace::span(nd, u1), Subspace::span(nd, u2)};

    std::vector<Matrix> nlambda;
    Matrix nv(nd, reduced.algebra().dim());
    for (std::size_t j = 0; j < reduced.algebra().dim(); ++j) {
        Vec xj = embedding.col(j);
        Matrix op = r.lambda_of(xj);
        Matrix rop(nd, nd);
        for (std::size_t c = 0; c < nd; ++c) {
            Vec img = op * cols[c];
            LinearSolution s = solve(basis, img);
            if (!s.consistent)
                throw error("restricted space is not invariant under the reduced algebra");
            for (std::size_t rr = 0; rr < nd; ++rr) rop.at(rr, c) = s.particular[rr];
        }
        nlambda.push_back(std::move(rop));
        Vec tv = r.translation_of(xj);
        LinearSolution s = solve(basis, tv);
        if (!s.consistent) throw error("translations of the reduced algebra leave the restricted space");
        for (std::size_t rr = 0; rr < nd; ++rr) nv.at(rr, j) = s.particular[rr];
    }

    ExtrinsicRealization nr{reduced, std::move(nspace), std::move(nlambda), std::move(nv)};
    RealizationCheck chk = validate_realization(nr);
    return {std::move(nr), std::move(chk)};
}

}  // namespace liesym
