#pragma once

// Symmetric decompositions g = k (+) p with [k,k], [p,p] in k and [k,p] in
// p, optionally carrying an invariant symplectic form on p, an integer
// grading, and torus weight decompositions.

#include "liesym/bilinear.hpp"
#include "liesym/eigen.hpp"
#include "liesym/lie.hpp"
#include "liesym/sl2.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liesym {

class SymmetricPair {
public:
    SymmetricPair(LieAlgebra g, Subspace k, Subspace p)
        : g_(std::move(g)), k_(std::move(k)), p_(std::move(p)) {
        if (k_.ambient() != g_.dim() || p_.ambient() != g_.dim())
            throw error("pair components must live in the algebra");
    }

    const LieAlgebra& algebra() const { return g_; }
    const Subspace& k() const { return k_; }
    const Subspace& p() const { return p_; }

private:
    LieAlgebra g_;
    Subspace k_, p_;
};

struct PairCheck {
    bool ok = true;
    std::string reason;
    bool transvective = false;
};

inline PairCheck validate_pair(const SymmetricPair& pr) {
    const LieAlgebra& g = pr.algebra();
    auto alg = g.validate();
    if (!alg.ok) return {false, "algebra: " + alg.reason, false};
    if (pr.k().intersect(pr.p()).dim() != 0 || pr.k().sum(pr.p()) != Subspace::full(g.dim()))
        return {false, "k and p do not split the algebra", false};
    if (!pr.k().contains(bracket_space(g, pr.k(), pr.k())))
        return {false, "k is not a subalgebra", false};
    if (!pr.p().contains(bracket_space(g, pr.k(), pr.p())))
        return {false, "p is not invariant under k", false};
    Subspace pp = bracket_space(g, pr.p(), pr.p());
    if (!pr.k().contains(pp)) return {false, "brackets of p do not land in k", false};
    return {true, "", pp == pr.k()};
}

/// Pair with an invariant symplectic form; the gram matrix is written in
/// the coordinates of the canonical basis of p.
class SymplecticPair {
public:
    SymplecticPair(SymmetricPair pair, BilinearForm omega)
        : pair_(std::move(pair)), omega_(std::move(omega)) {
        if (omega_.dim() != pair_.p().dim())
            throw error("form dimension must match p");
    }

    const SymmetricPair& pair() const { return pair_; }
    const BilinearForm& omega() const { return omega_; }

    /// Form applied to ambient vectors of p.
    GaussianRational omega_ambient(const Vec& u, const Vec& w) const {
        return omega_.apply(pair_.p().coordinates_of(u), pair_.p().coordinates_of(w));
    }

private:
    SymmetricPair pair_;
    BilinearForm omega_;
};

inline PairCheck validate_symplectic(const SymplecticPair& sp) {
    PairCheck base = validate_pair(sp.pair());
    if (!base.ok) return base;
    if (sp.omega().kind() != FormKind::antisymmetric)
        return {false, "form must be declared antisymmetric", base.transvective};
    if (rank(sp.omega().gram()) != sp.omega().dim())
        return {false, "form is degenerate on p", base.transvective};

    const LieAlgebra& g = sp.pair().algebra();
    const Subspace& k = sp.pair().k();
    const Subspace& p = sp.pair().p();
    for (std::size_t x = 0; x < k.dim(); ++x)
        for (std::size_t u = 0; u < p.dim(); ++u)
            for (std::size_t w = u; w < p.dim(); ++w) {
                Vec xu = p.coordinates_of(g.bracket(k.basis_vector(x), p.basis_vector(u)));
                Vec xw = p.coordinates_of(g.bracket(k.basis_vector(x), p.basis_vector(w)));
                GaussianRational lhs =
                    sp.omega().apply(xu, unit_vec(p.dim(), w)) + sp.omega().apply(unit_vec(p.dim(), u), xw);
                if (!lhs.is_zero())
                    return {false, "form is not invariant under k", base.transvective};
            }
    return base;
}

struct GradingCheck {
    bool ok = true;
    std::string reason;
    std::vector<std::size_t> witness;
};

/// Bracket additivity of a degree assignment on the basis.
inline GradingCheck verify_grading(const LieAlgebra& g, const std::vector<long>& degree) {
    if (degree.size() != g.dim()) return {false, "one degree per basis vector required", {}};
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            Vec b = g.bracket_basis(i, j);
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!b[k].is_zero() && degree[k] != degree[i] + degree[j])
                    return {false, "bracket breaks degree additivity", {i, j, k}};
        }
    return {};
}

/// A pair grading additionally puts k on even and p on odd degrees.
inline GradingCheck verify_pair_grading(const SymmetricPair& pr, const std::vector<long>& degree) {
    GradingCheck base = verify_grading(pr.algebra(), degree);
    if (!base.ok) return base;
    std::vector<Vec> even, odd;
    for (std::size_t i = 0; i < degree.size(); ++i)
        ((degree[i] % 2 == 0) ? even : odd).push_back(unit_vec(degree.size(), i));
    if (Subspace::span(degree.size(), even) != pr.k())
        return {false, "even-degree span differs from k", {}};
    if (Subspace::span(degree.size(), odd) != pr.p())
        return {false, "odd-degree span differs from p", {}};
    return {};
}

/// Joint eigenspace data of a commuting family in k acting on p and on k.
struct WeightBlock {
    Vec weight;
    Subspace space;  // ambient coordinates
    std::optional<Subspace> levi_part, radical_part;
};

struct WeightDecomposition {
    std::vector<WeightBlock> p_blocks, k_blocks;

    const WeightBlock* find_p(const Vec& w) const {
        for (const auto& b : p_blocks)
            if (b.weight == w) return &b;
        return nullptr;
    }
    const WeightBlock* find_k(const Vec& w) const {
        for (const auto& b : k_blocks)
            if (b.weight == w) return &b;
        return nullptr;
    }
};

namespace detail {

inline std::vector<WeightBlock> blocks_on(const LieAlgebra& g, const std::vector<Vec>& torus,
                                          const Subspace& part) {
    std::vector<Matrix> ops;
    for (const Vec& t : torus) ops.push_back(restrict_operator(g.ad(t), part));
    std::vector<WeightBlock> blocks;
    for (const auto& ws : simultaneous_eigendecomposition(ops, part.dim())) {
        std::vector<Vec> gens;
        for (std::size_t j = 0; j < ws.space.dim(); ++j)
            gens.push_back(part.basis() * ws.space.basis_vector(j));
        blocks.push_back({ws.weight, Subspace::span(part.ambient(), gens), std::nullopt, std::nullopt});
    }
    return blocks;
}

}  // namespace detail

/// Decompose p and k into joint weight spaces of `torus` (a commuting
/// family inside k).  When a certified semisimple complement is supplied,
/// every block is split into its complement and radical parts.
inline WeightDecomposition weight_decompose(const SymmetricPair& pr, const std::vector<Vec>& torus,
                                            const std::optional<Subspace>& levi = std::nullopt) {
    const LieAlgebra& g = pr.algebra();
    for (const Vec& t : torus) {
        if (!pr.k().contains(t)) throw error("torus elements must lie in k");
        for (const Vec& s : torus)
            if (!is_zero(g.bracket(t, s))) throw error("torus is not abelian");
    }
    WeightDecomposition wd;
    wd.p_blocks = detail::blocks_on(g, torus, pr.p());
    wd.k_blocks = detail::blocks_on(g, torus, pr.k());
    if (levi) {
        Subspace rad = radical(g);
        for (auto* blocks : {&wd.p_blocks, &wd.k_blocks})
            for (auto& b : *blocks) {
                b.levi_part = b.space.intersect(*levi);
                b.radical_part = b.space.intersect(rad);
                if (b.levi_part->dim() + b.radical_part->dim() != b.space.dim())
                    throw error("weight space does not split along the Levi decomposition");
            }
    }
    return wd;
}

/// Brackets must add weights: [k^mu, p^lambda] lands in p^{mu+lambda}.
inline bool verify_weight_brackets(const SymmetricPair& pr, const WeightDecomposition& wd) {
    const LieAlgebra& g = pr.algebra();
    for (const auto& kb : wd.k_blocks)
        for (const auto& pb : wd.p_blocks) {
            Vec sum(kb.weight.size());
            for (std::size_t r = 0; r < sum.size(); ++r) sum[r] = kb.weight[r] + pb.weight[r];
            Subspace img = bracket_space(g, kb.space, pb.space);
            if (img.dim() == 0) continue;
            const WeightBlock* target = wd.find_p(sum);
            if (!target || !target->space.contains(img)) return false;
        }
    return true;
}

struct RankOneReport {
    bool ok = true;
    std::string reason;
    std::map<long, Subspace> grading;  // degree -> eigenspace of ad(e0)/2
};

/// Rank-one-type certificate for a pair with a distinguished triple: the
/// triple satisfies the bracket relations, ad(e0) is diagonalizable with
/// even integer eigenvalues whose degree-k pieces alternate between k
/// (even k) and p (odd k), and the triple spans a semisimple complement.
inline RankOneReport check_rank_one_type(const SymmetricPair& pr, const Sl2Triple& t) {
    const LieAlgebra& g = pr.algebra();
    RankOneReport rep;
    ModuleCheck tc = verify_sl2_triple(g, t);
    if (!tc.ok) return {false, tc.reason, {}};
    if (!pr.k().contains(t.e0)) return {false, "e0 must lie in k", {}};
    if (!pr.p().contains(t.eplus) || !pr.p().contains(t.eminus))
        return {false, "e+ and e- must lie in p", {}};

    std::vector<Eigenspace> eig;
    try {
        eig = eigendecomposition(g.ad(t.e0));
    } catch (const error& e) {
        return {false, std::string("ad(e0): ") + e.what(), {}};
    }
    for (const auto& es : eig) {
        if (!es.value.is_even_integer())
            return {false, "ad(e0) has an eigenvalue that is not an even integer", {}};
        long k = static_cast<long>(es.value.to_integer()) / 2;
        const Subspace& target = (k % 2 == 0) ? pr.k() : pr.p();
        if (!target.contains(es.space))
            return {false, "degree-" + std::to_string(k) + " piece lies in the wrong half", {}};
        rep.grading.emplace(k, es.space);
    }
    LeviReport lv = verify_levi(g, triple_span(g, t));
    if (!lv.ok) return {false, "triple span: " + lv.reason, {}};
    return rep;
}

}  // namespace liesym
