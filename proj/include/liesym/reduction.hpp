#pragma once

// Rank-one reduction: cut a transvective symplectic pair down to the graded
// subalgebra generated by the weight lines over a single well-separated
// weight of a torus in the Levi complement.  The result carries its own
// pair, a distinguished sl2-style triple, the grading, and optionally the
// restriction of a supplied extrinsic realization.

#include "liesym/lie.hpp"
#include "liesym/pair.hpp"
#include "liesym/realization.hpp"
#include "liesym/sl2.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liesym {

/// Pick the reduction weight: among nonzero weights with a Levi-part weight
/// space in p, keep those with no integer multiple (factor 2 or more in
/// absolute value) also carrying a Levi part; normalize signs so the first
/// nonzero entry has positive real (or, failing that, positive imaginary)
/// part; return the lexicographically first survivor.
inline Vec choose_reduction_weight(const WeightDecomposition& wd) {
    auto levi_dim = [](const WeightBlock& b) {
        return b.levi_part ? b.levi_part->dim() : b.space.dim();
    };
    auto canonical = [](Vec w) {
        for (const GaussianRational& entry : w) {
            if (entry.is_zero()) continue;
            bool flip = entry.re() < 0 || (entry.re() == 0 && entry.im() < 0);
            if (flip)
                for (GaussianRational& e : w) e = -e;
            break;
        }
        return w;
    };

    std::vector<Vec> candidates;
    for (const WeightBlock& b : wd.p_blocks) {
        if (is_zero(b.weight) || levi_dim(b) == 0) continue;
        Vec w = canonical(b.weight);
        if (std::find(candidates.begin(), candidates.end(), w) == candidates.end())
            candidates.push_back(w);
    }
    std::vector<Vec> usable;
    for (const Vec& w : candidates) {
        bool dominated = false;
        for (const WeightBlock& b : wd.p_blocks) {
            if (levi_dim(b) == 0) continue;
            auto m = scalar_multiple_of(b.weight, w);
            if (!m || !m->is_integer()) continue;
            if (!m->is_zero() && *m != GaussianRational(1) && *m != GaussianRational(-1)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) usable.push_back(w);
    }
    if (usable.empty()) throw error("no usable weight for a reduction");
    std::sort(usable.begin(), usable.end(), [](const Vec& a, const Vec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return usable.front();
}

struct ReductionResult {
    LieAlgebra subalgebra;             // reduced algebra in its own coordinates
    Matrix embedding;                  // ambient column per subalgebra basis vector
    SymplecticPair pair;               // reduced pair on the subalgebra
    Sl2Triple triple;                  // subalgebra coordinates
    Vec lambda0;                       // chosen weight, in torus order
    std::vector<long> degrees;         // degree per subalgebra basis vector, ascending
    std::map<long, Subspace> grading;  // ambient graded pieces
    std::optional<RestrictedRealization> restricted;
};

inline ReductionResult reduce(const SymplecticPair& sp, const Subspace& levi,
                              const std::vector<Vec>& torus,
                              const std::optional<ExtrinsicRealization>& realization = std::nullopt) {
    const SymmetricPair& pr = sp.pair();
    const LieAlgebra& g = pr.algebra();

    PairCheck pc = validate_symplectic(sp);
    if (!pc.ok) throw error("input pair is invalid: " + pc.reason);
    if (!pc.transvective) throw error("pair is not transvective");
    if (is_solvable(g)) throw error("the transvection algebra is solvable; nothing to reduce");

    LeviReport lr = verify_levi(g, levi);
    if (!lr.ok) throw error("Levi complement rejected: " + lr.reason);
    if (levi.intersect(pr.k()).sum(levi.intersect(pr.p())) != levi)
        throw error("Levi complement is not adapted to the symmetry");
    for (const Vec& t : torus)
        if (!levi.contains(t) || !pr.k().contains(t))
            throw error("torus must lie in the even part of the Levi complement");

    WeightDecomposition wd = weight_decompose(pr, torus, levi);
    Vec lambda0 = choose_reduction_weight(wd);

    // Triple: the coroot of lambda0 for the trace form of the Levi
    // complement, and a pairing of opposite extreme weight vectors.
    LieAlgebra lsub = subalgebra_from_basis(g, levi.basis());
    Matrix bl = killing_gram(lsub);
    auto trace_pair = [&](const Vec& x, const Vec& y) {
        Vec xc = levi.coordinates_of(x), yc = levi.coordinates_of(y);
        GaussianRational acc;
        for (std::size_t i = 0; i < xc.size(); ++i)
            for (std::size_t j = 0; j < yc.size(); ++j) acc += xc[i] * bl.at(i, j) * yc[j];
        return acc;
    };

    std::size_t nt = torus.size();
    Matrix sys(nt, nt);
    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t c = 0; c < nt; ++c) sys.at(j, c) = trace_pair(torus[c], torus[j]);
    LinearSolution hs = solve(sys, lambda0);
    if (!hs.consistent)
        throw error("chosen weight is not represented by the trace form on the torus");
    Vec h(g.dim());
    for (std::size_t c = 0; c < nt; ++c) h = h + hs.particular[c] * torus[c];
    GaussianRational bhh = trace_pair(h, h);
    if (bhh.is_zero()) throw error("weight coroot is isotropic for the trace form");
    Vec e0 = (GaussianRational(2) / bhh) * h;
    GaussianRational be0e0 = trace_pair(e0, e0);

    const WeightBlock* plus = wd.find_p(lambda0);
    const WeightBlock* minus = wd.find_p(GaussianRational(-1) * lambda0);
    if (!plus || !plus->levi_part || plus->levi_part->dim() == 0)
        throw error("chosen weight has no Levi weight space");
    if (!minus || !minus->levi_part || minus->levi_part->dim() == 0)
        throw error("opposite weight space is empty in the Levi part");
    const Subspace& pplus_l = *plus->levi_part;
    const Subspace& pminus_l = *minus->levi_part;

    Vec eplus = pplus_l.basis_vector(0);
    Matrix pairing(1, pminus_l.dim());
    for (std::size_t r = 0; r < pminus_l.dim(); ++r)
        pairing.at(0, r) = trace_pair(eplus, pminus_l.basis_vector(r));
    LinearSolution es = solve(pairing, {be0e0 / GaussianRational(Rational(2))});
    if (!es.consistent)
        throw error("no opposite weight vector pairs with the chosen one under the trace form");
    Vec eminus(g.dim());
    for (std::size_t r = 0; r < pminus_l.dim(); ++r)
        eminus = eminus + es.particular[r] * pminus_l.basis_vector(r);

    Sl2Triple ambient{e0, eplus, eminus};
    ModuleCheck tc = verify_sl2_triple(g, ambient);
    if (!tc.ok) throw error("constructed triple is invalid: " + tc.reason);
    for (std::size_t a = 0; a < pplus_l.dim(); ++a)
        for (std::size_t b = 0; b < pminus_l.dim(); ++b) {
            Vec x = pplus_l.basis_vector(a), y = pminus_l.basis_vector(b);
            if (g.bracket(x, y) != (GaussianRational(2) * trace_pair(x, y) / be0e0) * e0)
                throw error(
                    "bracket of opposite Levi weight vectors is not controlled by the trace form");
        }

    // Graded pieces: odd multiples of lambda0 from p (full blocks, radical
    // included), even multiples from the bracket closure in k.
    std::map<long, Subspace> grading;
    std::vector<Vec> pgens;
    for (const WeightBlock& b : wd.p_blocks) {
        auto m = scalar_multiple_of(b.weight, lambda0);
        if (!m || !m->is_integer() || m->is_even_integer()) continue;
        grading[m->to_integer().convert_to<long>()] = b.space;
        for (std::size_t j = 0; j < b.space.dim(); ++j) pgens.push_back(b.space.basis_vector(j));
    }
    Subspace pprime = Subspace::span(g.dim(), pgens);
    Subspace kprime = bracket_space(g, pprime, pprime);
    std::size_t covered = 0;
    for (const WeightBlock& b : wd.k_blocks) {
        auto m = scalar_multiple_of(b.weight, lambda0);
        if (!m || !m->is_even_integer()) continue;
        Subspace piece = b.space.intersect(kprime);
        if (piece.dim() == 0) continue;
        grading[m->to_integer().convert_to<long>()] = piece;
        covered += piece.dim();
    }
    if (covered != kprime.dim())
        throw error("even part of the reduced algebra escapes the weight lattice");

    std::vector<Vec> cols;
    std::vector<long> degrees;
    for (const auto& [deg, piece] : grading)
        for (std::size_t j = 0; j < piece.dim(); ++j) {
            cols.push_back(piece.basis_vector(j));
            degrees.push_back(deg);
        }
    Matrix embedding = Matrix::from_cols(cols);
    LieAlgebra sub = subalgebra_from_basis(g, embedding);
    std::size_t nd = sub.dim();

    GradingCheck gc = verify_grading(sub, degrees);
    if (!gc.ok) throw error("reduced grading fails: " + gc.reason);

    std::vector<Vec> kb, pb;
    for (std::size_t i = 0; i < nd; ++i)
        (degrees[i] % 2 == 0 ? kb : pb).push_back(unit_vec(nd, i));
    SymmetricPair rpair(sub, Subspace::span(nd, kb), Subspace::span(nd, pb));
    PairCheck rpc = validate_pair(rpair);
    if (!rpc.ok) throw error("reduced pair is invalid: " + rpc.reason);
    if (!rpc.transvective) throw error("reduced pair is not transvective");

    if (Subspace::span(embedding).intersect(levi) != Subspace::span(g.dim(), {e0, eplus, eminus}))
        throw error("reduced algebra meets the Levi complement beyond the generated triple");

    auto sub_coords = [&](const Vec& x) {
        LinearSolution s = solve(embedding, x);
        if (!s.consistent) throw error("vector escapes the reduced algebra");
        return s.particular;
    };
    Sl2Triple striple{sub_coords(e0), sub_coords(eplus), sub_coords(eminus)};
    RankOneReport rr = check_rank_one_type(rpair, striple);
    if (!rr.ok) throw error("reduced pair is not of rank one type: " + rr.reason);

    ModuleDecomposition md = decompose(adjoint_action(sub, striple));
    for (const auto& [n, mult] : md.multiplicities)
        if (n % 2 != 0) throw error("reduced algebra contains an odd highest weight summand");

    const Subspace& psub = rpair.p();
    Matrix pgram(psub.dim(), psub.dim());
    for (std::size_t a = 0; a < psub.dim(); ++a)
        for (std::size_t b = 0; b < psub.dim(); ++b)
            pgram.at(a, b) =
                sp.omega_ambient(embedding * psub.basis_vector(a), embedding * psub.basis_vector(b));
    if (rank(pgram) != psub.dim())
        throw error("form restricted to the reduced pair is degenerate");
    SymplecticPair rsp(rpair, BilinearForm(pgram, FormKind::antisymmetric));
    PairCheck spc = validate_symplectic(rsp);
    if (!spc.ok) throw error("reduced form is invalid: " + spc.reason);

    std::optional<RestrictedRealization> restricted;
    if (realization) restricted = restrict_realization(*realization, rpair, embedding, torus, lambda0);

    return {std::move(sub),     std::move(embedding), std::move(rsp),    std::move(striple),
            std::move(lambda0), std::move(degrees),   std::move(grading), std::move(restricted)};
}

}  // namespace liesym
