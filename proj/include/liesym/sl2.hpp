#pragma once

// Representations of the split three-dimensional simple algebra.  A module
// is a triple of operators (E0, E+, E-); the standard irreducible of
// highest weight n acts on a chain m_0, ..., m_n by
//   E0 m_j = (2j - n) m_j,   E+ m_j = (n - j) m_{j+1},   E- m_j = j m_{j-1}.
// Decomposition into such chains is exact and certified: every produced
// chain is replayed against the defining relations.

#include "liesym/eigen.hpp"
#include "liesym/lie.hpp"
#include "liesym/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace liesym {

struct Sl2Action {
    Matrix e0, eplus, eminus;
    std::size_t dim() const { return e0.rows(); }
};

inline Sl2Action standard_module(int n) {
    if (n < 0) throw error("module highest weight must be nonnegative");
    std::size_t d = static_cast<std::size_t>(n) + 1;
    Matrix e0(d, d), ep(d, d), em(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        e0.at(j, j) = GaussianRational(2 * static_cast<int>(j) - n);
        if (j + 1 < d) ep.at(j + 1, j) = GaussianRational(n - static_cast<int>(j));
        if (j > 0) em.at(j - 1, j) = GaussianRational(static_cast<int>(j));
    }
    return {std::move(e0), std::move(ep), std::move(em)};
}

inline Sl2Action direct_sum(const Sl2Action& a, const Sl2Action& b) {
    auto block = [](const Matrix& x, const Matrix& y) {
        Matrix m(x.rows() + y.rows(), x.cols() + y.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) m.at(i, j) = x.at(i, j);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j) m.at(x.rows() + i, x.cols() + j) = y.at(i, j);
        return m;
    };
    return {block(a.e0, b.e0), block(a.eplus, b.eplus), block(a.eminus, b.eminus)};
}

inline Sl2Action conjugate(const Sl2Action& a, const Matrix& p) {
    Matrix pinv = inverse(p);
    return {p * a.e0 * pinv, p * a.eplus * pinv, p * a.eminus * pinv};
}

inline Sl2Action restrict_action(const Sl2Action& a, const Subspace& s) {
    return {restrict_operator(a.e0, s), restrict_operator(a.eplus, s),
            restrict_operator(a.eminus, s)};
}

struct ModuleCheck {
    bool ok = true;
    std::string reason;
};

/// Certifies that (E0, E+, E-) is a module action: the three commutation
/// identities, an integer-diagonalizable weight operator, and per-weight
/// blocks on which E+E- acts by the admissible chain scalars only.
inline ModuleCheck verify_sl2_module(const Sl2Action& a) {
    std::size_t d = a.dim();
    if (!a.e0.is_square() || a.eplus.rows() != d || a.eplus.cols() != d || a.eminus.rows() != d ||
        a.eminus.cols() != d)
        return {false, "operators must be square and of equal size"};

    if (commutator(a.e0, a.eplus) != GaussianRational(2) * a.eplus)
        return {false, "commutation identity [E0,E+] = 2E+ fails"};
    if (commutator(a.e0, a.eminus) != GaussianRational(-2) * a.eminus)
        return {false, "commutation identity [E0,E-] = -2E- fails"};
    if (commutator(a.eplus, a.eminus) != a.e0)
        return {false, "commutation identity [E+,E-] = E0 fails"};

    std::vector<Eigenspace> weights;
    try {
        weights = eigendecomposition(a.e0);
    } catch (const error& e) {
        return {false, std::string("weight operator: ") + e.what()};
    }
    long maxw = 0;
    for (const auto& w : weights) {
        if (!w.value.is_integer()) return {false, "weight operator has non-integer eigenvalue"};
        long l = static_cast<long>(w.value.to_integer());
        maxw = std::max(maxw, std::abs(l));
    }

    for (const auto& w : weights) {
        long l = static_cast<long>(w.value.to_integer());
        Matrix r;
        try {
            r = restrict_operator(a.eplus * a.eminus, w.space);
        } catch (const error&) {
            return {false, "raising-lowering product does not preserve weight spaces"};
        }
        // On weight l the product E+E- acts by (n+l)(n-l+2)/4 for each
        // module M_n present; the product of all admissible shifts must die.
        Matrix prod = Matrix::identity(w.space.dim());
        for (long n = std::abs(l); n <= maxw; n += 2) {
            GaussianRational c(Rational((n + l) * (n - l + 2), 4));
            Matrix shifted = r;
            for (std::size_t i = 0; i < shifted.rows(); ++i) shifted.at(i, i) -= c;
            prod = prod * shifted;
        }
        if (!prod.is_zero())
            return {false, "weight-" + std::to_string(l) + " block acts with a forbidden scalar"};
    }
    return {};
}

/// One chain: vectors[j] has weight 2j - highest.
struct IrreducibleChain {
    int highest = 0;
    std::vector<Vec> vectors;
    const Vec& top() const { return vectors.back(); }
    const Vec& bottom() const { return vectors.front(); }
};

struct ModuleDecomposition {
    std::vector<IrreducibleChain> chains;
    std::map<int, int> multiplicities;
};

inline ModuleDecomposition decompose(const Sl2Action& a) {
    ModuleCheck chk = verify_sl2_module(a);
    if (!chk.ok) throw error("not a module action: " + chk.reason);
    std::size_t d = a.dim();
    ModuleDecomposition out;
    if (d == 0) return out;

    std::vector<Eigenspace> weights = eigendecomposition(a.e0);
    std::map<long, Subspace> byweight;
    long maxw = 0;
    for (const auto& w : weights) {
        long l = static_cast<long>(w.value.to_integer());
        byweight.emplace(l, w.space);
        maxw = std::max(maxw, l);
    }
    Subspace ker_raise = Subspace::span(kernel(a.eplus));

    std::vector<Vec> everything;
    for (long n = maxw; n >= 0; --n) {
        auto it = byweight.find(n);
        if (it == byweight.end()) continue;
        Subspace highvecs = it->second.intersect(ker_raise);
        for (std::size_t v = 0; v < highvecs.dim(); ++v) {
            IrreducibleChain chain;
            chain.highest = static_cast<int>(n);
            chain.vectors.assign(static_cast<std::size_t>(n) + 1, Vec(d));
            chain.vectors[static_cast<std::size_t>(n)] = highvecs.basis_vector(v);
            for (long j = n; j >= 1; --j)
                chain.vectors[j - 1] =
                    GaussianRational(Rational(1, j)) * (a.eminus * chain.vectors[j]);
            // Replay the defining relations before accepting the chain.
            if (!is_zero(a.eminus * chain.vectors[0]))
                throw error("chain does not terminate at its lowest weight");
            for (long j = 0; j <= n; ++j) {
                const Vec& mj = chain.vectors[j];
                if (a.e0 * mj != GaussianRational(2 * j - n) * mj)
                    throw error("chain vector has wrong weight");
                Vec expect = (j == n) ? Vec(d) : GaussianRational(n - j) * chain.vectors[j + 1];
                if (a.eplus * mj != expect) throw error("chain fails the raising relation");
                everything.push_back(mj);
            }
            out.chains.push_back(std::move(chain));
            ++out.multiplicities[static_cast<int>(n)];
        }
    }
    if (everything.size() != d || Subspace::span(d, everything).dim() != d)
        throw error("chains do not span the module");
    return out;
}

/// Character arithmetic: the multiset of irreducibles in the alternating
/// square of a direct sum of modules, by weight counting.
inline std::vector<int> exterior_square_modules(const std::vector<int>& modules) {
    std::vector<long> weights;
    for (int n : modules) {
        if (n < 0) throw error("module highest weight must be nonnegative");
        for (long l = -n; l <= n; l += 2) weights.push_back(l);
    }
    std::map<long, long> cnt;
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (std::size_t j = i + 1; j < weights.size(); ++j) ++cnt[weights[i] + weights[j]];

    std::vector<int> out;
    while (!cnt.empty()) {
        long w = cnt.rbegin()->first;
        if (w < 0) throw error("weight multiset is not a module character");
        out.push_back(static_cast<int>(w));
        for (long l = -w; l <= w; l += 2) {
            auto it = cnt.find(l);
            if (it == cnt.end() || it->second <= 0)
                throw error("weight multiset is not a module character");
            if (--it->second == 0) cnt.erase(it);
        }
    }
    return out;
}

/// A triple of algebra elements obeying the defining bracket relations.
struct Sl2Triple {
    Vec e0, eplus, eminus;
};

inline ModuleCheck verify_sl2_triple(const LieAlgebra& g, const Sl2Triple& t) {
    if (g.bracket(t.e0, t.eplus) != GaussianRational(2) * t.eplus)
        return {false, "bracket identity [e0,e+] = 2e+ fails"};
    if (g.bracket(t.e0, t.eminus) != GaussianRational(-2) * t.eminus)
        return {false, "bracket identity [e0,e-] = -2e- fails"};
    if (g.bracket(t.eplus, t.eminus) != t.e0)
        return {false, "bracket identity [e+,e-] = e0 fails"};
    if (is_zero(t.e0)) return {false, "triple is identically zero"};
    return {};
}

inline Sl2Action adjoint_action(const LieAlgebra& g, const Sl2Triple& t) {
    return {g.ad(t.e0), g.ad(t.eplus), g.ad(t.eminus)};
}

inline Subspace triple_span(const LieAlgebra& g, const Sl2Triple& t) {
    return Subspace::span(g.dim(), {t.e0, t.eplus, t.eminus});
}

}  // namespace liesym
