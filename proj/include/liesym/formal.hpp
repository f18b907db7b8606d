#pragma once

// Formal weight calculus.
//
// The obstruction engine reasons about vectors it never constructs
// explicitly: chain vectors of irreducible sl2-modules sitting inside an
// unknown symplectic module, and symmetric products of such vectors.  This
// header provides the exact symbol manipulation needed for that reasoning:
//
//   * ChainId / WeightSym  -- a named module chain and a weight slot in it,
//     with the standard raising/lowering coefficients,
//   * FormalVec / FormalS2 -- exact linear combinations of weight symbols
//     and of unordered symbol products, with coefficients that may be
//     affine in named unknowns,
//   * ad / circ / parity projection -- the operations the derivations use,
//   * Poly -- small multivariate integer polynomials used to certify
//     coefficient facts uniformly in the module size (not just for the
//     finitely many modules present in a concrete system).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace liesym::formal {

// ------------------------------------------------------------------ Poly

/// Multivariate polynomial with integer coefficients.  Monomials are
/// exponent vectors (trailing zeros trimmed), so the zero-length vector is
/// the constant term.  Supports just enough arithmetic to state identities
/// and sign facts about ladder coefficients for every module size.
class Poly {
public:
    using Monomial = std::vector<unsigned>;

    Poly() = default;

    static Poly constant(Int c) {
        Poly p;
        if (c != 0) p.terms_[Monomial{}] = std::move(c);
        return p;
    }
    static Poly constant(long c) { return constant(Int(c)); }

    /// The variable with the given index (x_i).
    static Poly var(std::size_t index) {
        Poly p;
        Monomial m(index + 1, 0u);
        m[index] = 1u;
        p.terms_[std::move(m)] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    Int constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Int(0) : it->second;
    }

    /// True when every coefficient is non-negative.
    bool nonneg_coefficients() const {
        for (const auto& [m, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    /// True when the polynomial is strictly positive for every non-negative
    /// integer assignment: all coefficients non-negative and constant > 0.
    bool positive_on_nonneg() const {
        return nonneg_coefficients() && constant_term() > 0;
    }

    Int eval(const std::vector<Int>& x) const {
        Int total = 0;
        for (const auto& [m, c] : terms_) {
            Int term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e)
                    term *= (i < x.size() ? x[i] : Int(0));
            total += term;
        }
        return total;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(std::max(ma.size(), mb.size()), 0u);
                for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
                for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Int& c, const Poly& p) { return Poly::constant(c) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Deterministic rendering, e.g. "2m^2+14m+10".  Variable names come
    /// from `names`; missing names fall back to x0, x1, ...
    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        // Sort: total degree descending, then exponent vector lexicographically
        // descending -- a stable, human-friendly order.
        std::vector<std::pair<Monomial, Int>> ts(terms_.begin(), terms_.end());
        auto degree = [](const Monomial& m) {
            unsigned d = 0;
            for (unsigned e : m) d += e;
            return d;
        };
        std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
            unsigned da = degree(a.first), db = degree(b.first);
            if (da != db) return da > db;
            return a.first > b.first;
        });
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : ts) {
            Int abs = c < 0 ? Int(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? "-" : "+");
            }
            bool has_vars = degree(m) > 0;
            if (abs != 1 || !has_vars) out << abs.str();
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (i < names.size()) out << names[i];
                else out << "x" << i;
                if (m[i] > 1) out << "^" << m[i];
            }
        }
        return out.str();
    }

private:
    void add_term(Monomial m, const Int& c) {
        if (c == 0) return;
        while (!m.empty() && m.back() == 0) m.pop_back();
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    std::map<Monomial, Int> terms_;
};

// ------------------------------------------------------------ symbols

/// Which generator a chain hangs off.  a_plus / a_minus chains are indexed
/// by their module half-size k; free_low is the one-dimensional module of
/// the free product block, free_high its partner of half-size n.
enum class ChainKind { a_plus, a_minus, free_low, free_high };

struct ChainId {
    ChainKind kind;
    int module;  // half-size k: weights run over -module..module

    friend bool operator==(const ChainId& a, const ChainId& b) {
        return a.kind == b.kind && a.module == b.module;
    }
    friend bool operator<(const ChainId& a, const ChainId& b) {
        return std::tie(a.kind, a.module) < std::tie(b.kind, b.module);
    }
    std::string name() const {
        switch (kind) {
            case ChainKind::a_plus: return "A+" + std::to_string(module);
            case ChainKind::a_minus: return "A-" + std::to_string(module);
            case ChainKind::free_low: return "Z0";
            case ChainKind::free_high: return "Zn";
        }
        return "?";
    }
};

/// A chain vector at a definite weight: the standard-basis element of the
/// chain's module at weight slot l (so the grading operator acts by 2l).
struct WeightSym {
    ChainId chain;
    int l;

    friend bool operator==(const WeightSym& a, const WeightSym& b) {
        return a.chain == b.chain && a.l == b.l;
    }
    friend bool operator<(const WeightSym& a, const WeightSym& b) {
        return std::tie(a.chain, a.l) < std::tie(b.chain, b.l);
    }
    std::string name() const { return chain.name() + "@" + std::to_string(l); }
};

/// Unordered product of two weight symbols (an element of the symmetric
/// square).  Canonical form keeps x <= y.
struct PairSym {
    WeightSym x, y;

    PairSym(WeightSym a, WeightSym b) {
        if (b < a) std::swap(a, b);
        x = a;
        y = b;
    }
    friend bool operator==(const PairSym& a, const PairSym& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const PairSym& a, const PairSym& b) {
        return std::tie(a.x, a.y) < std::tie(b.x, b.y);
    }
    std::string name() const { return "(" + x.name() + ")o(" + y.name() + ")"; }
    int total_weight() const { return x.l + y.l; }
};

// ------------------------------------------------------------ LinExpr

/// Exact affine expression c + sum(coeff_i * unknown_i) over Q(i).
struct LinExpr {
    GaussianRational c;
    std::map<std::string, GaussianRational> u;

    LinExpr() = default;
    static LinExpr constant(GaussianRational v) {
        LinExpr e;
        e.c = std::move(v);
        return e;
    }
    static LinExpr unknown(const std::string& name) {
        LinExpr e;
        e.u[name] = GaussianRational(1);
        return e;
    }

    bool is_zero() const { return c.is_zero() && u.empty(); }
    bool is_constant() const { return u.empty(); }

    LinExpr& operator+=(const LinExpr& o) {
        c += o.c;
        for (const auto& [n, v] : o.u) {
            auto [it, inserted] = u.emplace(n, v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero()) u.erase(it);
            }
        }
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator*(const GaussianRational& s, const LinExpr& e) {
        LinExpr r;
        if (s.is_zero()) return r;
        r.c = s * e.c;
        for (const auto& [n, v] : e.u) r.u[n] = s * v;
        return r;
    }
    friend bool operator==(const LinExpr& a, const LinExpr& b) {
        return a.c == b.c && a.u == b.u;
    }

    /// Substitute known unknown values; unknowns absent from `values` stay.
    LinExpr substitute(const std::map<std::string, GaussianRational>& values) const {
        LinExpr r;
        r.c = c;
        for (const auto& [n, v] : u) {
            auto it = values.find(n);
            if (it != values.end()) r.c += v * it->second;
            else r.u[n] = v;
        }
        return r;
    }

    std::string str() const {
        std::ostringstream out;
        bool first = true;
        if (!c.is_zero() || u.empty()) {
            out << c.str();
            first = false;
        }
        for (const auto& [n, v] : u) {
            if (!first) out << " + ";
            out << "(" << v.str() << ")*" << n;
            first = false;
        }
        return out.str();
    }
};

// ------------------------------------------------------------ vectors

/// Exact linear combination of weight symbols.
using FormalVec = std::map<WeightSym, GaussianRational>;

inline FormalVec single(WeightSym s) { return FormalVec{{s, GaussianRational(1)}}; }

/// Exact linear combination of unordered symbol products, with coefficients
/// affine in named unknowns.
class FormalS2 {
public:
    void add(const PairSym& p, const LinExpr& e) {
        if (e.is_zero()) return;
        auto [it, inserted] = terms_.emplace(p, e);
        if (!inserted) {
            it->second += e;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    const std::map<PairSym, LinExpr>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FormalS2& operator+=(const FormalS2& o) {
        for (const auto& [p, e] : o.terms_) add(p, e);
        return *this;
    }
    friend FormalS2 operator+(FormalS2 a, const FormalS2& b) { return a += b; }
    friend FormalS2 operator*(const GaussianRational& s, const FormalS2& f) {
        FormalS2 r;
        for (const auto& [p, e] : f.terms_) r.add(p, s * e);
        return r;
    }
    friend FormalS2 operator-(FormalS2 a, const FormalS2& b) {
        return a += GaussianRational(-1) * b;
    }

    FormalS2 substitute(const std::map<std::string, GaussianRational>& values) const {
        FormalS2 r;
        for (const auto& [p, e] : terms_) r.add(p, e.substitute(values));
        return r;
    }

private:
    std::map<PairSym, LinExpr> terms_;
};

// ---------------------------------------------------- ladder operations

/// Raising (dir=+1) or lowering (dir=-1) applied to a single chain symbol.
/// Standard-basis coefficients: raising from weight l multiplies by (k-l),
/// lowering by (k+l).  Returns nothing when the coefficient vanishes.
inline std::optional<std::pair<GaussianRational, WeightSym>> apply_e(const WeightSym& s,
                                                                      int dir) {
    long k = s.chain.module, l = s.l;
    long coeff = dir > 0 ? (k - l) : (k + l);
    if (coeff == 0) return std::nullopt;
    WeightSym t{s.chain, s.l + (dir > 0 ? 1 : -1)};
    if (t.l > k || t.l < -k) throw error("weight symbol escaped its chain");
    return std::make_pair(GaussianRational(Rational(coeff)), t);
}

/// The scalar by which lowering-then-raising (E+E-) acts on weight l of a
/// half-size-k chain: k(k+1) - l(l-1).
inline GaussianRational raise_lower_scalar(long k, long l) {
    return GaussianRational(Rational(k * (k + 1) - l * (l - 1)));
}
/// The scalar for raising-then-lowering (E-E+): k(k+1) - l(l+1).
inline GaussianRational lower_raise_scalar(long k, long l) {
    return GaussianRational(Rational(k * (k + 1) - l * (l + 1)));
}

/// Derivation action of E± on a symmetric product expression.
inline FormalS2 ad_e(const FormalS2& f, int dir) {
    FormalS2 r;
    for (const auto& [p, e] : f.terms()) {
        if (auto ex = apply_e(p.x, dir)) r.add(PairSym(ex->second, p.y), ex->first * e);
        if (auto ey = apply_e(p.y, dir)) r.add(PairSym(p.x, ey->second), ey->first * e);
    }
    return r;
}

/// Symmetric product of two formal vectors (constant coefficients).
inline FormalS2 circ(const FormalVec& a, const FormalVec& b) {
    FormalS2 r;
    for (const auto& [sx, cx] : a)
        for (const auto& [sy, cy] : b)
            r.add(PairSym(sx, sy), LinExpr::constant(cx * cy));
    return r;
}

/// Keep only products whose two weights both have the given parity
/// (0 = both even, 1 = both odd).  Products of one even and one odd weight
/// belong to the mixed component and are dropped by either projection.
inline FormalS2 project_parity(const FormalS2& f, int parity) {
    FormalS2 r;
    for (const auto& [p, e] : f.terms()) {
        bool x_odd = (p.x.l % 2) != 0, y_odd = (p.y.l % 2) != 0;
        if (parity == 1 && x_odd && y_odd) r.add(p, e);
        if (parity == 0 && !x_odd && !y_odd) r.add(p, e);
    }
    return r;
}

// ------------------------------------------------------------ blocks

/// Identifies the (module, weight) x (module, weight) component a product
/// lives in, forgetting which chain the symbols came from.  Canonically
/// ordered.
struct BlockKey {
    int m1, l1, m2, l2;

    BlockKey(const PairSym& p) {
        m1 = p.x.chain.module;
        l1 = p.x.l;
        m2 = p.y.chain.module;
        l2 = p.y.l;
        if (std::tie(m1, l1) > std::tie(m2, l2)) {
            std::swap(m1, m2);
            std::swap(l1, l2);
        }
    }
    friend bool operator<(const BlockKey& a, const BlockKey& b) {
        return std::tie(a.m1, a.l1, a.m2, a.l2) < std::tie(b.m1, b.l1, b.m2, b.l2);
    }
    friend bool operator==(const BlockKey& a, const BlockKey& b) {
        return std::tie(a.m1, a.l1, a.m2, a.l2) == std::tie(b.m1, b.l1, b.m2, b.l2);
    }
    std::string name() const {
        std::ostringstream out;
        out << "W" << m1 << "^" << l1 << "oW" << m2 << "^" << l2;
        return out.str();
    }
};

/// Group the terms of a symmetric-square expression by block.
inline std::map<BlockKey, std::map<PairSym, LinExpr>> group_by_block(const FormalS2& f) {
    std::map<BlockKey, std::map<PairSym, LinExpr>> r;
    for (const auto& [p, e] : f.terms()) r[BlockKey(p)][p] = e;
    return r;
}

}  // namespace liesym::formal
