#pragma once

// Exact spectral decomposition over Q(i).
//
// Eigenvalues are found by factoring characteristic (or Krylov minimal)
// polynomials over Q(i): after rescaling to Gaussian-integer coefficients,
// any Q(i) root is a Gaussian integer whose norm divides the norm of the
// constant term, so a finite divisor search enumerates all candidates.
// Operators whose eigenvalues fall outside Q(i), or which are not
// diagonalizable, are rejected with a named reason.

#include "liesym/matrix.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace liesym {

/// Univariate polynomial over Q(i); coefficients ascending, normalized so
/// the leading coefficient is nonzero (the zero polynomial has degree -1).
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly1 constant(const GaussianRational& v) { return Poly1({v}); }
    static Poly1 x_minus(const GaussianRational& a) { return Poly1({-a, GaussianRational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const GaussianRational& coeff(std::size_t k) const {
        static const GaussianRational zero;
        return k < c_.size() ? c_[k] : zero;
    }
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational acc;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return Poly1();
        std::vector<GaussianRational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussianRational(static_cast<int>(k)) * c_[k];
        return Poly1(std::move(d));
    }

    Poly1 monic() const {
        if (is_zero()) return *this;
        GaussianRational inv = c_.back().inverse();
        std::vector<GaussianRational> d(c_);
        for (auto& v : d) v *= inv;
        return Poly1(std::move(d));
    }

    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.is_zero() || b.is_zero()) return Poly1();
        std::vector<GaussianRational> d(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Poly1(std::move(d));
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        std::vector<GaussianRational> d(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = a.coeff(k) - b.coeff(k);
        return Poly1(std::move(d));
    }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly1, Poly1> divmod(const Poly1& div) const {
        if (div.is_zero()) throw error("polynomial division by zero");
        std::vector<GaussianRational> rem(c_);
        std::vector<GaussianRational> quo;
        int dq = degree() - div.degree();
        if (dq < 0) return {Poly1(), *this};
        quo.assign(dq + 1, GaussianRational());
        GaussianRational lead_inv = div.c_.back().inverse();
        for (int k = degree(); k >= div.degree(); --k) {
            GaussianRational f = rem[k] * lead_inv;
            if (f.is_zero()) continue;
            quo[k - div.degree()] = f;
            for (int j = 0; j <= div.degree(); ++j) rem[k - div.degree() + j] -= f * div.c_[j];
        }
        return {Poly1(std::move(quo)), Poly1(std::move(rem))};
    }

    friend Poly1 gcd(Poly1 a, Poly1 b) {
        while (!b.is_zero()) {
            Poly1 r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Poly1 squarefree_part() const {
        if (degree() <= 0) return monic();
        Poly1 g = gcd(*this, derivative());
        return divmod(g).first.monic();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

/// Characteristic polynomial det(xI - a), monic, by the trace recursion of
/// Faddeev-LeVerrier (exact over Q(i)).
inline Poly1 charpoly(const Matrix& a) {
    if (!a.is_square()) throw error("characteristic polynomial of non-square matrix");
    std::size_t n = a.rows();
    std::vector<GaussianRational> c(n + 1);
    c[n] = 1;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
        m = a * m;
        c[n - k] = -(m.trace() / GaussianRational(static_cast<int>(k)));
    }
    return Poly1(std::move(c));
}

namespace detail {

inline Int isqrt(const Int& n) {
    return boost::multiprecision::sqrt(n);
}

/// Prime factorization by trial division plus a primality check for the
/// remainder; refuses norms too large to factor at desk scale.
inline std::map<Int, int> factorize(Int n) {
    std::map<Int, int> f;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n && p < 2000000; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (n < Int(4000000000000LL) ||
            boost::multiprecision::miller_rabin_test(n, 32)) {
            ++f[n];
        } else {
            throw error("eigenvalue search: constant-term norm too large to factor: " + n.str());
        }
    }
    return f;
}

inline void all_divisors_rec(const std::vector<std::pair<Int, int>>& f, std::size_t idx, Int cur,
                             std::vector<Int>& out) {
    if (idx == f.size()) {
        out.push_back(cur);
        return;
    }
    Int p = 1;
    for (int e = 0; e <= f[idx].second; ++e) {
        all_divisors_rec(f, idx + 1, cur * p, out);
        p *= f[idx].first;
    }
}

inline std::vector<Int> all_divisors(const Int& n) {
    auto fm = factorize(n);
    std::vector<std::pair<Int, int>> f(fm.begin(), fm.end());
    std::vector<Int> out;
    all_divisors_rec(f, 0, Int(1), out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Gaussian integers of norm m (all sign and order variants).
inline std::vector<GaussianRational> norm_representations(const Int& m) {
    std::vector<GaussianRational> reps;
    for (Int a = 0; a * a <= m; ++a) {
        Int b2 = m - a * a;
        Int b = isqrt(b2);
        if (b * b != b2) continue;
        std::set<std::pair<Int, Int>> uniq;
        for (int sa : {1, -1})
            for (int sb : {1, -1}) {
                uniq.insert({a * sa, b * sb});
                uniq.insert({b * sb, a * sa});
            }
        for (const auto& [x, y] : uniq)
            reps.emplace_back(Rational(x), Rational(y));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

inline Int lcm_int(const Int& a, const Int& b) {
    return a / boost::multiprecision::gcd(a, b) * b;
}

}  // namespace detail

/// Roots of a monic polynomial that lie in Q(i), with multiplicity, plus
/// the residual factor with no Q(i) roots (constant iff the polynomial
/// splits over Q(i)).
struct GaussianRoots {
    std::vector<std::pair<GaussianRational, int>> roots;
    bool complete = false;
};

inline GaussianRoots roots_in_q_i(const Poly1& input) {
    if (input.is_zero()) throw error("root search on zero polynomial");
    Poly1 f = input.monic();
    GaussianRoots result;

    int zero_mult = 0;
    while (f.degree() > 0 && f.coeff(0).is_zero()) {
        ++zero_mult;
        f = f.divmod(Poly1({GaussianRational(), GaussianRational(1)})).first;
    }
    if (zero_mult > 0) result.roots.push_back({GaussianRational(), zero_mult});

    // Rescale x = y/d so coefficients become Gaussian integers; roots in
    // Q(i) are then Gaussian integers dividing the constant term.
    Int d = 1;
    for (const auto& c : f.coeffs()) {
        d = detail::lcm_int(d, boost::multiprecision::denominator(c.re()));
        d = detail::lcm_int(d, boost::multiprecision::denominator(c.im()));
    }
    int n = f.degree();
    std::vector<GaussianRational> gc(n + 1);
    Int dpow = 1;
    for (int k = n; k >= 0; --k) {
        gc[k] = GaussianRational(Rational(dpow)) * f.coeff(k);
        dpow *= d;
    }
    Poly1 g(std::move(gc));

    while (g.degree() > 0) {
        GaussianRational c0 = g.coeff(0);
        Int nrm = boost::multiprecision::numerator(c0.norm());
        bool found = false;
        for (const Int& m : detail::all_divisors(nrm)) {
            if (m == 0) continue;
            for (const GaussianRational& alpha : detail::norm_representations(m)) {
                if (!g.eval(alpha).is_zero()) continue;
                int mult = 0;
                while (g.degree() > 0 && g.eval(alpha).is_zero()) {
                    g = g.divmod(Poly1::x_minus(alpha)).first;
                    ++mult;
                }
                GaussianRational root = alpha / GaussianRational(Rational(d));
                result.roots.push_back({root, mult});
                found = true;
                break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    result.complete = (g.degree() == 0);
    std::sort(result.roots.begin(), result.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

struct Eigenspace {
    GaussianRational value;
    Subspace space;
};

namespace detail {

inline Matrix shift(const Matrix& a, const GaussianRational& lambda) {
    Matrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i) m.at(i, i) -= lambda;
    return m;
}

/// Annihilating polynomial of `v` under `a` (monic, minimal for v), found
/// from the first linear dependence in the Krylov sequence.
inline Poly1 krylov_annihilator(const Matrix& a, const Vec& v) {
    std::vector<Vec> cols;
    Vec w = v;
    for (std::size_t d = 0; d <= a.rows(); ++d) {
        if (!cols.empty()) {
            LinearSolution s = solve(Matrix::from_cols(cols), w);
            if (s.consistent) {
                std::vector<GaussianRational> c(d + 1);
                for (std::size_t k = 0; k < d; ++k) c[k] = -s.particular[k];
                c[d] = 1;
                return Poly1(std::move(c));
            }
        } else if (liesym::is_zero(w)) {
            return Poly1({GaussianRational(1)});
        }
        cols.push_back(w);
        w = a * w;
    }
    throw error("krylov sequence failed to terminate");
}

/// Fast spectral path for operators with small integer spectra: integer
/// roots of a Krylov annihilator, verified by eigenspace dimensions.
inline std::optional<std::vector<Eigenspace>> try_integer_spectrum(const Matrix& a) {
    std::size_t n = a.rows();
    if (n == 0) return std::vector<Eigenspace>{};
    long bound = static_cast<long>(std::max<std::size_t>(n, 8));
    for (int attempt = 0; attempt < 2; ++attempt) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = GaussianRational(static_cast<int>((i * 7 + 3 + attempt * 5) % 11 + 1));
        Poly1 mu = krylov_annihilator(a, v).squarefree_part();
        std::vector<GaussianRational> values;
        Poly1 g = mu;
        for (long t = -bound; t <= bound && g.degree() > 0; ++t) {
            GaussianRational lam(static_cast<int>(t));
            while (g.degree() > 0 && g.eval(lam).is_zero()) {
                if (values.empty() || values.back() != lam) values.push_back(lam);
                g = g.divmod(Poly1::x_minus(lam)).first;
            }
        }
        if (g.degree() != 0) continue;  // annihilator has non-integer roots
        std::vector<Eigenspace> out;
        std::size_t total = 0;
        for (const auto& lam : values) {
            Subspace es = Subspace::span(kernel(shift(a, lam)));
            total += es.dim();
            out.push_back({lam, es});
        }
        if (total != n) continue;  // unlucky Krylov vector missed a summand
        std::sort(out.begin(), out.end(),
                  [](const Eigenspace& x, const Eigenspace& y) { return x.value < y.value; });
        return out;
    }
    return std::nullopt;
}

}  // namespace detail

/// Full eigendecomposition of a diagonalizable operator whose spectrum lies
/// in Q(i); throws with a named reason otherwise.
inline std::vector<Eigenspace> eigendecomposition(const Matrix& a) {
    if (!a.is_square()) throw error("eigendecomposition of non-square matrix");
    if (auto fast = detail::try_integer_spectrum(a)) return *fast;

    Poly1 p = charpoly(a).squarefree_part();
    GaussianRoots r = roots_in_q_i(p);
    if (!r.complete)
        throw error("operator has an eigenvalue outside Q(i); rejecting exact decomposition");
    std::vector<Eigenspace> out;
    std::size_t total = 0;
    for (const auto& [lam, mult] : r.roots) {
        (void)mult;
        Subspace es = Subspace::span(kernel(detail::shift(a, lam)));
        if (es.dim() == 0) continue;
        total += es.dim();
        out.push_back({lam, es});
    }
    if (total != a.rows())
        throw error("operator is not diagonalizable over Q(i)");
    std::sort(out.begin(), out.end(),
              [](const Eigenspace& x, const Eigenspace& y) { return x.value < y.value; });
    return out;
}

inline std::vector<GaussianRational> eigenvalues(const Matrix& a) {
    std::vector<GaussianRational> v;
    for (const auto& e : eigendecomposition(a)) v.push_back(e.value);
    return v;
}

/// Joint eigenspace of a commuting family, labelled by its weight: the
/// tuple of eigenvalues in operator order.
struct WeightSpace {
    Vec weight;
    Subspace space;
};

inline std::vector<WeightSpace> simultaneous_eigendecomposition(const std::vector<Matrix>& ops,
                                                                std::size_t ambient) {
    for (const auto& op : ops)
        if (!op.is_square() || op.rows() != ambient)
            throw error("operator shape does not match ambient dimension");
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!commutator(ops[i], ops[j]).is_zero())
                throw error("operators " + std::to_string(i) + " and " + std::to_string(j) +
                            " do not commute");

    std::vector<WeightSpace> current{{Vec{}, Subspace::full(ambient)}};
    for (const auto& op : ops) {
        std::vector<WeightSpace> next;
        for (const auto& ws : current) {
            Matrix r = restrict_operator(op, ws.space);
            for (const auto& eig : eigendecomposition(r)) {
                std::vector<Vec> gens;
                for (std::size_t j = 0; j < eig.space.dim(); ++j)
                    gens.push_back(ws.space.basis() * eig.space.basis_vector(j));
                Vec w = ws.weight;
                w.push_back(eig.value);
                next.push_back({std::move(w), Subspace::span(ambient, gens)});
            }
        }
        current = std::move(next);
    }
    std::sort(current.begin(), current.end(),
              [](const WeightSpace& a, const WeightSpace& b) { return a.weight < b.weight; });
    return current;
}

}  // namespace liesym
