#pragma once

// Shared conveniences for the test suites: terse constructors for exact
// scalars, vectors, and matrices from string literals.

#include "liesym/matrix.hpp"
#include "liesym/scalar.hpp"

#include <string>
#include <vector>

namespace testutil {

inline liesym::GaussianRational G(const std::string& s) { return liesym::GaussianRational::parse(s); }

inline liesym::Vec vec(const std::vector<std::string>& entries) {
    liesym::Vec v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(G(e));
    return v;
}

inline liesym::Vec vec_i(const std::vector<int>& entries) {
    liesym::Vec v;
    v.reserve(entries.size());
    for (int e : entries) v.push_back(liesym::GaussianRational(e));
    return v;
}

inline liesym::Matrix mat(const std::vector<std::vector<std::string>>& rows) {
    std::vector<liesym::Vec> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(vec(row));
    return liesym::Matrix::from_rows(r);
}

inline liesym::Matrix mat_i(const std::vector<std::vector<int>>& rows) {
    std::vector<liesym::Vec> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(vec_i(row));
    return liesym::Matrix::from_rows(r);
}

/// Deterministic linear-congruential stream of small scalars for
/// randomized property checks (kept local so runs are reproducible).
class ScalarStream {
public:
    explicit ScalarStream(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}

    std::uint64_t next_raw() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ >> 33;
    }

    int small_int(int lo, int hi) {
        return lo + static_cast<int>(next_raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    liesym::GaussianRational rational() {
        int num = small_int(-6, 6);
        int den = small_int(1, 4);
        return liesym::GaussianRational(liesym::Rational(num, den));
    }

    liesym::GaussianRational gaussian() {
        liesym::GaussianRational re = rational(), im = rational();
        return liesym::GaussianRational(re.re(), im.re());
    }

    liesym::GaussianRational nonzero_gaussian() {
        for (;;) {
            auto g = gaussian();
            if (!g.is_zero()) return g;
        }
    }

    liesym::Matrix matrix(std::size_t rows, std::size_t cols, bool gaussian_entries = true) {
        liesym::Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = gaussian_entries ? gaussian() : rational();
        return m;
    }

private:
    std::uint64_t state_;
};

/// Product of random elementary row operations with small integer factors:
/// invertible, with an equally tame inverse, so conjugation stays cheap.
inline liesym::Matrix random_unimodular(ScalarStream& rng, std::size_t n, int ops = -1) {
    liesym::Matrix p = liesym::Matrix::identity(n);
    if (ops < 0) ops = static_cast<int>(2 * n);
    for (int k = 0; k < ops && n > 1; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.small_int(0, static_cast<int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rng.small_int(0, static_cast<int>(n) - 1));
        if (i == j) continue;
        liesym::GaussianRational f(rng.small_int(-2, 2));
        for (std::size_t c = 0; c < n; ++c) p.at(i, c) += f * p.at(j, c);
    }
    return p;
}

}  // namespace testutil
