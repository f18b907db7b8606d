#pragma once

// Stock algebras used across the test suites.

#include "liesym/lie.hpp"
#include "liesym/sl2.hpp"

#include "helpers.hpp"

namespace testutil {

/// Split three-dimensional simple algebra: basis h, e, f with
/// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline liesym::LieAlgebra sl2() {
    liesym::LieAlgebra g(3, {"h", "e", "f"});
    g.set_bracket(0, 1, vec_i({0, 2, 0}));
    g.set_bracket(0, 2, vec_i({0, 0, -2}));
    g.set_bracket(1, 2, vec_i({1, 0, 0}));
    return g;
}

/// Heisenberg algebra: [x, y] = z.
inline liesym::LieAlgebra heisenberg() {
    liesym::LieAlgebra g(3, {"x", "y", "z"});
    g.set_bracket(0, 1, vec_i({0, 0, 1}));
    return g;
}

/// sl2 acting on the abelianized chain module of highest weight n;
/// basis order h, e, f, m0, ..., mn.
inline liesym::LieAlgebra sl2_semidirect_module(int n) {
    liesym::Sl2Action a = liesym::standard_module(n);
    return liesym::semidirect_abelian(sl2(), {a.e0, a.eplus, a.eminus});
}

/// Lie algebra spanned by the given independent square matrices, with
/// brackets computed from the commutator.
inline liesym::LieAlgebra matrix_algebra(const std::vector<liesym::Matrix>& basis,
                                         std::vector<std::string> labels = {}) {
    using namespace liesym;
    auto flat = [](const Matrix& m) {
        Vec v;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c));
        return v;
    };
    std::vector<Vec> cols;
    for (const Matrix& m : basis) cols.push_back(flat(m));
    Matrix span = Matrix::from_cols(cols);
    LieAlgebra g(basis.size(), std::move(labels));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            LinearSolution s = solve(span, flat(commutator(basis[i], basis[j])));
            if (!s.consistent) throw error("matrix span is not closed under commutators");
            g.set_bracket(i, j, s.particular);
        }
    return g;
}

/// Traceless 3x3 matrices on a basis adapted to the rotation subalgebra:
/// three antisymmetric generators first, then the five symmetric traceless
/// ones.
inline liesym::LieAlgebra sl3_rotation_adapted() {
    using liesym::Matrix;
    auto e = [](std::size_t r, std::size_t c, int sign) {
        Matrix m(3, 3);
        m.at(r, c) = liesym::GaussianRational(1);
        if (sign > 0)
            m.at(c, r) = liesym::GaussianRational(1);
        else
            m.at(c, r) = liesym::GaussianRational(-1);
        return m;
    };
    Matrix d1(3, 3), d2(3, 3);
    d1.at(0, 0) = liesym::GaussianRational(1);
    d1.at(1, 1) = liesym::GaussianRational(-1);
    d2.at(1, 1) = liesym::GaussianRational(1);
    d2.at(2, 2) = liesym::GaussianRational(-1);
    return matrix_algebra({e(0, 1, -1), e(0, 2, -1), e(1, 2, -1), e(0, 1, 1), e(0, 2, 1),
                           e(1, 2, 1), d1, d2},
                          {"a12", "a13", "a23", "s12", "s13", "s23", "d1", "d2"});
}

/// Three-step graded nilpotent example: degrees (1,1,1,2,3) on basis
/// (x1,x2,x3,z,w) with [x1,x2] = z and [z,x1] = w.
inline liesym::LieAlgebra three_step_nilpotent() {
    liesym::LieAlgebra g(5, {"x1", "x2", "x3", "z", "w"});
    g.set_bracket(0, 1, vec_i({0, 0, 0, 1, 0}));
    g.set_bracket(0, 3, vec_i({0, 0, 0, 0, -1}));  // [x1,z] = -w, i.e. [z,x1] = w
    return g;
}

}  // namespace testutil
