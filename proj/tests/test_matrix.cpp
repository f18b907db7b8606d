#include "liesym/bilinear.hpp"
#include "liesym/eigen.hpp"
#include "liesym/matrix.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace liesym;
using testutil::G;
using testutil::mat_i;
using testutil::vec_i;

TEST_CASE("row reduction carries its transform") {
    testutil::ScalarStream rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = rng.matrix(4, 5);
        Echelon e = rref(m);
        CHECK(e.t * m == e.r);
        CHECK(e.rank == e.pivots.size());
        CHECK(rank(m.transpose()) == e.rank);
    }
}

TEST_CASE("kernel produces a canonical basis") {
    Matrix m = mat_i({{1, 0}, {0, 0}});
    Matrix k = kernel(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.col(0) == vec_i({0, 1}));

    Matrix wide = mat_i({{1, 2, 3}});
    Matrix kw = kernel(wide);
    REQUIRE(kw.cols() == 2);
    CHECK((wide * kw).is_zero());
}

TEST_CASE("inconsistent systems come with a refutation witness") {
    Matrix a = mat_i({{1, 1}, {2, 2}});
    Vec b = vec_i({1, 3});
    LinearSolution s = solve(a, b);
    REQUIRE(!s.consistent);
    // The witness y satisfies y*A = 0 and y*b != 0, e.g. a multiple of (-2, 1).
    Vec ya(a.cols());
    GaussianRational yb;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) ya[j] += s.certificate[i] * a.at(i, j);
        yb += s.certificate[i] * b[i];
    }
    CHECK(is_zero(ya));
    CHECK(!yb.is_zero());
}

TEST_CASE("consistent solve splits into particular plus kernel") {
    testutil::ScalarStream rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix a = rng.matrix(4, 3);
        Vec x{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        Vec b = a * x;
        LinearSolution s = solve(a, b);
        REQUIRE(s.consistent);
        CHECK(a * s.particular == b);
        CHECK((a * s.homogeneous).is_zero());
    }
}

TEST_CASE("determinant and inverse agree with elimination") {
    Matrix m = mat_i({{2, 1}, {1, 1}});
    CHECK(det(m) == G("1"));
    CHECK(inverse(m) * m == Matrix::identity(2));

    CHECK(det(mat_i({{1, 1}, {2, 2}})).is_zero());
    CHECK_THROWS_AS(inverse(mat_i({{1, 1}, {2, 2}})), error);

    testutil::ScalarStream rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = rng.matrix(4, 4);
        Matrix b = rng.matrix(4, 4);
        CHECK(det(a * b) == det(a) * det(b));
        CHECK(det(a.transpose()) == det(a));
    }
}

TEST_CASE("subspace algebra has canonical bases") {
    // Two planes in dimension 3 intersecting in a line.
    Subspace s1 = Subspace::span(3, {vec_i({1, 0, 0}), vec_i({0, 1, 0})});
    Subspace s2 = Subspace::span(3, {vec_i({0, 1, 0}), vec_i({0, 0, 1})});
    CHECK(s1.dim() == 2);
    CHECK(s1.sum(s2) == Subspace::full(3));
    Subspace line = s1.intersect(s2);
    REQUIRE(line.dim() == 1);
    CHECK(line.contains(vec_i({0, 5, 0})));
    CHECK(!line.contains(vec_i({1, 0, 0})));

    // Spans are canonical: generator order does not matter.
    Subspace a = Subspace::span(3, {vec_i({1, 2, 0}), vec_i({0, 1, 1})});
    Subspace b = Subspace::span(3, {vec_i({1, 3, 1}), vec_i({0, -1, -1})});
    CHECK(a == b);
    CHECK(a.basis() == b.basis());

    Vec v = vec_i({2, 5, 1});
    Vec coords = a.coordinates_of(v);
    CHECK(a.basis() * coords == v);
    CHECK_THROWS_AS(a.coordinates_of(vec_i({0, 0, 7})), error);
}

TEST_CASE("operators restrict to invariant subspaces only") {
    Matrix op = mat_i({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
    Subspace inv = Subspace::span(3, {vec_i({1, 0, 0}), vec_i({0, 1, 0})});
    Matrix r = restrict_operator(op, inv);
    CHECK(r == mat_i({{1, 1}, {0, 1}}));

    Subspace bad = Subspace::span(3, {vec_i({0, 1, 1})});
    CHECK_THROWS_AS(restrict_operator(op, bad), error);
}

TEST_CASE("bilinear forms validate their declared symmetry") {
    CHECK_THROWS_AS(BilinearForm(mat_i({{0, 1}, {1, 0}}), FormKind::antisymmetric), error);
    CHECK_THROWS_AS(BilinearForm(mat_i({{0, 1}, {-1, 1}}), FormKind::antisymmetric), error);
    BilinearForm omega(mat_i({{0, 1}, {-1, 0}}), FormKind::antisymmetric);
    CHECK(omega.apply(vec_i({1, 0}), vec_i({0, 1})) == G("1"));
    CHECK(omega.apply(vec_i({0, 1}), vec_i({1, 0})) == G("-1"));
}

TEST_CASE("form radical and orthogonal complements") {
    // Rank-2 antisymmetric form on dimension 3: radical is the z-axis.
    BilinearForm omega(mat_i({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}), FormKind::antisymmetric);
    Subspace rad = form_radical(omega, Subspace::full(3));
    REQUIRE(rad.dim() == 1);
    CHECK(rad.contains(vec_i({0, 0, 1})));
    CHECK(!nondegenerate_on(omega, Subspace::full(3)));
    CHECK(nondegenerate_on(omega, Subspace::span(3, {vec_i({1, 0, 0}), vec_i({0, 1, 0})})));

    Subspace x_axis = Subspace::span(3, {vec_i({1, 0, 0})});
    Subspace perp = orthogonal_complement(omega, x_axis, Subspace::full(3));
    REQUIRE(perp.dim() == 2);
    CHECK(perp.contains(vec_i({1, 0, 0})));  // isotropic line sits in its own perp
    CHECK(perp.contains(vec_i({0, 0, 1})));
}

TEST_CASE("polynomial division, gcd, and squarefree part") {
    // (x - 1)^2 (x + 2)
    Poly1 p = Poly1::x_minus(G("1")) * Poly1::x_minus(G("1")) * Poly1::x_minus(G("-2"));
    auto [q, r] = p.divmod(Poly1::x_minus(G("1")));
    CHECK(r.is_zero());
    CHECK(q.degree() == 2);
    Poly1 sf = p.squarefree_part();
    CHECK(sf.degree() == 2);
    CHECK(sf.eval(G("1")).is_zero());
    CHECK(sf.eval(G("-2")).is_zero());
    CHECK(gcd(p, p.derivative()).degree() == 1);
}

TEST_CASE("characteristic polynomial matches known factors") {
    Matrix m = mat_i({{2, 1}, {0, 3}});
    Poly1 p = charpoly(m);
    CHECK(p.coeffs() == std::vector<GaussianRational>{G("6"), G("-5"), G("1")});
    // Cayley-Hamilton on random matrices.
    testutil::ScalarStream rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a = rng.matrix(4, 4);
        Poly1 cp = charpoly(a);
        Matrix acc(4, 4);
        Matrix power = Matrix::identity(4);
        for (int k = 0; k <= cp.degree(); ++k) {
            acc += cp.coeff(k) * power;
            power = a * power;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("root search over Q(i)") {
    // x^2 + 1 = (x - i)(x + i)
    GaussianRoots r = roots_in_q_i(Poly1({G("1"), G("0"), G("1")}));
    REQUIRE(r.complete);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].first == G("-1i"));
    CHECK(r.roots[1].first == G("1i"));

    // x^2 - 2 has no Q(i) roots.
    GaussianRoots bad = roots_in_q_i(Poly1({G("-2"), G("0"), G("1")}));
    CHECK(!bad.complete);
    CHECK(bad.roots.empty());

    // Rational and Gaussian roots mixed, with multiplicity: x^2(x - 1/2)(x - 1-1i).
    Poly1 p = Poly1({G("0"), G("0"), G("1")}) * Poly1::x_minus(G("1/2")) * Poly1::x_minus(G("1+1i"));
    GaussianRoots mixed = roots_in_q_i(p);
    REQUIRE(mixed.complete);
    REQUIRE(mixed.roots.size() == 3);
    for (const auto& [val, mult] : mixed.roots) {
        if (val == G("0")) CHECK(mult == 2);
        else CHECK(mult == 1);
    }
}

TEST_CASE("eigendecomposition of exact operators") {
    // Diagonalizable with distinct eigenvalues 1, 2.
    Matrix m = mat_i({{1, 1}, {0, 2}});
    auto eig = eigendecomposition(m);
    REQUIRE(eig.size() == 2);
    CHECK(eig[0].value == G("1"));
    CHECK(eig[1].value == G("2"));
    CHECK(eig[1].space.contains(vec_i({1, 1})));

    // Rotation generator: eigenvalues +-i live in Q(i).
    auto rot = eigendecomposition(mat_i({{0, 1}, {-1, 0}}));
    REQUIRE(rot.size() == 2);
    CHECK(rot[0].value == G("-1i"));
    CHECK(rot[1].value == G("1i"));

    // Jordan block: defect detected.
    CHECK_THROWS_WITH(eigendecomposition(mat_i({{1, 1}, {0, 1}})),
                      Catch::Matchers::ContainsSubstring("not diagonalizable"));

    // Eigenvalues sqrt(2): outside Q(i).
    CHECK_THROWS_WITH(eigendecomposition(mat_i({{0, 2}, {1, 0}})),
                      Catch::Matchers::ContainsSubstring("outside Q(i)"));
}

TEST_CASE("eigendecomposition of conjugated integer spectra") {
    testutil::ScalarStream rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 6;
        Matrix d(n, n);
        std::vector<int> spec;
        for (std::size_t j = 0; j < n; ++j) {
            int lam = rng.small_int(-3, 3);
            spec.push_back(lam);
            d.at(j, j) = GaussianRational(lam);
        }
        Matrix p = testutil::random_unimodular(rng, n);
        Matrix a = p * d * inverse(p);
        auto eig = eigendecomposition(a);
        std::size_t total = 0;
        for (const auto& e : eig) {
            total += e.space.dim();
            std::size_t expected = 0;
            for (int lam : spec)
                if (GaussianRational(lam) == e.value) ++expected;
            CHECK(e.space.dim() == expected);
            // Each basis vector is an actual eigenvector.
            for (std::size_t j = 0; j < e.space.dim(); ++j) {
                Vec v = e.space.basis_vector(j);
                CHECK(a * v == e.value * v);
            }
        }
        CHECK(total == n);
    }
}

TEST_CASE("simultaneous decomposition of commuting operators") {
    Matrix a = mat_i({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    Matrix b = mat_i({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto ws = simultaneous_eigendecomposition({a, b}, 3);
    REQUIRE(ws.size() == 3);
    CHECK(ws[0].weight == vec_i({0, 1}));
    CHECK(ws[1].weight == vec_i({1, 0}));
    CHECK(ws[2].weight == vec_i({1, 1}));
    for (const auto& w : ws) CHECK(w.space.dim() == 1);

    // Empty family: single block, empty weight.
    auto none = simultaneous_eigendecomposition({}, 4);
    REQUIRE(none.size() == 1);
    CHECK(none[0].weight.empty());
    CHECK(none[0].space == Subspace::full(4));

    CHECK_THROWS_WITH(simultaneous_eigendecomposition({mat_i({{0, 1}, {0, 0}}), mat_i({{0, 0}, {1, 0}})}, 2),
                      Catch::Matchers::ContainsSubstring("do not commute"));
}
