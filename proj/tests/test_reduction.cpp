#include <catch2/catch_amalgamated.hpp>

#include "liesym/reduction.hpp"

#include "algebras.hpp"
#include "helpers.hpp"

using namespace liesym;
using namespace testutil;

namespace {

SymplecticPair sl2_symplectic() {
    LieAlgebra g = sl2();
    SymmetricPair pair(g, Subspace::span(3, {unit_vec(3, 0)}),
                       Subspace::span(3, {unit_vec(3, 1), unit_vec(3, 2)}));
    return SymplecticPair(pair, BilinearForm(mat({{"0", "1"}, {"-1", "0"}}), FormKind::antisymmetric));
}

Subspace idx_span(std::size_t ambient, std::initializer_list<std::size_t> idx) {
    std::vector<Vec> gens;
    for (std::size_t i : idx) gens.push_back(unit_vec(ambient, i));
    return Subspace::span(ambient, gens);
}

}  // namespace

TEST_CASE("simple pair reduces to itself with the standard grading") {
    SymplecticPair sp = sl2_symplectic();
    ReductionResult res = reduce(sp, Subspace::full(3), {unit_vec(3, 0)});

    CHECK(res.lambda0 == Vec{G("2")});
    CHECK(res.degrees == std::vector<long>{-1, 0, 1});
    CHECK(res.subalgebra.dim() == 3);
    REQUIRE(res.embedding.cols() == 3);
    CHECK(res.embedding.col(0) == unit_vec(3, 2));  // f carries degree -1
    CHECK(res.embedding.col(1) == unit_vec(3, 0));  // h carries degree 0
    CHECK(res.embedding.col(2) == unit_vec(3, 1));  // e carries degree 1

    CHECK(res.grading.at(-1) == idx_span(3, {2}));
    CHECK(res.grading.at(0) == idx_span(3, {0}));
    CHECK(res.grading.at(1) == idx_span(3, {1}));

    CHECK(res.triple.e0 == unit_vec(3, 1));
    CHECK(res.triple.eplus == unit_vec(3, 2));
    CHECK(res.triple.eminus == unit_vec(3, 0));

    // Reduced brackets replay the original ones in the permuted basis.
    CHECK(res.subalgebra.bracket_basis(0, 1) == vec_i({2, 0, 0}));   // [f,h] = 2f
    CHECK(res.subalgebra.bracket_basis(1, 2) == vec_i({0, 0, 2}));   // [h,e] = 2e
    CHECK(res.subalgebra.bracket_basis(0, 2) == vec_i({0, -1, 0}));  // [f,e] = -h

    CHECK(validate_symplectic(res.pair).ok);
    CHECK_FALSE(res.restricted.has_value());
}

TEST_CASE("product of two simple factors reduces to the lexicographic one") {
    LieAlgebra g = direct_sum(sl2(), sl2());
    SymmetricPair pair(g, idx_span(6, {0, 3}), idx_span(6, {1, 2, 4, 5}));
    Matrix gram(4, 4);
    gram.at(0, 1) = G("1");
    gram.at(1, 0) = G("-1");
    gram.at(2, 3) = G("1");
    gram.at(3, 2) = G("-1");
    SymplecticPair sp(pair, BilinearForm(gram, FormKind::antisymmetric));
    REQUIRE(validate_symplectic(sp).ok);

    ReductionResult res = reduce(sp, Subspace::full(6), {unit_vec(6, 0), unit_vec(6, 3)});

    CHECK(res.lambda0 == Vec{G("0"), G("2")});
    CHECK(res.subalgebra.dim() == 3);
    CHECK(res.degrees == std::vector<long>{-1, 0, 1});
    CHECK(res.embedding.col(0) == unit_vec(6, 5));  // second-factor f
    CHECK(res.embedding.col(1) == unit_vec(6, 3));  // second-factor h
    CHECK(res.embedding.col(2) == unit_vec(6, 4));  // second-factor e
    CHECK(res.subalgebra.validate().ok);
}

TEST_CASE("weight with a populated double is disqualified") {
    LieAlgebra g = sl3_rotation_adapted();
    REQUIRE(g.validate().ok);
    SymmetricPair pair(g, idx_span(8, {0, 1, 2}), idx_span(8, {3, 4, 5, 6, 7}));
    PairCheck pc = validate_pair(pair);
    REQUIRE(pc.ok);
    CHECK(pc.transvective);

    WeightDecomposition wd = weight_decompose(pair, {unit_vec(8, 0)}, Subspace::full(8));
    REQUIRE(wd.p_blocks.size() == 5);
    CHECK(verify_weight_brackets(pair, wd));
    std::vector<Vec> weights;
    for (const auto& b : wd.p_blocks) weights.push_back(b.weight);
    CHECK(weights == std::vector<Vec>{{G("-2i")}, {G("-1i")}, {G("0")}, {G("1i")}, {G("2i")}});

    // The imaginary unit weight loses to its own double; only 2i survives.
    CHECK(choose_reduction_weight(wd) == Vec{G("2i")});
}

TEST_CASE("radical weight lines travel with the reduction") {
    LieAlgebra g = sl2_semidirect_module(2);  // h, e, f, m0, m1, m2
    SymmetricPair pair(g, idx_span(6, {0, 4}), idx_span(6, {1, 2, 3, 5}));
    // Invariant form pairing e with m0 and f with m2; the simple roots pair
    // across to the module tails.
    Matrix gram(4, 4);  // p basis order e, f, m0, m2
    gram.at(0, 2) = G("1");
    gram.at(2, 0) = G("-1");
    gram.at(1, 3) = G("1");
    gram.at(3, 1) = G("-1");
    SymplecticPair sp(pair, BilinearForm(gram, FormKind::antisymmetric));
    REQUIRE(validate_symplectic(sp).ok);

    ReductionResult res = reduce(sp, idx_span(6, {0, 1, 2}), {unit_vec(6, 0)});

    CHECK(res.lambda0 == Vec{G("2")});
    CHECK(res.subalgebra.dim() == 6);
    CHECK(res.degrees == std::vector<long>{-1, -1, 0, 0, 1, 1});
    CHECK(res.grading.at(-1) == idx_span(6, {2, 3}));  // f and m0
    CHECK(res.grading.at(0) == idx_span(6, {0, 4}));   // h and m1
    CHECK(res.grading.at(1) == idx_span(6, {1, 5}));   // e and m2
    CHECK(res.embedding * res.triple.e0 == unit_vec(6, 0));
    CHECK(res.embedding * res.triple.eplus == unit_vec(6, 1));
    CHECK(res.embedding * res.triple.eminus == unit_vec(6, 2));
    CHECK(validate_symplectic(res.pair).ok);
}

TEST_CASE("solvable input is rejected outright") {
    LieAlgebra g = heisenberg();
    SymmetricPair pair(g, idx_span(3, {2}), idx_span(3, {0, 1}));
    SymplecticPair sp(pair, BilinearForm(mat({{"0", "1"}, {"-1", "0"}}), FormKind::antisymmetric));
    REQUIRE(validate_symplectic(sp).ok);
    CHECK_THROWS_WITH(reduce(sp, Subspace::zero(3), {}),
                      "the transvection algebra is solvable; nothing to reduce");
}

TEST_CASE("non-transvective input is rejected") {
    LieAlgebra g = direct_sum(sl2(), heisenberg());
    SymmetricPair pair(g, idx_span(6, {0, 3, 4, 5}), idx_span(6, {1, 2}));
    SymplecticPair sp(pair, BilinearForm(mat({{"0", "1"}, {"-1", "0"}}), FormKind::antisymmetric));
    CHECK_THROWS_WITH(reduce(sp, Subspace::full(6), {unit_vec(6, 0)}), "pair is not transvective");
}

TEST_CASE("torus outside the even Levi part is rejected") {
    SymplecticPair sp = sl2_symplectic();
    CHECK_THROWS_WITH(reduce(sp, Subspace::full(3), {unit_vec(3, 1)}),
                      "torus must lie in the even part of the Levi complement");
}

TEST_CASE("a supplied linear model is cut down alongside the algebra") {
    SymplecticPair sp = sl2_symplectic();
    // Mechanically shaped model on a four-dimensional space.  It cannot be a
    // homomorphism (the commutator [e,f] has a nonzero linear part while e
    // and f act by zero), and the same defect must survive the restriction.
    Matrix lh(4, 4);
    lh.at(0, 0) = G("2");
    lh.at(1, 1) = G("-2");
    lh.at(2, 2) = G("2");
    lh.at(3, 3) = G("-2");
    Matrix gram(4, 4);
    gram.at(0, 1) = G("1");
    gram.at(1, 0) = G("-1");
    gram.at(2, 3) = G("1");
    gram.at(3, 2) = G("-1");
    Matrix v(4, 3);
    v.at(0, 1) = G("1");  // v(e) spans the first line
    v.at(1, 2) = G("1");  // v(f) the second
    SplitSymplecticSpace space{BilinearForm(gram, FormKind::antisymmetric),
                               idx_span(4, {0, 1}), idx_span(4, {2, 3})};
    ExtrinsicRealization model(sp.pair(), space, {lh, Matrix(4, 4), Matrix(4, 4)}, v);
    RealizationCheck input = validate_realization(model);
    REQUIRE_FALSE(input.ok);
    CHECK(input.check == "b");

    ReductionResult res = reduce(sp, Subspace::full(3), {unit_vec(3, 0)}, model);
    REQUIRE(res.restricted.has_value());
    CHECK(res.restricted->realization.space().dim() == 2);
    CHECK(res.restricted->realization.space().v1.dim() == 2);
    CHECK(res.restricted->realization.space().v2.dim() == 0);
    Matrix expect(2, 2);
    expect.at(0, 0) = G("2");
    expect.at(1, 1) = G("-2");
    CHECK(res.restricted->realization.lambda()[1] == expect);  // h sits at degree 0
    CHECK_FALSE(res.restricted->check.ok);
    CHECK(res.restricted->check.check == "b");
}
