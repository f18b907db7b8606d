// Standalone acceptance harness: end-to-end checks of the library's public
// behavior, one summary line per check.  All value comparisons are exact
// (zero tolerance); the only pinned tolerances are the wall-clock budgets
// declared next to the checks that carry one.  Exits 0 iff every check
// passes.

#include "liesym/cli.hpp"
#include "liesym/io.hpp"
#include "liesym/obstruction.hpp"

#include "algebras.hpp"
#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace liesym;
using testutil::ScalarStream;

namespace {

struct check_failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw check_failure{message};
}

GaussianRational gr(long v) { return GaussianRational(Rational(v)); }
GaussianRational half(long v) { return GaussianRational(Rational(v, 2)); }

// ---------------------------------------------------------------- check 1

void check_module_identities() {
    for (int n = 0; n <= 10; ++n) {
        Sl2Action m = standard_module(static_cast<std::size_t>(n));
        std::size_t d = m.dim();
        require(d == static_cast<std::size_t>(n + 1), "module dimension");

        // Operator bracket relations of the acting triple.
        require(commutator(m.e0, m.eplus) == gr(2) * m.eplus, "[E0,E+] = 2E+");
        require(commutator(m.e0, m.eminus) == gr(-2) * m.eminus, "[E0,E-] = -2E-");
        require(commutator(m.eplus, m.eminus) == m.e0, "[E+,E-] = E0");

        for (int j = 0; j <= n; ++j) {
            auto uj = static_cast<std::size_t>(j);
            // Standard-basis action, column by column.
            require(m.e0.col(uj) == gr(2 * j - n) * unit_vec(d, uj), "E0 weight");
            Vec up = j < n ? gr(n - j) * unit_vec(d, uj + 1) : Vec(d, GaussianRational());
            require(m.eplus.col(uj) == up, "E+ raise");
            Vec down = j > 0 ? gr(j) * unit_vec(d, uj - 1) : Vec(d, GaussianRational());
            require(m.eminus.col(uj) == down, "E- lower");

            // Both composite-operator scalars, in integer form and in the
            // equivalent half-weight form n/2(n/2+1) - r(r -+ 1).
            GaussianRational hn = half(n), r = half(2 * j - n);
            GaussianRational pm = hn * (hn + gr(1)) - r * (r - gr(1));
            GaussianRational mp = hn * (hn + gr(1)) - r * (r + gr(1));
            require(pm == gr(static_cast<long>(j) * (n - j + 1)), "E+E- scalar forms agree");
            require(mp == gr(static_cast<long>(j + 1) * (n - j)), "E-E+ scalar forms agree");
            require((m.eplus * m.eminus).col(uj) == pm * unit_vec(d, uj), "E+E- eigenvalue");
            require((m.eminus * m.eplus).col(uj) == mp * unit_vec(d, uj), "E-E+ eigenvalue");
        }
    }
}

// ---------------------------------------------------------------- check 2

Sl2Action direct_sum_action(const std::vector<int>& summands) {
    std::size_t total = 0;
    for (int n : summands) total += static_cast<std::size_t>(n) + 1;
    Sl2Action out{Matrix(total, total), Matrix(total, total), Matrix(total, total)};
    std::size_t base = 0;
    for (int n : summands) {
        Sl2Action block = standard_module(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < block.dim(); ++i)
            for (std::size_t j = 0; j < block.dim(); ++j) {
                out.e0.at(base + i, base + j) = block.e0.at(i, j);
                out.eplus.at(base + i, base + j) = block.eplus.at(i, j);
                out.eminus.at(base + i, base + j) = block.eminus.at(i, j);
            }
        base += block.dim();
    }
    return out;
}

void check_random_decompositions() {
    ScalarStream rng(20260814);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> summands;
        std::map<int, int> expected;
        std::size_t total = 0;
        int count = rng.small_int(1, 6);
        for (int s = 0; s < count; ++s) {
            int n = rng.small_int(0, 6);
            if (total + static_cast<std::size_t>(n) + 1 > 40) break;
            summands.push_back(n);
            ++expected[n];
            total += static_cast<std::size_t>(n) + 1;
        }
        if (summands.empty()) {
            summands.push_back(0);
            expected[0] = 1;
            total = 1;
        }

        Sl2Action plain = direct_sum_action(summands);
        Matrix p = testutil::random_unimodular(rng, total, static_cast<int>(total));
        Matrix pinv = inverse(p);
        Sl2Action moved{p * plain.e0 * pinv, p * plain.eplus * pinv, p * plain.eminus * pinv};

        ModuleDecomposition dec = decompose(moved);
        require(dec.multiplicities == expected,
                "trial " + std::to_string(trial) + ": recovered multiset differs");
    }
}

// ---------------------------------------------------------------- check 3

/// Induced action on the alternating square: basis e_i ^ e_j for i < j,
/// with A(x ^ y) = Ax ^ y + x ^ Ay.
Sl2Action alternating_square(const Sl2Action& a) {
    std::size_t d = a.dim();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> at;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            at[{i, j}] = pairs.size();
            pairs.push_back({i, j});
        }
    auto lift = [&](const Matrix& m) {
        Matrix out(pairs.size(), pairs.size());
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            auto [i, j] = pairs[c];
            for (std::size_t k = 0; k < d; ++k) {
                if (!m.at(k, i).is_zero() && k != j) {
                    if (k < j)
                        out.at(at[{k, j}], c) += m.at(k, i);
                    else
                        out.at(at[{j, k}], c) -= m.at(k, i);
                }
                if (!m.at(k, j).is_zero() && k != i) {
                    if (i < k)
                        out.at(at[{i, k}], c) += m.at(k, j);
                    else
                        out.at(at[{k, i}], c) -= m.at(k, j);
                }
            }
        }
        return out;
    };
    return {lift(a.e0), lift(a.eplus), lift(a.eminus)};
}

void check_alternating_squares() {
    auto weight_multiplicity = [](const Sl2Action& a, long w) {
        Matrix shifted = a.e0;
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted.at(i, i) -= gr(w);
        return kernel(shifted).cols();
    };

    Sl2Action two = alternating_square(standard_module(2));
    require(two.dim() == 3, "alternating square of the 3-dim module has dim 3");
    ModuleDecomposition d2 = decompose(two);
    require(d2.multiplicities == std::map<int, int>{{2, 1}},
            "alternating square of M2 is exactly one copy of M2");
    require(d2.multiplicities.count(0) == 0, "no trivial summand for M2");

    Sl2Action four = alternating_square(standard_module(4));
    require(four.dim() == 10, "alternating square of the 5-dim module has dim 10");
    ModuleDecomposition d4 = decompose(four);
    require(d4.multiplicities == (std::map<int, int>{{2, 1}, {6, 1}}),
            "alternating square of M4 is M6 + M2");
    require(d4.multiplicities.count(0) == 0, "no trivial summand for M4");

    // Independent weight count: multiplicities of each even weight must
    // match the totals implied by the recovered summands.
    for (long w : {0L, 2L, 4L, 6L}) {
        std::size_t expect2 = (w <= 2) ? 1 : 0;
        require(weight_multiplicity(two, w) == expect2, "M2 weight count");
        require(weight_multiplicity(two, -w) == expect2, "M2 weight count (negative)");
        std::size_t expect4 = (w == 0 || w == 2) ? 2 : 1;
        require(weight_multiplicity(four, w) == expect4, "M4 weight count");
        require(weight_multiplicity(four, -w) == expect4, "M4 weight count (negative)");
    }
    require(weight_multiplicity(four, 8) == 0, "M4 has no weight 8");
}

// ---------------------------------------------------------------- check 4

void check_structure_suite() {
    LieAlgebra both = direct_sum(testutil::sl2(), testutil::heisenberg());
    Subspace rad = radical(both);
    std::vector<Vec> tail;
    for (std::size_t i = 3; i < 6; ++i) tail.push_back(unit_vec(6, i));
    require(rad == Subspace::span(6, tail), "radical is the nilpotent summand");

    Subspace ctr = center(testutil::heisenberg());
    require(ctr.dim() == 1, "center of the 3-dim nilpotent algebra is a line");
    require(ctr == Subspace::span(3, {unit_vec(3, 2)}), "center is the bracket image");

    Matrix killing = killing_gram(testutil::sl2());
    require(killing.at(0, 0) == gr(8), "trace form of the grading element is 8");
    require(killing.at(1, 2) == gr(4), "trace form pairing of the ladder pair is 4");
    require(killing.at(2, 1) == gr(4), "trace form is symmetric on the ladder pair");
}

// ---------------------------------------------------------------- check 5

struct FlatPieces {
    Matrix gram;
    std::vector<std::size_t> v1, v2;
    std::vector<Matrix> lambda;
    Matrix v;
};

FlatPieces flat_control() {
    FlatPieces f{Matrix(4, 4), {0, 1}, {2, 3}, {Matrix(4, 4), Matrix(4, 4)}, Matrix(4, 2)};
    f.gram.at(0, 1) = gr(1);
    f.gram.at(1, 0) = gr(-1);
    f.gram.at(2, 3) = gr(1);
    f.gram.at(3, 2) = gr(-1);
    f.v.at(0, 0) = gr(1);
    f.v.at(1, 1) = gr(1);
    return f;
}

ExtrinsicRealization build_flat(const FlatPieces& f) {
    LieAlgebra g(2, {"x", "y"});
    SymmetricPair pair(std::move(g), Subspace::zero(2), Subspace::full(2));
    std::vector<Vec> b1, b2;
    for (std::size_t i : f.v1) b1.push_back(unit_vec(4, i));
    for (std::size_t i : f.v2) b2.push_back(unit_vec(4, i));
    SplitSymplecticSpace space(BilinearForm(f.gram, FormKind::antisymmetric),
                               Subspace::span(4, b1), Subspace::span(4, b2));
    return ExtrinsicRealization(std::move(pair), std::move(space), f.lambda, f.v);
}

void check_mutation_rejection() {
    require(validate_realization(build_flat(flat_control())).ok,
            "flat control must be accepted");

    using Mutation = std::function<void(FlatPieces&)>;
    std::vector<std::pair<Mutation, std::string>> mutations;
    auto add = [&](Mutation m, std::string expect = "") {
        mutations.push_back({std::move(m), std::move(expect)});
    };

    auto set_form = [](FlatPieces& f, std::size_t i, std::size_t j, long v) {
        f.gram.at(i, j) = gr(v);
        f.gram.at(j, i) = gr(-v);
    };
    add([=](FlatPieces& f) { set_form(f, 0, 1, 0); }, "s1");
    add([=](FlatPieces& f) { set_form(f, 2, 3, 0); }, "s1");
    add([=](FlatPieces& f) { set_form(f, 0, 2, 1); });
    add([=](FlatPieces& f) { set_form(f, 0, 3, 1); });
    add([=](FlatPieces& f) { set_form(f, 1, 2, 1); });
    add([=](FlatPieces& f) { set_form(f, 1, 3, 1); });

    add([](FlatPieces& f) { f.v1 = {0, 2}; }, "s2");
    add([](FlatPieces& f) { f.v1 = {0, 1, 2}; }, "s2");
    add([](FlatPieces& f) { f.v2 = {1, 2}; }, "s2");
    add([](FlatPieces& f) { f.v1 = {0}; }, "s2");

    for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{
             {0, 0}, {0, 1}, {1, 0}, {2, 0}, {2, 3}})
        add([=](FlatPieces& f) { f.lambda[0].at(r, c) = gr(1); });
    for (auto [r, c] :
         std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {3, 2}, {0, 3}})
        add([=](FlatPieces& f) { f.lambda[1].at(r, c) = gr(1); });

    add([](FlatPieces& f) { f.v.at(0, 0) = gr(0); }, "c");
    add([](FlatPieces& f) { f.v.at(1, 1) = gr(0); }, "c");
    add([](FlatPieces& f) { f.v.at(2, 0) = gr(1); }, "d");
    add([](FlatPieces& f) { f.v.at(3, 1) = gr(1); }, "d");
    add([](FlatPieces& f) { f.v.at(2, 1) = gr(1); }, "d");

    require(mutations.size() >= 20, "at least twenty mutations");
    const std::vector<std::string> names{"s1", "s2", "s3", "a", "b", "c", "d", "e"};
    for (std::size_t i = 0; i < mutations.size(); ++i) {
        FlatPieces f = flat_control();
        mutations[i].first(f);
        RealizationCheck rc = validate_realization(build_flat(f));
        require(!rc.ok, "mutation " + std::to_string(i) + " must be rejected");
        require(std::find(names.begin(), names.end(), rc.check) != names.end(),
                "mutation " + std::to_string(i) + " must name the violated condition");
        if (!mutations[i].second.empty())
            require(rc.check == mutations[i].second,
                    "mutation " + std::to_string(i) + " named " + rc.check + ", expected " +
                        mutations[i].second);
    }
}

// ---------------------------------------------------------------- check 6

SymplecticPair sl2_pair() {
    Matrix gram(2, 2);
    gram.at(0, 1) = gr(1);
    gram.at(1, 0) = gr(-1);
    SymmetricPair pair(testutil::sl2(), Subspace::span(3, {unit_vec(3, 0)}),
                       Subspace::span(3, {unit_vec(3, 1), unit_vec(3, 2)}));
    return SymplecticPair(pair, BilinearForm(gram, FormKind::antisymmetric));
}

void check_reduction() {
    ReductionResult rr = reduce(sl2_pair(), Subspace::full(3), {unit_vec(3, 0)});
    const LieAlgebra& sub = rr.subalgebra;
    require(sub.dim() == 3, "reduced algebra has dimension 3");
    require(!is_solvable(sub), "reduced algebra is not solvable");
    require(rr.degrees == (std::vector<long>{-1, 0, 1}), "grading is (-1, 0, 1)");

    // The returned triple is standard: bracket relations hold exactly and
    // the grading element acts with eigenvalue twice the degree.
    require(sub.bracket(rr.triple.e0, rr.triple.eplus) == gr(2) * rr.triple.eplus,
            "[e0,e+] = 2e+");
    require(sub.bracket(rr.triple.e0, rr.triple.eminus) == gr(-2) * rr.triple.eminus,
            "[e0,e-] = -2e-");
    require(sub.bracket(rr.triple.eplus, rr.triple.eminus) == rr.triple.e0, "[e+,e-] = e0");
    for (std::size_t i = 0; i < 3; ++i)
        require(sub.bracket(rr.triple.e0, unit_vec(3, i)) ==
                    gr(2 * rr.degrees[i]) * unit_vec(3, i),
                "grading element acts by twice the degree");

    require(verify_grading(sub, rr.degrees).ok, "grading is bracket-additive");
    PairCheck pc = validate_symplectic(rr.pair);
    require(pc.ok, "reduced pair is a symplectic pair");
    require(validate_pair(rr.pair.pair()).transvective, "reduced pair is transvective");
    RankOneReport ro = check_rank_one_type(rr.pair.pair(), rr.triple);
    require(ro.ok, "reduced pair is of rank-one type: " + ro.reason);
    require(inverse(rr.embedding).is_square(), "embedding is invertible");
}

// ---------------------------------------------------------------- check 7

std::string step_value(const CaseResult& c, const std::string& lemma, const std::string& key) {
    for (const CertStep& s : c.steps)
        if (s.lemma == lemma) {
            auto it = s.values.find(key);
            if (it != s.values.end()) return it->second;
        }
    return "";
}

void check_obstruction() {
    for (int n : {1, 2}) {
        ObstructionCertificate oracle = oracle_certificate(n);
        require(oracle.mode == "oracle", "oracle mode tag");
        require(oracle.cases.size() == 3, "three support patterns");
        for (const CaseResult& c : oracle.cases)
            require(c.verdict == "infeasible",
                    "oracle case must be infeasible for n=" + std::to_string(n));

        ObstructionCertificate replay = replay_certificate(n);
        require(replay.cases.size() == 1, "replay runs the full support pattern");
        const CaseResult& c = replay.cases.front();
        require(c.verdict == "infeasible", "replay is infeasible");
        if (n == 1) {
            // The short chain already fails at the diagonal line value.
            require(c.witness.count("line") == 1, "short replay halts on the line check");
        } else {
            require(step_value(c, "4.7", "r_plus_1") == "1/3", "replayed r for k=1 is 1/3");
            require(step_value(c, "4.7", "r_plus_2") == "-1/3", "replayed r for k=2 is -1/3");
            require(step_value(c, "4.7", "r_minus_1") == "1/3", "replayed opposite r for k=1");
            require(step_value(c, "4.7", "r_minus_2") == "-1/3", "replayed opposite r for k=2");
            require(step_value(c, "4.7", "product_1") == "1/9", "replayed product is 1/9");
            require(step_value(c, "4.7", "product_2") == "1/9", "replayed product at k=2");
            require(c.witness.at("value") == "1/9", "witnessed product differs from one");
        }

        // Every oracle/replay coefficient mismatch is listed, and the list
        // is identical across independent runs.
        require(!replay.discrepancies.empty(), "coefficient mismatches are listed");
        require(replay.discrepancies == compare_certificates(oracle, replay),
                "discrepancy list matches a fresh comparison");
        require(replay_certificate(n).discrepancies == replay.discrepancies,
                "discrepancy list is stable across runs");
    }

    // Full pipeline through the command layer: the simple pair file must
    // end in exit code 2 with certificates that re-check.
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "liesym-acceptance";
    fs::create_directories(dir);
    fs::path input = dir / "simple.pair.json";
    {
        std::ofstream f(input);
        f << R"({"dim": 3, "labels": ["h", "e", "f"],
                 "brackets": [[0, 1, 1, "2"], [0, 2, 2, "-2"], [1, 2, 0, "1"]],
                 "k": [0], "p": [1, 2], "omega": [[0, 1, "1"]]})";
    }
    cli::CommandResult res = cli::cmd_obstruct(input.string());
    std::error_code ec;
    fs::remove_all(dir, ec);
    require(res.exit_code == 2, "pipeline exit code is 2");
    require(res.machine_report["certificates"].size() == 4, "both modes for both chain sizes");
    for (const io::json& doc : res.machine_report["certificates"]) {
        ObstructionCertificate cert = io::certificate_from_json(doc);
        std::string why;
        require(recheck_certificate(cert, &why), "certificate re-checks: " + why);
    }
}

// ---------------------------------------------------------------- check 8

void check_circ_calculus() {
    ScalarStream rng(424243);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t d = 2 * static_cast<std::size_t>(rng.small_int(1, 4));
        Matrix gram0(d, d);
        for (std::size_t i = 0; i + 1 < d; i += 2) {
            gram0.at(i, i + 1) = gr(1);
            gram0.at(i + 1, i) = gr(-1);
        }
        Matrix p = testutil::random_unimodular(rng, d);
        Matrix gram = p.transpose() * gram0 * p;

        auto form = [&](const Vec& a, const Vec& b) {
            GaussianRational acc;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) acc += a[i] * gram.at(i, j) * b[j];
            return acc;
        };
        auto rand_vec = [&] {
            Vec v;
            for (std::size_t i = 0; i < d; ++i) v.push_back(rng.gaussian());
            return v;
        };

        Vec x = rand_vec(), y = rand_vec(), z = rand_vec();
        Matrix op = circ(x, y, gram);
        require(op * z == form(x, z) * y + form(y, z) * x,
                "rank-two operator formula, trial " + std::to_string(trial));
        require(in_sp(op, gram), "rank-two operator lands in the symplectic algebra");

        Matrix a = circ(rand_vec(), rand_vec(), gram);
        require(commutator(a, op) == circ(a * x, y, gram) + circ(x, a * y, gram),
                "derivation identity, trial " + std::to_string(trial));
    }
}

// ---------------------------------------------------------------- check 9

void check_nilpotent_verdict() {
    LieAlgebra g(5, {"x1", "x2", "x3", "y", "z"});
    g.add_bracket_term(0, 1, 3, gr(1));
    g.add_bracket_term(0, 3, 4, gr(-1));
    SymmetricPair pair(g, Subspace::span(5, {unit_vec(5, 3)}),
                       Subspace::span(5, {unit_vec(5, 0), unit_vec(5, 1), unit_vec(5, 2),
                                          unit_vec(5, 4)}));
    require(verify_pair_grading(pair, {1, 1, 1, 2, 3}).ok, "three-step grading is valid");

    Matrix gram(4, 4);
    gram.at(0, 3) = gr(1);
    gram.at(3, 0) = gr(-1);
    gram.at(1, 2) = gr(1);
    gram.at(2, 1) = gr(-1);
    SymplecticPair sp(pair, BilinearForm(gram, FormKind::antisymmetric));
    require(validate_symplectic(sp).ok, "graded pair carries an invariant form");

    require(lower_central_series(sp.pair().algebra()).size() == 4,
            "lower central series has exactly three nonzero steps");
    PipelineOutcome oc = prove_no_realization(sp, std::nullopt, {});
    require(oc.verdict == "solvable — theorem silent", "verdict names solvability");
    require(oc.derived_series_dims == (std::vector<std::size_t>{5, 2, 0}),
            "derived series certificate descends to zero");
    require(oc.certificates.empty(), "no obstruction certificates are produced");
}

// ---------------------------------------------------------------- harness

struct Entry {
    const char* name;
    void (*fn)();
    double budget_seconds;  // 0 = no budget pinned
};

}  // namespace

int main() {
    const Entry entries[] = {
        {"standard module identities", check_module_identities, 1.0},
        {"random decomposition recovery", check_random_decompositions, 30.0},
        {"alternating square decomposition", check_alternating_squares, 0.0},
        {"radical, center, trace form", check_structure_suite, 0.0},
        {"realization mutation rejection", check_mutation_rejection, 0.0},
        {"rank-one reduction", check_reduction, 1.0},
        {"obstruction certificates", check_obstruction, 5.0},
        {"rank-two operator calculus", check_circ_calculus, 0.0},
        {"nilpotent pair verdict", check_nilpotent_verdict, 0.0},
    };

    int failures = 0;
    int index = 0;
    for (const Entry& e : entries) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            e.fn();
        } catch (const check_failure& f) {
            failure = f.message;
        } catch (const std::exception& ex) {
            failure = std::string("unexpected error: ") + ex.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && e.budget_seconds > 0 && seconds >= e.budget_seconds)
            failure = "exceeded the " + std::to_string(e.budget_seconds) + "s budget";
        if (failure.empty()) {
            std::printf("check %d: PASS  %-36s (%.2fs)\n", index, e.name, seconds);
        } else {
            std::printf("check %d: FAIL  %-36s (%.2fs)  %s\n", index, e.name, seconds,
                        failure.c_str());
            ++failures;
        }
    }
    std::printf("%d/9 checks passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
