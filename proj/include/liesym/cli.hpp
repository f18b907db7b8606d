#pragma once

// Command-line front end.
//
// Three subcommands, each producing a human report and a machine report that
// carry identical verdicts and values:
//   check <file>         validate an algebra, pair, or realization file
//   reduce <file>        run the rank-one reduction and write the result
//   obstruct <file|--n>  run the full non-existence pipeline, or replay the
//                        fixed obstruction chain for a chain half-size n
//
// Exit codes:
//   0  all checks passed / verdict as claimed
//   1  validation failure (including a feasible outcome, which contradicts
//      the expected obstruction and deserves attention)
//   2  obstruction established: non-existence proven, certificate emitted
//   3  input or parse error
//
// The commands themselves are pure: they read files but never write them.
// run() handles output files and streams.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liesym/io.hpp"
#include "liesym/obstruction.hpp"

namespace liesym::cli {

struct CommandResult {
    int exit_code = 0;
    std::string human_report;
    io::json machine_report;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline io::json dims_json(const std::vector<std::size_t>& dims) {
    io::json out = io::json::array();
    for (std::size_t d : dims) out.push_back(d);
    return out;
}

inline std::string dims_text(const std::vector<std::size_t>& dims) {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? " " : "") << dims[i];
    return os.str();
}

inline std::vector<std::size_t> series_dims(const std::vector<Subspace>& series) {
    std::vector<std::size_t> dims;
    for (const Subspace& s : series) dims.push_back(s.dim());
    return dims;
}

inline CommandResult input_error(const std::string& command, const std::string& msg,
                                 const std::string& input_hash) {
    CommandResult r;
    r.exit_code = 3;
    r.human_report = command + ": input error: " + msg + "\n";
    r.machine_report = io::new_document(input_hash);
    r.machine_report["command"] = command;
    r.machine_report["error"] = msg;
    return r;
}

inline CommandResult check_failure(const std::string& command, const std::string& msg,
                                   const std::string& input_hash) {
    CommandResult r;
    r.exit_code = 1;
    r.human_report = command + ": " + msg + "\n";
    r.machine_report = io::new_document(input_hash);
    r.machine_report["command"] = command;
    r.machine_report["valid"] = false;
    r.machine_report["reason"] = msg;
    return r;
}

/// Infer the file kind from its name: .lie.json, .pair.json,
/// .realization.json, or .reduction.json (reduction files are pair files
/// with extra keys).
inline std::string infer_kind(const std::string& path) {
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".lie.json")) return "lie";
    if (ends_with(".pair.json")) return "pair";
    if (ends_with(".realization.json")) return "realization";
    if (ends_with(".reduction.json")) return "pair";
    return "";
}

inline void append_algebra_facts(const LieAlgebra& g, io::json& machine,
                                 std::ostringstream& human) {
    bool solvable = is_solvable(g);
    bool nilpotent = is_nilpotent(g);
    auto derived = series_dims(derived_series(g));
    auto lower = series_dims(lower_central_series(g));
    machine["dim"] = g.dim();
    machine["solvable"] = solvable;
    machine["nilpotent"] = nilpotent;
    machine["derived_series_dims"] = dims_json(derived);
    machine["lower_central_dims"] = dims_json(lower);
    human << "dim: " << g.dim() << "\n";
    human << "solvable: " << yes_no(solvable) << "\n";
    human << "nilpotent: " << yes_no(nilpotent) << "\n";
    human << "derived series dims: " << dims_text(derived) << "\n";
    human << "lower central dims: " << dims_text(lower) << "\n";
}

inline std::string algebra_verdict(const LieAlgebra& g) {
    std::string v = "valid, ";
    v += is_solvable(g) ? "solvable" : "not solvable";
    if (is_nilpotent(g)) v += ", nilpotent";
    return v;
}

}  // namespace detail

// ------------------------------------------------------------ check

inline CommandResult cmd_check(const std::string& path, const std::string& kind_arg = "") {
    std::string kind = kind_arg.empty() ? detail::infer_kind(path) : kind_arg;
    std::string text, hash;
    try {
        text = io::read_file(path);
    } catch (const error& e) {
        return detail::input_error("check", e.what(), "");
    }
    hash = io::fnv1a64_hex(text);
    if (kind.empty())
        return detail::input_error(
            "check", "cannot infer the input kind from \"" + path +
                         "\"; pass --kind lie|pair|realization",
            hash);
    if (kind != "lie" && kind != "pair" && kind != "realization")
        return detail::input_error("check", "unknown input kind: " + kind, hash);

    CommandResult r;
    r.machine_report = io::new_document(hash);
    r.machine_report["command"] = "check";
    r.machine_report["kind"] = kind;
    std::ostringstream human;
    human << "check " << kind << ": " << path << "\n";

    try {
        io::json doc = io::parse_json_text(text, path);

        if (kind == "lie") {
            LieAlgebra g = io::lie_from_json(doc);
            auto val = g.validate();
            if (!val.ok) return detail::check_failure("check", "invalid algebra: " + val.reason, hash);
            std::string verdict = detail::algebra_verdict(g);
            r.machine_report["valid"] = true;
            r.machine_report["verdict"] = verdict;
            detail::append_algebra_facts(g, r.machine_report, human);
            human << verdict << "\n";
        } else if (kind == "pair") {
            io::PairDocument pd = io::pair_from_json(doc);
            PairCheck pc = validate_pair(pd.pair);
            if (!pc.ok) return detail::check_failure("check", "invalid pair: " + pc.reason, hash);
            std::string verdict = "valid, ";
            verdict += pc.transvective ? "transvective" : "not transvective";
            verdict += is_solvable(pd.pair.algebra()) ? ", solvable" : ", not solvable";
            r.machine_report["valid"] = true;
            r.machine_report["transvective"] = pc.transvective;
            bool symplectic = false;
            if (pd.omega) {
                PairCheck sc = validate_symplectic(io::symplectic_from(pd));
                if (!sc.ok)
                    return detail::check_failure("check", "invalid symplectic form: " + sc.reason,
                                                 hash);
                symplectic = true;
            }
            r.machine_report["symplectic_form"] = pd.omega ? (symplectic ? "valid" : "invalid")
                                                           : "absent";
            if (pd.grading) {
                GradingCheck gc = verify_pair_grading(pd.pair, *pd.grading);
                if (!gc.ok)
                    return detail::check_failure("check", "invalid grading: " + gc.reason, hash);
                r.machine_report["grading"] = "valid";
            }
            r.machine_report["verdict"] = verdict;
            detail::append_algebra_facts(pd.pair.algebra(), r.machine_report, human);
            human << "k dim: " << pd.pair.k().dim() << "\n";
            human << "p dim: " << pd.pair.p().dim() << "\n";
            human << "transvective: " << detail::yes_no(pc.transvective) << "\n";
            human << "symplectic form: " << r.machine_report["symplectic_form"].get<std::string>()
                  << "\n";
            if (pd.grading) human << "grading: valid\n";
            human << verdict << "\n";
        } else {  // realization
            ExtrinsicRealization real = io::realization_from_json(doc);
            PairCheck pc = validate_pair(real.pair());
            if (!pc.ok) return detail::check_failure("check", "invalid pair: " + pc.reason, hash);
            RealizationCheck rc = validate_realization(real);
            static const char* items[] = {"s1", "s2", "s3", "a", "b", "c", "d", "e"};
            io::json jitems;
            std::size_t fail_at = sizeof(items) / sizeof(items[0]);
            if (!rc.ok)
                for (std::size_t i = 0; i < fail_at; ++i)
                    if (rc.check == items[i]) {
                        fail_at = i;
                        break;
                    }
            for (std::size_t i = 0; i < sizeof(items) / sizeof(items[0]); ++i) {
                std::string status = i < fail_at ? "pass" : (i == fail_at ? "fail" : "not reached");
                jitems[items[i]] = status;
                human << "item " << items[i] << ": " << status << "\n";
            }
            r.machine_report["items"] = std::move(jitems);
            std::string verdict =
                rc.ok ? "valid realization" : "invalid realization: " + rc.check + ": " + rc.reason;
            r.machine_report["valid"] = rc.ok;
            r.machine_report["verdict"] = verdict;
            human << verdict << "\n";
            if (!rc.ok) {
                r.exit_code = 1;
                r.machine_report["reason"] = rc.check + ": " + rc.reason;
            }
        }
    } catch (const error& e) {
        return detail::input_error("check", e.what(), hash);
    }
    r.human_report = human.str();
    return r;
}

// ------------------------------------------------------------ reduce

inline CommandResult cmd_reduce(const std::string& path) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const error& e) {
        return detail::input_error("reduce", e.what(), "");
    }
    std::string hash = io::fnv1a64_hex(text);

    std::optional<io::PairDocument> pd;
    try {
        pd = io::pair_from_json(io::parse_json_text(text, path));
    } catch (const error& e) {
        return detail::input_error("reduce", e.what(), hash);
    }
    if (!pd->omega)
        return detail::input_error("reduce", "pair file lacks the symplectic form entries (\"omega\")",
                                   hash);

    SymplecticPair sp = io::symplectic_from(*pd);
    PairCheck pc = validate_symplectic(sp);
    if (!pc.ok) return detail::check_failure("reduce", "invalid symplectic pair: " + pc.reason, hash);
    if (is_solvable(sp.pair().algebra()))
        return detail::check_failure(
            "reduce", "the transvection algebra is solvable; nothing to reduce", hash);
    if (!pd->levi || pd->torus.empty())
        return detail::input_error(
            "reduce", "reduction requires \"levi\" and \"torus\" index lists", hash);

    std::optional<ExtrinsicRealization> realization;
    if (pd->realization_ref) {
        try {
            std::filesystem::path rp(*pd->realization_ref);
            if (rp.is_relative()) rp = std::filesystem::path(path).parent_path() / rp;
            realization =
                io::realization_from_json(io::parse_json_text(io::read_file(rp.string()), rp.string()));
        } catch (const error& e) {
            return detail::input_error("reduce", e.what(), hash);
        }
    }

    std::optional<ReductionResult> rr;
    try {
        rr = reduce(sp, *pd->levi, pd->torus, realization);
    } catch (const error& e) {
        return detail::check_failure("reduce", e.what(), hash);
    }

    CommandResult r;
    io::json out = io::new_document(hash);
    out["command"] = "reduce";
    io::json reduced = io::reduction_to_json(*rr);
    for (auto& [k, v] : reduced.items()) out[k] = v;
    r.machine_report = std::move(out);

    std::ostringstream human;
    human << "reduce: " << path << "\n";
    human << "reduced dim: " << rr->subalgebra.dim() << "\n";
    human << "reduced k dim: " << rr->pair.pair().k().dim() << "\n";
    human << "reduced p dim: " << rr->pair.pair().p().dim() << "\n";
    std::ostringstream degs;
    for (std::size_t i = 0; i < rr->degrees.size(); ++i) degs << (i ? " " : "") << rr->degrees[i];
    human << "grading: " << degs.str() << "\n";
    human << "weight: ";
    for (std::size_t i = 0; i < rr->lambda0.size(); ++i)
        human << (i ? " " : "") << rr->lambda0[i].str();
    human << "\n";
    human << (rr->restricted ? "realization restricted alongside\n" : "");
    human << "reduction complete\n";
    r.human_report = human.str();
    return r;
}

// ------------------------------------------------------------ obstruct

namespace detail {

inline void append_outcome(const PipelineOutcome& oc, io::json& machine,
                           std::ostringstream& human) {
    machine["verdict"] = oc.verdict;
    machine["derived_series_dims"] = dims_json(oc.derived_series_dims);
    if (oc.reduction) {
        io::json red;
        red["dim"] = oc.reduction->subalgebra.dim();
        red["grading"] = oc.reduction->degrees;
        machine["reduction"] = std::move(red);
        human << "reduced dim: " << oc.reduction->subalgebra.dim() << "\n";
    }
    if (oc.invariant) {
        io::json inv;
        inv["module_type"] = oc.invariant->module_type;
        inv["normalization"] = oc.invariant->normalization.str();
        machine["invariant"] = std::move(inv);
        human << "invariant chain half-size: " << oc.invariant->module_type << "\n";
    }
    if (!oc.parity_steps.empty()) {
        io::json steps = io::json::array();
        for (const CertStep& s : oc.parity_steps) {
            io::json js;
            js["lemma"] = s.lemma;
            io::json values;
            for (const auto& [k, v] : s.values) values[k] = v;
            js["values"] = std::move(values);
            steps.push_back(std::move(js));
        }
        machine["parity_steps"] = std::move(steps);
        human << "parity obstruction recorded (" << oc.parity_steps.size() << " steps)\n";
    }
    io::json certs = io::json::array();
    for (const ObstructionCertificate& c : oc.certificates)
        certs.push_back(io::certificate_to_json(c));
    machine["certificates"] = std::move(certs);
    machine["discrepancies"] = oc.discrepancies;
    for (const ObstructionCertificate& c : oc.certificates) {
        human << "certificate mode=" << c.mode << " n=" << c.n << ":\n";
        for (const CaseResult& cs : c.cases) {
            human << "  case S={";
            for (std::size_t i = 0; i < cs.S.size(); ++i) human << (i ? "," : "") << cs.S[i];
            human << "}: " << cs.verdict;
            for (const auto& [k, v] : cs.witness) human << " " << k << "=" << v;
            human << "\n";
        }
    }
    for (const std::string& d : oc.discrepancies) human << "discrepancy: " << d << "\n";
    human << "verdict: " << oc.verdict << "\n";
    if (oc.verdict == "feasible") {
        machine["alert"] =
            "feasible outcome contradicts the expected obstruction; investigate";
        human << "ALERT: feasible outcome contradicts the expected obstruction; investigate\n";
    }
}

inline int verdict_exit_code(const std::string& verdict) {
    if (verdict == "no extrinsic symplectic realization exists") return 2;
    if (verdict == "solvable — theorem silent") return 0;
    return 1;  // "feasible": the expected obstruction did not materialize
}

}  // namespace detail

/// Replay the fixed obstruction chain for chain half-size n, without any
/// input file: emits the oracle certificate and the independent replay,
/// with their disagreements listed.
inline CommandResult cmd_obstruct_n(int n) {
    std::string hash = io::fnv1a64_hex("--n " + std::to_string(n));
    if (n != 1 && n != 2)
        return detail::input_error("obstruct", "chain half-size must be one or two", hash);

    ObstructionCertificate oracle = oracle_certificate(n);
    ObstructionCertificate replay = replay_certificate(n);
    bool infeasible = true;
    for (const CaseResult& c : oracle.cases)
        if (c.verdict != "infeasible") infeasible = false;

    CommandResult r;
    r.exit_code = infeasible ? 2 : 1;
    r.machine_report = io::new_document(hash);
    r.machine_report["command"] = "obstruct";
    r.machine_report["n"] = n;
    r.machine_report["verdict"] = infeasible ? "infeasible" : "feasible";
    io::json certs = io::json::array();
    certs.push_back(io::certificate_to_json(oracle));
    certs.push_back(io::certificate_to_json(replay));
    r.machine_report["certificates"] = std::move(certs);
    r.machine_report["discrepancies"] = replay.discrepancies;

    std::ostringstream human;
    human << "obstruct: chain half-size " << n << "\n";
    for (const ObstructionCertificate* c : {&oracle, &replay}) {
        human << "certificate mode=" << c->mode << " n=" << c->n << ":\n";
        for (const CaseResult& cs : c->cases) {
            human << "  case S={";
            for (std::size_t i = 0; i < cs.S.size(); ++i) human << (i ? "," : "") << cs.S[i];
            human << "}: " << cs.verdict;
            for (const auto& [k, v] : cs.witness) human << " " << k << "=" << v;
            human << "\n";
        }
    }
    for (const std::string& d : replay.discrepancies) human << "discrepancy: " << d << "\n";
    human << "verdict: " << (infeasible ? "infeasible" : "feasible") << "\n";
    if (!infeasible) {
        r.machine_report["alert"] =
            "feasible outcome contradicts the expected obstruction; investigate";
        human << "ALERT: feasible outcome contradicts the expected obstruction; investigate\n";
    }
    r.human_report = human.str();
    return r;
}

/// Full pipeline on a pair file: validate, reduce if needed, and run the
/// obstruction chain; non-existence yields exit code 2 with certificates.
inline CommandResult cmd_obstruct(const std::string& path) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const error& e) {
        return detail::input_error("obstruct", e.what(), "");
    }
    std::string hash = io::fnv1a64_hex(text);

    std::optional<io::PairDocument> pd;
    try {
        pd = io::pair_from_json(io::parse_json_text(text, path));
    } catch (const error& e) {
        return detail::input_error("obstruct", e.what(), hash);
    }
    if (!pd->omega)
        return detail::input_error("obstruct",
                                   "pair file lacks the symplectic form entries (\"omega\")", hash);
    SymplecticPair sp = io::symplectic_from(*pd);
    const LieAlgebra& g = sp.pair().algebra();

    std::optional<Subspace> levi = pd->levi;
    std::vector<Vec> torus = pd->torus;
    if (!levi && !is_solvable(g)) {
        if (radical(g).dim() == 0) {
            // Semisimple input: the algebra is its own semisimple complement,
            // and the intersection with the symmetric part supplies a torus.
            levi = Subspace::full(g.dim());
            if (torus.empty()) {
                Subspace even = sp.pair().k();
                for (std::size_t j = 0; j < even.dim(); ++j)
                    torus.push_back(even.basis_vector(j));
            }
        } else {
            return detail::input_error(
                "obstruct", "non-solvable input requires \"levi\" and \"torus\" index lists", hash);
        }
    }

    std::optional<ExtrinsicRealization> realization;
    if (pd->realization_ref) {
        try {
            std::filesystem::path rp(*pd->realization_ref);
            if (rp.is_relative()) rp = std::filesystem::path(path).parent_path() / rp;
            realization =
                io::realization_from_json(io::parse_json_text(io::read_file(rp.string()), rp.string()));
        } catch (const error& e) {
            return detail::input_error("obstruct", e.what(), hash);
        }
    }

    PipelineOutcome oc;
    try {
        oc = prove_no_realization(sp, levi, torus, realization);
    } catch (const error& e) {
        return detail::check_failure("obstruct", e.what(), hash);
    }

    CommandResult r;
    r.exit_code = detail::verdict_exit_code(oc.verdict);
    r.machine_report = io::new_document(hash);
    r.machine_report["command"] = "obstruct";
    std::ostringstream human;
    human << "obstruct: " << path << "\n";
    detail::append_outcome(oc, r.machine_report, human);
    r.human_report = human.str();
    return r;
}

// ------------------------------------------------------------ runner

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for symplectic symmetric pairs"};
    app.require_subcommand(1);

    std::string check_path, check_kind, check_format = "text";
    CLI::App* check = app.add_subcommand("check", "validate an input file");
    check->add_option("file", check_path, "input file")->required();
    check->add_option("--kind", check_kind, "input kind: lie, pair, or realization");
    check->add_option("--format", check_format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string reduce_path, reduce_out, reduce_format = "text";
    CLI::App* reduce = app.add_subcommand("reduce", "run the rank-one reduction");
    reduce->add_option("file", reduce_path, "pair file with levi and torus entries")->required();
    reduce->add_option("--out", reduce_out, "where to write the reduced algebra");
    reduce->add_option("--format", reduce_format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string obstruct_path, obstruct_out, obstruct_format = "text";
    int obstruct_n = 0;
    CLI::App* obstruct = app.add_subcommand("obstruct", "run the non-existence pipeline");
    obstruct->add_option("file", obstruct_path, "pair file");
    obstruct->add_option("--n", obstruct_n, "chain half-size to replay without an input file")
        ->check(CLI::IsMember({1, 2}));
    obstruct->add_option("--out", obstruct_out, "where to write the certificate document");
    obstruct->add_option("--format", obstruct_format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 3;
    }

    CommandResult result;
    std::string format = "text";
    std::string out_path;
    if (check->parsed()) {
        result = cmd_check(check_path, check_kind);
        format = check_format;
    } else if (reduce->parsed()) {
        result = cmd_reduce(reduce_path);
        format = reduce_format;
        out_path = reduce_out;
        if (out_path.empty() && result.exit_code == 0) {
            // Default: drop the result next to the input.
            std::string stem = reduce_path;
            const std::string suffix = ".json";
            if (stem.size() >= suffix.size() &&
                stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
                stem.resize(stem.size() - suffix.size());
            out_path = stem + ".reduced.json";
        }
    } else {
        format = obstruct_format;
        out_path = obstruct_out;
        if (obstruct_path.empty() && obstruct_n == 0) {
            err << "argument error: obstruct needs a pair file or --n\n";
            return 3;
        }
        if (!obstruct_path.empty() && obstruct_n != 0) {
            err << "argument error: pass either a pair file or --n, not both\n";
            return 3;
        }
        result = obstruct_path.empty() ? cmd_obstruct_n(obstruct_n) : cmd_obstruct(obstruct_path);
    }

    if (format == "json")
        out << result.machine_report.dump(2) << "\n";
    else
        out << result.human_report;

    if (!out_path.empty() && result.exit_code != 3) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "cannot write output file: " << out_path << "\n";
            return 3;
        }
        f << result.machine_report.dump(2) << "\n";
    }
    return result.exit_code;
}

}  // namespace liesym::cli
