#pragma once

// File formats and report documents.
//
// All inputs and outputs are JSON.  Scalars travel as strings in the exact
// text grammar of GaussianRational::parse ("3/4", "-1/2+2/3i", "1i"), so
// nothing is lost to floating point.  Every emitted document is built with
// an order-preserving JSON type and fixed key order: serializing the same
// content twice yields byte-identical text.
//
// Formats:
//   algebra   {"dim": n, "labels": [...], "brackets": [[i, j, k, "c"], ...]}
//             listing only i < j entries; the antisymmetric completion is
//             implicit and unlisted triples are zero.  Indices are 0-based.
//   pair      algebra fields plus "k": [indices], "p": [indices], optional
//             "omega": [[i, j, "c"], ...] with i, j positions into the "p"
//             array, optional "grading": [d_0, ..., d_{n-1}].  Reduction
//             inputs add "levi": [indices], "torus": [indices] and an
//             optional "realization": <path> reference.
//   realization {"pair": <pair>, "space": {"dim": d, "Omega": [[i,j,"c"],...],
//             "V1": [indices], "V2": [indices]}, "Lambda": {label: [[i,j,"c"],
//             ...]}, "v": [[i,j,"c"],...]}
//   certificate {"version": 1, "mode": "oracle"|"replay", "n": 1|2,
//             "cases": [{"S": [...], "steps": [{"lemma": ..., "values":
//             {...}}], "verdict": ..., "witness": {...}}],
//             "discrepancies": [...]}

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liesym/lie.hpp"
#include "liesym/obstruction.hpp"
#include "liesym/pair.hpp"
#include "liesym/realization.hpp"
#include "liesym/reduction.hpp"
#include "liesym/scalar.hpp"
#include "liesym/version.hpp"

namespace liesym::io {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------ plumbing

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// FNV-1a 64-bit content hash, rendered as 16 hex digits.
inline std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

/// Parse JSON text; syntax errors are rethrown as structured errors keeping
/// the line/column position reported by the parser.
inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const nlohmann::detail::exception& e) {
        throw error(where + ": " + e.what());
    }
}

inline const json& field(const json& doc, const char* key, const std::string& where) {
    if (!doc.is_object()) throw error(where + ": expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw error(where + ": missing field \"" + key + "\"");
    return *it;
}

inline GaussianRational scalar_from(const json& j, const std::string& where) {
    if (!j.is_string()) throw error(where + ": scalars must be strings");
    try {
        return GaussianRational::parse(j.get<std::string>());
    } catch (const error& e) {
        throw error(where + ": " + e.what());
    }
}

inline std::size_t index_from(const json& j, std::size_t bound, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw error(where + ": indices must be non-negative integers");
    auto v = static_cast<std::size_t>(j.get<long long>());
    if (v >= bound) throw error(where + ": index " + std::to_string(v) + " out of range");
    return v;
}

inline std::vector<std::size_t> index_list_from(const json& j, std::size_t bound,
                                                const std::string& where) {
    if (!j.is_array()) throw error(where + ": expected an array of indices");
    std::vector<std::size_t> out;
    std::set<std::size_t> seen;
    for (const json& e : j) {
        std::size_t v = index_from(e, bound, where);
        if (!seen.insert(v).second)
            throw error(where + ": duplicate index " + std::to_string(v));
        out.push_back(v);
    }
    return out;
}

inline json scalar_vec_to_json(const Vec& v) {
    json out = json::array();
    for (const GaussianRational& c : v) out.push_back(c.str());
    return out;
}

inline Vec scalar_vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw error(where + ": expected an array of scalars");
    Vec out;
    for (const json& e : j) out.push_back(scalar_from(e, where));
    return out;
}

// ------------------------------------------------------------ algebras

inline LieAlgebra lie_from_json(const json& doc) {
    const json& jd = field(doc, "dim", "algebra");
    if (!jd.is_number_integer() || jd.get<long long>() <= 0)
        throw error("algebra: \"dim\" must be a positive integer");
    auto dim = static_cast<std::size_t>(jd.get<long long>());

    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const json& jl = doc["labels"];
        if (!jl.is_array()) throw error("algebra: \"labels\" must be an array");
        for (const json& e : jl) {
            if (!e.is_string()) throw error("algebra: labels must be strings");
            labels.push_back(e.get<std::string>());
        }
        if (labels.size() != dim)
            throw error("algebra: label count does not match \"dim\"");
    }
    LieAlgebra g(dim, std::move(labels));

    if (doc.contains("brackets")) {
        const json& jb = doc["brackets"];
        if (!jb.is_array()) throw error("algebra: \"brackets\" must be an array");
        for (const json& e : jb) {
            if (!e.is_array() || e.size() != 4)
                throw error("algebra: bracket entries must be [i, j, k, \"scalar\"]");
            std::size_t i = index_from(e[0], dim, "algebra brackets");
            std::size_t j = index_from(e[1], dim, "algebra brackets");
            std::size_t k = index_from(e[2], dim, "algebra brackets");
            if (i >= j)
                throw error("algebra: bracket entries must satisfy i < j (got " +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
            g.add_bracket_term(i, j, k, scalar_from(e[3], "algebra brackets"));
        }
    }
    return g;
}

inline json lie_to_json(const LieAlgebra& g) {
    json doc;
    doc["dim"] = g.dim();
    doc["labels"] = g.labels();
    json brackets = json::array();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            Vec b = g.bracket_basis(i, j);
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!b[k].is_zero()) brackets.push_back(json::array({i, j, k, b[k].str()}));
        }
    doc["brackets"] = std::move(brackets);
    return doc;
}

// ------------------------------------------------------------ pairs

/// A loaded pair file: the symmetric pair itself plus every optional layer
/// the file may carry (form, grading, reduction inputs).
struct PairDocument {
    SymmetricPair pair;
    std::vector<std::size_t> k_indices, p_indices;
    std::optional<BilinearForm> omega;  // on the canonical basis of p
    std::optional<std::vector<long>> grading;
    std::optional<Subspace> levi;
    std::vector<Vec> torus;
    std::optional<std::string> realization_ref;
};

namespace detail {

/// Antisymmetric gram from sparse entries; `i`, `j` index positions of the
/// listed basis and are mapped through `perm` into canonical positions.
inline Matrix antisymmetric_gram_from(const json& entries, std::size_t dim,
                                      const std::vector<std::size_t>& perm,
                                      const std::string& where) {
    if (!entries.is_array()) throw error(where + ": expected an array of entries");
    Matrix gram(dim, dim);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const json& e : entries) {
        if (!e.is_array() || e.size() != 3)
            throw error(where + ": entries must be [i, j, \"scalar\"]");
        std::size_t i = index_from(e[0], perm.size(), where);
        std::size_t j = index_from(e[1], perm.size(), where);
        GaussianRational c = scalar_from(e[2], where);
        std::size_t a = perm[i], b = perm[j];
        if (a == b) {
            if (!c.is_zero())
                throw error(where + ": antisymmetric form cannot have a diagonal entry");
            continue;
        }
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw error(where + ": duplicate entry for the same index pair");
        gram.at(a, b) = c;
        gram.at(b, a) = -c;
    }
    return gram;
}

inline Subspace span_of_indices(std::size_t ambient, const std::vector<std::size_t>& idx) {
    std::vector<Vec> gens;
    for (std::size_t i : idx) gens.push_back(unit_vec(ambient, i));
    return Subspace::span(ambient, gens);
}

}  // namespace detail

inline PairDocument pair_from_json(const json& doc) {
    LieAlgebra g = lie_from_json(doc);
    const std::size_t dim = g.dim();
    std::vector<std::size_t> ki = index_list_from(field(doc, "k", "pair"), dim, "pair k");
    std::vector<std::size_t> pi = index_list_from(field(doc, "p", "pair"), dim, "pair p");
    for (std::size_t i : pi)
        if (std::find(ki.begin(), ki.end(), i) != ki.end())
            throw error("pair: index " + std::to_string(i) + " listed in both k and p");

    // Canonical positions: the canonical basis of a span of unit vectors is
    // those unit vectors in ascending index order.
    std::vector<std::size_t> sorted = pi;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> perm(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i)
        perm[i] = static_cast<std::size_t>(
            std::find(sorted.begin(), sorted.end(), pi[i]) - sorted.begin());

    PairDocument out{
        SymmetricPair(std::move(g), detail::span_of_indices(dim, ki),
                      detail::span_of_indices(dim, pi)),
        std::move(ki),
        std::move(pi),
        {},
        {},
        {},
        {},
        {}};

    if (doc.contains("omega"))
        out.omega = BilinearForm(
            detail::antisymmetric_gram_from(doc["omega"], out.p_indices.size(), perm,
                                            "pair omega"),
            FormKind::antisymmetric);
    if (doc.contains("grading")) {
        const json& jg = doc["grading"];
        if (!jg.is_array() || jg.size() != dim)
            throw error("pair: \"grading\" must list one degree per basis vector");
        std::vector<long> degs;
        for (const json& e : jg) {
            if (!e.is_number_integer()) throw error("pair: degrees must be integers");
            degs.push_back(e.get<long>());
        }
        out.grading = std::move(degs);
    }
    if (doc.contains("levi"))
        out.levi = detail::span_of_indices(
            dim, index_list_from(doc["levi"], dim, "pair levi"));
    if (doc.contains("torus"))
        for (std::size_t i : index_list_from(doc["torus"], dim, "pair torus"))
            out.torus.push_back(unit_vec(dim, i));
    if (doc.contains("realization")) {
        if (!doc["realization"].is_string())
            throw error("pair: \"realization\" must be a file path string");
        out.realization_ref = doc["realization"].get<std::string>();
    }
    return out;
}

inline SymplecticPair symplectic_from(const PairDocument& pd) {
    if (!pd.omega)
        throw error("pair file lacks the symplectic form entries (\"omega\")");
    return SymplecticPair(pd.pair, *pd.omega);
}

/// Serialize a pair whose k and p are spans of coordinate lines (as produced
/// by the reduction) back into the pair file format.
inline json pair_to_json(const SymplecticPair& sp) {
    const SymmetricPair& pr = sp.pair();
    json doc = lie_to_json(pr.algebra());
    auto unit_indices = [&](const Subspace& s) {
        json idx = json::array();
        for (std::size_t j = 0; j < s.dim(); ++j) {
            Vec v = s.basis_vector(j);
            std::size_t hits = 0, at = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) {
                    ++hits;
                    at = i;
                }
            if (hits != 1 || v[at] != GaussianRational(1))
                throw error("pair halves are not spans of coordinate lines");
            idx.push_back(at);
        }
        return idx;
    };
    doc["k"] = unit_indices(pr.k());
    doc["p"] = unit_indices(pr.p());
    json omega = json::array();
    const Matrix& gram = sp.omega().gram();
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i + 1; j < gram.cols(); ++j)
            if (!gram.at(i, j).is_zero())
                omega.push_back(json::array({i, j, gram.at(i, j).str()}));
    doc["omega"] = std::move(omega);
    return doc;
}

// ------------------------------------------------------------ realizations

inline ExtrinsicRealization realization_from_json(const json& doc) {
    PairDocument pd = pair_from_json(field(doc, "pair", "realization"));
    const LieAlgebra& g = pd.pair.algebra();
    const std::size_t n = g.dim();

    const json& js = field(doc, "space", "realization");
    const json& jdim = field(js, "dim", "realization space");
    if (!jdim.is_number_integer() || jdim.get<long long>() <= 0)
        throw error("realization space: \"dim\" must be a positive integer");
    auto d = static_cast<std::size_t>(jdim.get<long long>());

    std::vector<std::size_t> ident(d);
    for (std::size_t i = 0; i < d; ++i) ident[i] = i;
    Matrix omega = detail::antisymmetric_gram_from(field(js, "Omega", "realization space"),
                                                   d, ident, "realization Omega");
    Subspace v1 = detail::span_of_indices(
        d, index_list_from(field(js, "V1", "realization space"), d, "realization V1"));
    Subspace v2 = detail::span_of_indices(
        d, index_list_from(field(js, "V2", "realization space"), d, "realization V2"));
    SplitSymplecticSpace space(BilinearForm(std::move(omega), FormKind::antisymmetric),
                               std::move(v1), std::move(v2));

    auto matrix_from = [&](const json& entries, std::size_t rows, std::size_t cols,
                           const std::string& where) {
        if (!entries.is_array()) throw error(where + ": expected an array of entries");
        Matrix m(rows, cols);
        for (const json& e : entries) {
            if (!e.is_array() || e.size() != 3)
                throw error(where + ": entries must be [row, col, \"scalar\"]");
            std::size_t r = index_from(e[0], rows, where);
            std::size_t c = index_from(e[1], cols, where);
            m.at(r, c) = scalar_from(e[2], where);
        }
        return m;
    };

    const json& jl = field(doc, "Lambda", "realization");
    if (!jl.is_object()) throw error("realization: \"Lambda\" must map labels to entries");
    std::vector<Matrix> lambda(n, Matrix(d, d));
    for (const auto& [label, entries] : jl.items()) {
        auto it = std::find(g.labels().begin(), g.labels().end(), label);
        if (it == g.labels().end())
            throw error("realization Lambda: unknown basis label \"" + label + "\"");
        auto i = static_cast<std::size_t>(it - g.labels().begin());
        lambda[i] = matrix_from(entries, d, d, "realization Lambda[" + label + "]");
    }

    Matrix v = matrix_from(field(doc, "v", "realization"), d, n, "realization v");
    return ExtrinsicRealization(std::move(pd.pair), std::move(space), std::move(lambda),
                                std::move(v));
}

// ------------------------------------------------------------ certificates

inline json certificate_to_json(const ObstructionCertificate& cert) {
    json doc;
    doc["version"] = 1;
    doc["mode"] = cert.mode;
    doc["n"] = cert.n;
    json cases = json::array();
    for (const CaseResult& c : cert.cases) {
        json jc;
        jc["S"] = c.S;
        json steps = json::array();
        for (const CertStep& s : c.steps) {
            json js;
            js["lemma"] = s.lemma;
            json values;
            for (const auto& [k, v] : s.values) values[k] = v;
            js["values"] = std::move(values);
            steps.push_back(std::move(js));
        }
        jc["steps"] = std::move(steps);
        jc["verdict"] = c.verdict;
        json witness;
        for (const auto& [k, v] : c.witness) witness[k] = v;
        jc["witness"] = std::move(witness);
        cases.push_back(std::move(jc));
    }
    doc["cases"] = std::move(cases);
    doc["discrepancies"] = cert.discrepancies;
    return doc;
}

inline ObstructionCertificate certificate_from_json(const json& doc) {
    const json& jv = field(doc, "version", "certificate");
    if (!jv.is_number_integer() || jv.get<long long>() != 1)
        throw error("certificate: unsupported version");
    ObstructionCertificate cert;
    const json& jm = field(doc, "mode", "certificate");
    if (!jm.is_string()) throw error("certificate: \"mode\" must be a string");
    cert.mode = jm.get<std::string>();
    const json& jn = field(doc, "n", "certificate");
    if (!jn.is_number_integer()) throw error("certificate: \"n\" must be an integer");
    cert.n = jn.get<int>();
    const json& jc = field(doc, "cases", "certificate");
    if (!jc.is_array()) throw error("certificate: \"cases\" must be an array");
    auto string_map_from = [](const json& j, const std::string& where) {
        if (!j.is_object()) throw error(where + ": expected an object of strings");
        std::map<std::string, std::string> out;
        for (const auto& [k, v] : j.items()) {
            if (!v.is_string()) throw error(where + ": values must be strings");
            out[k] = v.get<std::string>();
        }
        return out;
    };
    for (const json& c : jc) {
        CaseResult cr;
        const json& js = field(c, "S", "certificate case");
        if (!js.is_array()) throw error("certificate case: \"S\" must be an array");
        for (const json& e : js) {
            if (!e.is_number_integer())
                throw error("certificate case: \"S\" must list integers");
            cr.S.push_back(e.get<int>());
        }
        const json& jsteps = field(c, "steps", "certificate case");
        if (!jsteps.is_array()) throw error("certificate case: \"steps\" must be an array");
        for (const json& s : jsteps) {
            CertStep step;
            const json& jl = field(s, "lemma", "certificate step");
            if (!jl.is_string()) throw error("certificate step: \"lemma\" must be a string");
            step.lemma = jl.get<std::string>();
            step.values = string_map_from(field(s, "values", "certificate step"),
                                          "certificate step values");
            cr.steps.push_back(std::move(step));
        }
        const json& jverdict = field(c, "verdict", "certificate case");
        if (!jverdict.is_string())
            throw error("certificate case: \"verdict\" must be a string");
        cr.verdict = jverdict.get<std::string>();
        cr.witness = string_map_from(field(c, "witness", "certificate case"),
                                     "certificate witness");
        cert.cases.push_back(std::move(cr));
    }
    const json& jd = field(doc, "discrepancies", "certificate");
    if (!jd.is_array()) throw error("certificate: \"discrepancies\" must be an array");
    for (const json& e : jd) {
        if (!e.is_string()) throw error("certificate: discrepancies must be strings");
        cert.discrepancies.push_back(e.get<std::string>());
    }
    return cert;
}

// ------------------------------------------------------------ reductions

/// Serialize a reduction result.  The emitted document is itself a valid
/// pair file for the reduced algebra (with its grading), extended with the
/// triple, the chosen weight, and the ambient embedding.
inline json reduction_to_json(const ReductionResult& rr) {
    json doc = pair_to_json(rr.pair);
    doc["grading"] = rr.degrees;
    json triple;
    triple["e0"] = scalar_vec_to_json(rr.triple.e0);
    triple["eplus"] = scalar_vec_to_json(rr.triple.eplus);
    triple["eminus"] = scalar_vec_to_json(rr.triple.eminus);
    doc["triple"] = std::move(triple);
    doc["lambda0"] = scalar_vec_to_json(rr.lambda0);
    json emb = json::array();
    for (std::size_t j = 0; j < rr.embedding.cols(); ++j)
        emb.push_back(scalar_vec_to_json(rr.embedding.col(j)));
    doc["embedding"] = std::move(emb);
    return doc;
}

// ------------------------------------------------------------ envelopes

/// Common document header: schema version, tool identity, input hash.
inline json new_document(const std::string& input_hash) {
    json doc;
    doc["version"] = 1;
    doc["tool"] = "liesym";
    doc["tool_version"] = kVersion;
    doc["input_hash"] = input_hash;
    return doc;
}

}  // namespace liesym::io
