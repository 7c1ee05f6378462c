#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "badring.hpp"
#include "clearing.hpp"
#include "elops.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "polymatrix.hpp"
#include "rational.hpp"
#include "spectral.hpp"
#include "sse.hpp"

namespace ssekit {

using json = nlohmann::json;

inline constexpr const char* kRingQ = "Q";
inline constexpr const char* kRingLaurent = "Q[t2,t3,z,z-1]";

// ---- scalars ----

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) fail(errc::parse, "rational must be a \"p/q\" string");
    return Rational::from_string(j.get<std::string>());
}

inline json to_json(const Laurent& e) {
    json arr = json::array();
    for (const auto& [exps, c] : e.terms())
        arr.push_back({{"t", exps.first}, {"z", exps.second}, {"c", c.str()}});
    return arr;
}

inline Laurent laurent_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse, "Laurent element must be an array of term records");
    Laurent e;
    for (const auto& t : j) {
        if (!t.contains("t") || !t.contains("z") || !t.contains("c"))
            fail(errc::parse, "Laurent term needs fields t, z, c");
        e += Laurent::term(rational_from_json(t.at("c")), t.at("t").get<int>(),
                           t.at("z").get<int>());
    }
    return e;
}

// ---- matrices ----

inline json to_json(const Matrix<Rational>& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"ring", kRingQ}, {"entries", entries}};
}

inline json to_json(const Matrix<Laurent>& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"ring", kRingLaurent}, {"entries", entries}};
}

namespace detail {

inline void check_matrix_fields(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        fail(errc::parse, "matrix needs rows, cols, entries");
}

}  // namespace detail

inline Matrix<Rational> matrix_q_from_json(const json& j) {
    detail::check_matrix_fields(j);
    if (j.value("ring", kRingQ) != std::string(kRingQ))
        fail(errc::parse, "expected a matrix over ring Q");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        fail(errc::parse, "matrix entries length mismatch");
    std::vector<Rational> e;
    e.reserve(entries.size());
    for (const auto& x : entries) e.push_back(rational_from_json(x));
    return Matrix<Rational>(rows, cols, std::move(e));
}

inline Matrix<Laurent> matrix_laurent_from_json(const json& j) {
    detail::check_matrix_fields(j);
    if (j.value("ring", "") != std::string(kRingLaurent))
        fail(errc::parse, "expected a matrix over the Laurent ring");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        fail(errc::parse, "matrix entries length mismatch");
    std::vector<Laurent> e;
    e.reserve(entries.size());
    for (const auto& x : entries) e.push_back(laurent_from_json(x));
    return Matrix<Laurent>(rows, cols, std::move(e));
}

using MatrixVariant = std::variant<Matrix<Rational>, Matrix<Laurent>>;

inline MatrixVariant matrix_from_json(const json& j) {
    detail::check_matrix_fields(j);
    const std::string ring = j.value("ring", kRingQ);
    if (ring == kRingQ) return matrix_q_from_json(j);
    if (ring == kRingLaurent) return matrix_laurent_from_json(j);
    fail(errc::parse, "unknown ring tag '" + ring + "'");
}

template <class R>
json to_json(const PolyMatrix<R>& m) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < m.coeff_count(); ++i) coeffs.push_back(to_json(m.coeff(i)));
    return {{"size", m.size()}, {"coeffs", coeffs}};
}

inline PolyMatrix<Rational> polymatrix_q_from_json(const json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("coeffs"))
        fail(errc::parse, "polynomial matrix needs size and coeffs");
    const auto size = j.at("size").get<std::size_t>();
    std::vector<Matrix<Rational>> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(matrix_q_from_json(c));
    return PolyMatrix<Rational>::from_coeffs(size, std::move(coeffs));
}

inline PolyMatrix<Laurent> polymatrix_laurent_from_json(const json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("coeffs"))
        fail(errc::parse, "polynomial matrix needs size and coeffs");
    const auto size = j.at("size").get<std::size_t>();
    std::vector<Matrix<Laurent>> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(matrix_laurent_from_json(c));
    return PolyMatrix<Laurent>::from_coeffs(size, std::move(coeffs));
}

// ---- polynomials ----

inline json to_json(const QPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline QPoly qpoly_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse, "polynomial must be a coefficient array");
    std::vector<Rational> c;
    c.reserve(j.size());
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return QPoly::from_coeffs(std::move(c));
}

// ---- witnesses ----

template <class R>
json to_json(const EsseWitness<R>& w) {
    return {{"U", to_json(w.U)}, {"V", to_json(w.V)}};
}

template <class R>
json to_json(const SseChain<R>& c) {
    json endpoints = json::array(), steps = json::array();
    for (const auto& m : c.endpoints) endpoints.push_back(to_json(m));
    for (const auto& s : c.steps) steps.push_back(to_json(s));
    return {{"endpoints", endpoints}, {"steps", steps}};
}

template <class R>
json to_json(const SeWitness<R>& w) {
    return {{"U", to_json(w.U)}, {"V", to_json(w.V)}, {"lag", w.lag}};
}

inline EsseWitness<Rational> esse_witness_q_from_json(const json& j) {
    if (!j.contains("U") || !j.contains("V")) fail(errc::parse, "witness needs U and V");
    return {matrix_q_from_json(j.at("U")), matrix_q_from_json(j.at("V"))};
}

inline EsseWitness<Laurent> esse_witness_laurent_from_json(const json& j) {
    if (!j.contains("U") || !j.contains("V")) fail(errc::parse, "witness needs U and V");
    return {matrix_laurent_from_json(j.at("U")), matrix_laurent_from_json(j.at("V"))};
}

inline SseChain<Rational> sse_chain_q_from_json(const json& j) {
    if (!j.contains("endpoints") || !j.contains("steps"))
        fail(errc::parse, "chain needs endpoints and steps");
    SseChain<Rational> c;
    for (const auto& m : j.at("endpoints")) c.endpoints.push_back(matrix_q_from_json(m));
    for (const auto& s : j.at("steps")) c.steps.push_back(esse_witness_q_from_json(s));
    return c;
}

inline SseChain<Laurent> sse_chain_laurent_from_json(const json& j) {
    if (!j.contains("endpoints") || !j.contains("steps"))
        fail(errc::parse, "chain needs endpoints and steps");
    SseChain<Laurent> c;
    for (const auto& m : j.at("endpoints")) c.endpoints.push_back(matrix_laurent_from_json(m));
    for (const auto& s : j.at("steps")) c.steps.push_back(esse_witness_laurent_from_json(s));
    return c;
}

// ---- elementary-operation logs ----

inline json to_json(const ElOp& op) {
    switch (op.kind) {
        case ElOpKind::row_add:
            return {{"kind", "row_add"}, {"i", op.i}, {"j", op.j}, {"p", to_json(op.p)}};
        case ElOpKind::col_add:
            return {{"kind", "col_add"}, {"i", op.i}, {"j", op.j}, {"p", to_json(op.p)}};
        case ElOpKind::stabilize:
            return {{"kind", "stabilize"}};
        case ElOpKind::destabilize:
            return {{"kind", "destabilize"}};
    }
    fail(errc::internal, "unknown op kind");
}

inline ElOp elop_from_json(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "stabilize") return ElOp::stabilize();
    if (kind == "destabilize") return ElOp::destabilize();
    if (kind == "row_add" || kind == "col_add") {
        if (!j.contains("i") || !j.contains("j") || !j.contains("p"))
            fail(errc::parse, "add op needs i, j, p");
        ElOp op = kind == "row_add"
                      ? ElOp::row_add(j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(),
                                      qpoly_from_json(j.at("p")))
                      : ElOp::col_add(j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(),
                                      qpoly_from_json(j.at("p")));
        return op;
    }
    fail(errc::parse, "unknown op kind '" + kind + "'");
}

inline json to_json(const ElOpLog& log) {
    json ops = json::array();
    for (const auto& op : log.ops) ops.push_back(to_json(op));
    return {{"initial", to_json(log.initial)}, {"ops", ops}, {"final", to_json(log.final)}};
}

inline ElOpLog oplog_from_json(const json& j) {
    if (!j.contains("initial") || !j.contains("ops") || !j.contains("final"))
        fail(errc::parse, "op log needs initial, ops, final");
    ElOpLog log;
    log.initial = polymatrix_q_from_json(j.at("initial"));
    for (const auto& op : j.at("ops")) log.ops.push_back(elop_from_json(op));
    log.final = polymatrix_q_from_json(j.at("final"));
    return log;
}

// ---- spectra and reports ----

inline json to_json(const SpectrumDescriptor& d) {
    json arr = json::array();
    for (const auto& c : d.coeffs) arr.push_back(c.str());
    return {{"coeffs", arr}};
}

inline SpectrumDescriptor spectrum_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs"))
        fail(errc::parse, "spectrum descriptor needs a coeffs array");
    SpectrumDescriptor d;
    for (const auto& c : j.at("coeffs")) d.coeffs.push_back(rational_from_json(c));
    return d;
}

inline json to_json(const PrimitivityCert& c) {
    json j = {{"primitive", c.primitive}, {"strongly_connected", c.strongly_connected}};
    j["witness_power"] = c.witness_power ? json(*c.witness_power) : json(nullptr);
    j["period"] = c.period ? json(*c.period) : json(nullptr);
    if (!c.failing_component.empty()) j["failing_component"] = c.failing_component;
    return j;
}

inline json to_json(const SpectralReport& r) {
    json nt = json::array(), pt = json::array();
    for (const auto& x : r.net_traces) nt.push_back(x.str());
    for (const auto& x : r.power_traces) pt.push_back(x.str());
    return {{"mode", r.mode == RingMode::integer_ring ? "integer-ring" : "dense-ring"},
            {"n_max", r.n_max},
            {"k_max", r.k_max},
            {"perron_ok", verdict_name(r.perron)},
            {"coeffs_in_ring_ok", r.coeffs_in_ring_ok},
            {"trace_conditions_ok", r.trace_conditions_ok},
            {"range_limited", r.range_limited},
            {"net_traces", nt},
            {"power_traces", pt},
            {"all_ok", r.all_ok()}};
}

inline json to_json(const ClearingStepReport& r) {
    return {{"k", r.k},
            {"input", to_json(r.input)},
            {"output", to_json(r.output)},
            {"log", to_json(r.log)},
            {"degree_in", r.degree_in},
            {"degree_out", r.degree_out},
            {"degree_limit", r.degree_limit},
            {"norm_in", r.norm_in.str()},
            {"norm_out", r.norm_out.str()},
            {"norm_limit", r.norm_limit.str()},
            {"degree_bound_ok", r.degree_bound_ok},
            {"norm_bound_ok", r.norm_bound_ok}};
}

inline json to_json(const ClearedResult& r) {
    json steps = json::array();
    for (const auto& s : r.steps) steps.push_back(to_json(s));
    return {{"J", r.J},       {"K", r.K},
            {"n", r.n},       {"M", to_json(r.M)},
            {"B_K", to_json(r.B_K)}, {"steps", steps}};
}

inline json to_json(const ElementaryFactor& f) {
    return {{"i", f.i}, {"j", f.j}, {"c", f.c.str()}};
}

inline json to_json(const ShrinkResult& r) {
    json factors = json::array();
    for (const auto& f : r.factors) factors.push_back(to_json(f));
    return {{"V", to_json(r.V)}, {"conjugated", to_json(r.conjugated)}, {"factors", factors}};
}

inline json to_json(const Prop35Result& r) {
    return {{"delta", r.delta.str()},
            {"shrink", to_json(r.shrink)},
            {"cleared", to_json(r.cleared)},
            {"m_sup_norm", r.m_sup_norm.str()}};
}

inline json to_json(const AssemblyResult& r) {
    return {{"G", to_json(r.G)},
            {"upper_form", to_json(r.upper_form)},
            {"identities_ok", r.identities_ok},
            {"eps", r.eps.str()},
            {"c_cert", to_json(r.c_cert)},
            {"g_cert", to_json(r.g_cert)}};
}

inline json to_json(const BadRingFixture& f) {
    return {{"M", to_json(f.M)}, {"N", to_json(f.N)}, {"Nprime", to_json(f.Nprime)}};
}

// ---- digest ----

/// FNV-1a over the canonical (sorted-key) dump; used to fingerprint inputs in
/// run reports.
inline std::string content_digest(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace ssekit
