#pragma once

// JSON forms of spaces, operators, states and results. Complex scalars are
// [re, im]; real-field values are written as plain numbers and either form is
// accepted on input. p is a number or "inf".

#include <json.hpp>
#include <string>
#include <vector>

#include "crawford/bpb.hpp"
#include "crawford/polytope.hpp"
#include "crawford/repair.hpp"

namespace crawford::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw InputError("json: " + what); }

inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

inline double number(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

inline json real_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace detail

inline Scalar scalar_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    detail::fail("scalar must be a number or [re, im]");
}

inline json scalar_to_json(Scalar z, Field f) {
    if (f == Field::real) return detail::real_number(z.real());
    return json::array({z.real(), z.imag()});
}

inline CVector coords_from_json(const json& j, int n, const char* what) {
    if (!j.is_array()) detail::fail(std::string(what) + " must be an array");
    if (n >= 0 && static_cast<int>(j.size()) != n) throw DimensionMismatch(what);
    CVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = scalar_from_json(j[i]);
    return v;
}

inline json coords_to_json(const CVector& v, Field f) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(scalar_to_json(v(i), f));
    return a;
}

inline SpaceDescriptor space_from_json(const json& j) {
    SpaceDescriptor s;
    const json& dim = detail::field(j, "dim");
    if (!dim.is_number_integer()) detail::fail("dim must be an integer");
    s.dim = dim.get<int>();
    const std::string f = j.value("field", std::string("real"));
    if (f == "real")
        s.field = Field::real;
    else if (f == "complex")
        s.field = Field::complex;
    else
        detail::fail("field must be \"real\" or \"complex\"");
    const json& nj = detail::field(j, "norm");
    const std::string kind = nj.value("kind", std::string("lp"));
    const json& p = detail::field(nj, "p");
    if (p.is_string() && p.get<std::string>() == "inf")
        s.norm.p = kInfinity;
    else
        s.norm.p = detail::number(p, "p");
    if (kind == "lp") {
        s.norm.kind = NormKind::lp;
    } else if (kind == "weighted_lp") {
        s.norm.kind = NormKind::weighted_lp;
        const json& w = detail::field(nj, "weights");
        if (!w.is_array()) detail::fail("weights must be an array");
        for (const auto& x : w) s.norm.weights.push_back(detail::number(x, "weight"));
    } else {
        detail::fail("norm kind must be \"lp\" or \"weighted_lp\"");
    }
    validate(s);
    return s;
}

inline json space_to_json(const SpaceDescriptor& s) {
    json n = {{"kind", s.norm.kind == NormKind::lp ? "lp" : "weighted_lp"}, {"p", detail::real_number(s.p())}};
    if (s.norm.kind == NormKind::weighted_lp) n["weights"] = s.norm.weights;
    return {{"dim", s.dim}, {"field", s.is_complex() ? "complex" : "real"}, {"norm", n}};
}

inline Operator operator_from_json(const json& j) {
    const SpaceDescriptor s = space_from_json(detail::field(j, "space"));
    const json& m = detail::field(j, "matrix");
    if (!m.is_array() || static_cast<int>(m.size()) != s.dim) throw DimensionMismatch("matrix rows vs dim");
    CMatrix a(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i) a.row(i) = coords_from_json(m[i], s.dim, "matrix row").transpose();
    return make_operator(s, a);
}

inline json operator_to_json(const Operator& T) {
    json rows = json::array();
    for (int i = 0; i < T.dim(); ++i) rows.push_back(coords_to_json(T.matrix.row(i).transpose(), T.space.field));
    return {{"space", space_to_json(T.space)}, {"matrix", rows}};
}

inline State state_from_json(const json& j, int n) {
    return State{Vector{coords_from_json(detail::field(j, "x"), n, "state x")},
                 Functional{coords_from_json(detail::field(j, "xstar"), n, "state xstar")}};
}

inline json state_to_json(const State& st, Field f) {
    return {{"x", coords_to_json(st.x.coords, f)}, {"xstar", coords_to_json(st.xstar.coords, f)}};
}

inline json result_to_json(const ComputeResult& r, Field f) {
    return {{"value", detail::real_number(r.value)},
            {"certificate", state_to_json(r.certificate, f)},
            {"witness_value", detail::real_number(r.witness_value)},
            {"residual", detail::real_number(r.residual)},
            {"attained", r.attained},
            {"method", r.method}};
}

inline json repair_to_json(const RepairOutcome& r) {
    const Field f = r.S.space.field;
    json j = {{"value", detail::real_number(r.crawford_of_s.value)},
              {"certificate", state_to_json(r.certificate, f)},
              {"witness_value", detail::real_number(r.certificate_value)},
              {"residual", detail::real_number(std::abs(r.certificate_value - r.crawford_of_s.value))},
              {"attained", r.certificate_value <= r.crawford_of_s.value + kRepairTol},
              {"method", to_string(r.kind)},
              {"kind", to_string(r.kind)},
              {"distance", detail::real_number(r.distance)},
              {"S", operator_to_json(r.S)}};
    if (r.zstar) j["zstar"] = coords_to_json(r.zstar->coords, f);
    return j;
}

inline const char* to_string(PolytopeCase c) {
    switch (c) {
        case PolytopeCase::contains_origin:
            return "contains_origin";
        case PolytopeCase::touches_zero:
            return "touches_zero";
        case PolytopeCase::perturbed:
            return "perturbed";
        case PolytopeCase::sign_definite:
            return "sign_definite";
    }
    return "?";
}

inline json polytope_to_json(const PolytopeAttainment& a) {
    return {{"xstar", coords_to_json(a.xstar.coords, Field::real)},
            {"attain_point", coords_to_json(a.attain_point.coords, Field::real)},
            {"minimum", detail::real_number(a.minimum)},
            {"case", to_string(a.kind)}};
}

inline json trace_to_json(const BpbTrace& tr) {
    const Field f = tr.S.space.field;
    json steps = json::array();
    for (const auto& st : tr.steps)
        steps.push_back({{"n", st.n},
                         {"lambda", json::array({st.lambda.real(), st.lambda.imag()})},
                         {"c", st.c_estimate},
                         {"step", st.step},
                         {"op_delta", st.op_delta},
                         {"dx", st.dx},
                         {"dxstar", st.dxstar},
                         {"slack_x", st.slack_x},
                         {"slack_xstar", st.slack_xstar}});
    return {{"steps", steps},
            {"S", operator_to_json(tr.S)},
            {"final_state", state_to_json(tr.final_state, f)},
            {"total_distance", tr.total_distance},
            {"final_value", tr.final_value},
            {"final_c", tr.final_c},
            {"tail", tr.tail}};
}

inline json witness_to_json(const WitnessReport& r) {
    json m = json::array();
    for (const auto& w : r.margins) m.push_back({{"n", w.n}, {"k", w.k}, {"margin", w.margin}});
    return {{"margins", m}, {"all_satisfied", r.all_satisfied}};
}

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("json: ") + e.what());
    }
}

}  // namespace crawford::io
