#pragma once

// JSON encodings of the CLI-facing objects.

#include <json.hpp>

#include "bowlab/bct.hpp"
#include "bowlab/character.hpp"
#include "bowlab/diagram.hpp"
#include "bowlab/qform.hpp"
#include "bowlab/stab.hpp"

namespace bowlab {

using json = nlohmann::ordered_json;

inline json to_json(const BraneDiagram& D) {
    json j;
    j["branes"] = json::array();
    for (Brane b : D.branes()) j["branes"].push_back(b == Brane::NS5 ? "Z" : "A");
    j["d3"] = D.d3();
    return j;
}

inline BraneDiagram diagram_from_json(const json& j) {
    std::vector<Brane> branes;
    for (const auto& s : j.at("branes")) {
        std::string v = s.get<std::string>();
        if (v == "Z")
            branes.push_back(Brane::NS5);
        else if (v == "A")
            branes.push_back(Brane::D5);
        else
            throw error("diagram_from_json: brane tag must be Z or A");
    }
    return BraneDiagram(std::move(branes), j.at("d3").get<std::vector<int>>());
}

inline json to_json(const ChargeVector& ch) {
    return json{{"r", ch.r}, {"c", ch.c}};
}

// BCT rows and columns are 1-based: row i is the i-th NS5 brane from the
// left, column j the j-th D5 brane.
inline json to_json(const BCT& f) {
    json ones = json::array();
    for (auto [i, j] : f.ties()) ones.push_back({i + 1, j + 1});
    return json{{"rows", f.rows()}, {"cols", f.cols()}, {"ones", ones}};
}

inline BCT bct_from_json(const json& j) {
    BCT f(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& one : j.at("ones")) f.set(one.at(0).get<int>() - 1, one.at(1).get<int>() - 1, 1);
    return f;
}

inline json to_json(const Monomial& m) {
    json j;
    if (m.t != 0) j["t"] = m.t;
    j["a"] = m.a;
    j["z"] = m.z;
    j["h"] = m.h;
    return j;
}

inline json to_json(const Character& chi) {
    json j = json::array();
    for (const auto& [m, mult] : chi.terms()) {
        json term = to_json(m);
        term["mult"] = mult;
        j.push_back(term);
    }
    return j;
}

inline json to_json(const QForm& q) {
    json j = json::object();
    for (const auto& [key, v] : q.coeffs()) {
        std::string name = key.first.type == QAtom::S2 ? key.first.name()
                                                       : key.first.name() + "*" + key.second.name();
        j[name] = v;
    }
    return j;
}

inline json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline json to_json(const EvalContext& ctx) {
    json j;
    j["q"] = complex_to_json(ctx.q);
    j["a"] = json::array();
    for (auto v : ctx.log_a) j["a"].push_back(complex_to_json(v));
    j["z"] = json::array();
    for (auto v : ctx.log_z) j["z"].push_back(complex_to_json(v));
    j["hbar"] = complex_to_json(ctx.log_h);
    j["tol"] = ctx.tol;
    return j;
}

inline EvalContext context_from_json(const json& j) {
    auto cx = [](const json& v) { return cplx(v.at(0).get<double>(), v.at(1).get<double>()); };
    EvalContext ctx;
    if (j.contains("q")) ctx.q = cx(j.at("q"));
    if (j.contains("a"))
        for (const auto& v : j.at("a")) ctx.log_a.push_back(cx(v));
    if (j.contains("z"))
        for (const auto& v : j.at("z")) ctx.log_z.push_back(cx(v));
    if (j.contains("hbar")) ctx.log_h = cx(j.at("hbar"));
    if (j.contains("tol")) ctx.tol = j.at("tol").get<double>();
    if (std::abs(ctx.q) >= 1.0) throw error("context: |q| must be < 1");
    return ctx;
}

inline json to_json(const CMatrix& M) {
    json j = json::array();
    for (const auto& row : M) {
        json r = json::array();
        for (auto v : row) r.push_back(complex_to_json(v));
        j.push_back(r);
    }
    return j;
}

inline std::string theta_expr_string(const ThetaProduct& p) { return p.to_expr().to_string(); }

inline json to_json_symbolic(const StabMatrix& S) {
    json j;
    j["family"] = S.family == StabFamily::Tp1Intro
                      ? "tp1-intro"
                      : (S.family == StabFamily::TpnSeparated ? "tpn-separated" : "tpn-co-separated");
    j["n"] = S.n;
    j["chamber"] = S.chamber;
    j["r"] = S.r;
    j["formulas"] = json::array();
    for (const auto& f : S.formulas) j["formulas"].push_back(theta_expr_string(f));
    j["entries"] = json::array();
    for (const auto& row : S.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(theta_expr_string(e.canceled()));
        j["entries"].push_back(r);
    }
    return j;
}

}  // namespace bowlab
