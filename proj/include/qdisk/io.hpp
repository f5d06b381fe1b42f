/**
 * @file io.hpp
 * @brief JSON parsing/printing for triangulations, multicurves, laminations
 *        and results.  All formats are deterministic (no map-iteration
 *        nondeterminism: everything is keyed by sorted chords).
 */
#pragma once

#include "qdisk/dchart.hpp"
#include "qdisk/duality.hpp"
#include "qdisk/lamination.hpp"
#include "qdisk/polygon.hpp"
#include "qdisk/skein.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace qdisk {

using nlohmann::json;

inline json chord_json(const Chord& c) { return json::array({c.a, c.b}); }

inline Chord parse_chord(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("chord: expected [a,b]");
    return Chord(j[0].get<int>(), j[1].get<int>());
}

/// `{"n":5,"diagonals":[[0,2],[0,3]]}`
inline json triangulation_json(const Triangulation& T) {
    json d = json::array();
    for (const Chord& c : T.diagonals()) d.push_back(chord_json(c));
    return json{{"n", T.n()}, {"diagonals", d}};
}

inline Triangulation parse_triangulation(const json& j) {
    MarkedDisk disk(j.at("n").get<int>());
    std::vector<Chord> diags;
    for (const auto& c : j.at("diagonals")) diags.push_back(parse_chord(c));
    return Triangulation(disk, std::move(diags));
}

/// Chart spec string "0-2,0-3" (empty string for the triangle).
inline Triangulation parse_chart_spec(const MarkedDisk& disk, const std::string& spec) {
    std::vector<Chord> diags;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("chart: expected a-b tokens");
        diags.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    return Triangulation(disk, std::move(diags));
}

/// `{"curves":[{"chord":[0,2],"mult":2}]}`
inline json multicurve_json(const Multicurve& m) {
    json curves = json::array();
    for (const auto& [c, mult] : m) curves.push_back(json{{"chord", chord_json(c)}, {"mult", mult}});
    return json{{"curves", curves}};
}

inline Multicurve parse_multicurve(const json& j) {
    Multicurve m;
    for (const auto& e : j.at("curves")) m[parse_chord(e.at("chord"))] += e.at("mult").get<int>();
    return m;
}

/// A-lamination: `{"curves":[{"chord":[0,2],"w":1}, ...]}` with signed weights.
inline json alamination_json(const ALamination& l) {
    json curves = json::array();
    for (const auto& [c, w] : l.weights) curves.push_back(json{{"chord", chord_json(c)}, {"w", w}});
    return json{{"n", l.disk.n}, {"curves", curves}};
}

inline ALamination parse_alamination(const json& j, int polygon_n) {
    const int n = j.contains("n") ? j.at("n").get<int>() : polygon_n;
    ALamination l{MarkedDisk(n), {}};
    for (const auto& e : j.at("curves")) {
        const int w = e.at("w").get<int>();
        if (w != 0) l.weights[parse_chord(e.at("chord"))] += w;
    }
    return l;
}

/// D-lamination: `{"front":[{"chord":[0,2],"w":1}],"back":[...]}`.
inline json dlamination_json(const DLamination& l) {
    auto side = [](const std::map<Chord, int>& s) {
        json a = json::array();
        for (const auto& [c, w] : s) a.push_back(json{{"chord", chord_json(c)}, {"w", w}});
        return a;
    };
    return json{{"n", l.disk.n}, {"front", side(l.front)}, {"back", side(l.back)}};
}

inline DLamination parse_dlamination(const json& j, int polygon_n) {
    const int n = j.contains("n") ? j.at("n").get<int>() : polygon_n;
    DLamination l{MarkedDisk(n), {}, {}};
    for (const auto& e : j.at("front")) l.front[parse_chord(e.at("chord"))] += e.at("w").get<int>();
    for (const auto& e : j.at("back")) l.back[parse_chord(e.at("chord"))] += e.at("w").get<int>();
    return l;
}

inline std::vector<std::string> x_labels_of(const Triangulation& T) {
    std::vector<std::string> lab;
    for (int p : T.internal_indices()) lab.push_back("X[" + T.edges()[p].label() + "]");
    return lab;
}

/// IAResult canonical text: the torus text form in q-mode.
inline std::string ia_text(const IAResult& r, bool q_mode = true) {
    return r.value.to_string(x_labels_of(r.chart), q_mode);
}

/// Classical (w = 1) rendering of an X-chart element.
inline std::string classical_x_text(const std::map<ExpVec, Int>& poly, const Triangulation& T) {
    if (poly.empty()) return "0";
    const auto labels = x_labels_of(T);
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : poly) {
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            if (a < 0) {
                os << " - ";
                a = -a;
            } else {
                os << " + ";
            }
        }
        std::string mon;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            if (!mon.empty()) mon += " ";
            mon += labels[i];
            if (v[i] != 1) mon += "^" + std::to_string(v[i]);
        }
        if (mon.empty())
            os << a;
        else if (a == 1)
            os << mon;
        else
            os << a << "*" << mon;
    }
    return os.str();
}

/// IDResult JSON: `{n_l, denominators:[{f, mult}], numerator}` with the
/// denominators printed constant term first.
inline json id_json(const IDResult& r, const DoubleChart& D) {
    json dens = json::array();
    for (const auto& [f, mult] : r.denominators)
        dens.push_back(json{{"f", f.to_string(D.x_labels(), true)}, {"mult", mult}});
    return json{{"n_l", r.nl},
                {"denominators", dens},
                {"numerator", r.numerator.to_string(D.presentation_labels(), true)}};
}

}  // namespace qdisk
