#pragma once

#include "conekit/filters.hpp"
#include "conekit/index_set.hpp"
#include "conekit/metric_space.hpp"
#include "conekit/rational.hpp"
#include "conekit/ultralimit.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace conekit {

using nlohmann::json;

inline json int_to_json(const Int& v) {
    static const Int kMaxExact = (Int(1) << 53);
    if (v >= -kMaxExact && v <= kMaxExact) return json(v.convert_to<std::int64_t>());
    return json(v.str());
}

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected integer or integer string");
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float()) throw std::invalid_argument("floats not accepted; use \"p/q\" strings");
    throw std::invalid_argument("expected rational as \"p/q\" string");
}

// --- FiniteMetricSpace:
// {"points": [...labels...], "basepoint": <label>, "dist": [["p/q", ...]], "pseudo": false}

inline json space_to_json(const FiniteMetricSpace& s) {
    json j;
    j["points"] = s.points;
    j["basepoint"] = s.points[s.basepoint];
    json rows = json::array();
    for (const auto& row : s.dist) {
        json r = json::array();
        for (const Rat& v : row) r.push_back(to_string(v));
        rows.push_back(std::move(r));
    }
    j["dist"] = std::move(rows);
    if (s.pseudo) j["pseudo"] = true;
    return j;
}

inline FiniteMetricSpace space_from_json(const json& j) {
    FiniteMetricSpace s;
    s.points = j.at("points").get<std::vector<std::string>>();
    for (const auto& row : j.at("dist")) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(rat_from_json(v));
        s.dist.push_back(std::move(r));
    }
    s.pseudo = j.value("pseudo", false);
    std::string base = j.at("basepoint").get<std::string>();
    s.basepoint = s.points.size();
    for (std::size_t i = 0; i < s.points.size(); ++i)
        if (s.points[i] == base) s.basepoint = i;
    check_shape(s);
    return s;
}

// --- IndexSet:
// {"elems": [...], "horizon": H} or {"rule": "powers:2", "horizon": H}.
// Rule-backed sets carry elements implicitly; their horizon may ride above
// any explicit list.

inline json indexset_to_json(const IndexSet& s) {
    json j;
    j["horizon"] = int_to_json(s.horizon());
    if (!s.rule().empty()) {
        j["rule"] = s.rule();
        return j;
    }
    json e = json::array();
    if (s.count() <= 10000) {
        for (const Int& v : s.to_elems()) e.push_back(int_to_json(v));
    } else {
        // compact range form [lo, hi] for sets too large to list
        for (const auto& r : s.ranges())
            e.push_back(json::array({int_to_json(r.lo), int_to_json(r.hi)}));
    }
    j["elems"] = std::move(e);
    return j;
}

inline IndexSet indexset_from_rule(const std::string& rule, const Int& horizon) {
    auto colon = rule.find(':');
    std::string head = colon == std::string::npos ? rule : rule.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : rule.substr(colon + 1);
    if (head == "powers") return powers_set(Int(arg), horizon);
    if (head == "squares") return squares_set(horizon);
    if (head == "cubes") return cubes_set(horizon);
    if (head == "factorial") {
        std::vector<Int> e;
        for (unsigned n = 1;; ++n) {
            Int f = factorial(n);
            if (f > horizon) break;
            e.push_back(f);
        }
        IndexSet s(std::move(e), horizon);
        s.set_rule("factorial");
        return s;
    }
    if (head == "powers2_nsq") {
        IndexSet s = powers2_nsq_set(static_cast<unsigned>(std::stoul(arg)));
        return s;
    }
    if (head == "all") return IndexSet::full(horizon);
    if (head == "evens") {
        std::vector<Int> e;
        for (Int v = 2; v <= horizon; v += 2) e.push_back(v);
        return IndexSet(std::move(e), horizon);
    }
    if (head == "odds") {
        std::vector<Int> e;
        for (Int v = 1; v <= horizon; v += 2) e.push_back(v);
        return IndexSet(std::move(e), horizon);
    }
    throw std::invalid_argument("unknown index-set rule: " + rule);
}

inline IndexSet indexset_from_json(const json& j) {
    Int horizon = int_from_json(j.at("horizon"));
    if (j.contains("rule")) return indexset_from_rule(j.at("rule").get<std::string>(), horizon);
    std::vector<IndexSet::Range> ranges;
    for (const auto& e : j.at("elems")) {
        if (e.is_array()) {
            Int lo = int_from_json(e.at(0)), hi = int_from_json(e.at(1));
            ranges.push_back({lo, hi});
        } else {
            Int v = int_from_json(e);
            ranges.push_back({v, v});
        }
    }
    return IndexSet::from_ranges(std::move(ranges), horizon);
}

// --- FilterBase: {"horizon": H, "generators": [<IndexSet>, ...]}

inline json filterbase_to_json(const FilterBase& fb) {
    json j;
    j["horizon"] = int_to_json(fb.horizon);
    json gens = json::array();
    for (const IndexSet& g : fb.generators) gens.push_back(indexset_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

inline FilterBase filterbase_from_json(const json& j) {
    Int horizon = int_from_json(j.at("horizon"));
    std::vector<IndexSet> gens;
    for (const auto& g : j.at("generators")) gens.push_back(indexset_from_json(g));
    return make_filter_base(std::move(gens), horizon);
}

// --- ValueSequence:
// {"values": ["p/q", ...]} or {"rule": "alternate", "values": [a, b], "horizon": H}
// rules: alternate (x_n = a for odd n, b for even), constant, harmonic (1/n).

inline ValueSequence valueseq_from_json(const json& j) {
    ValueSequence seq;
    if (j.contains("rule")) {
        std::string rule = j.at("rule").get<std::string>();
        Int h = int_from_json(j.at("horizon"));
        std::size_t H = h.convert_to<std::size_t>();
        if (rule == "alternate") {
            Rat a = rat_from_json(j.at("values").at(0));
            Rat b = rat_from_json(j.at("values").at(1));
            for (std::size_t n = 1; n <= H; ++n) seq.values.push_back(n % 2 == 1 ? a : b);
        } else if (rule == "constant") {
            Rat c = rat_from_json(j.at("values").at(0));
            seq.values.assign(H, c);
        } else if (rule == "harmonic") {
            for (std::size_t n = 1; n <= H; ++n) seq.values.push_back(Rat(1, n));
        } else {
            throw std::invalid_argument("unknown sequence rule: " + rule);
        }
        return seq;
    }
    for (const auto& v : j.at("values")) seq.values.push_back(rat_from_json(v));
    return seq;
}

inline json valueseq_to_json(const ValueSequence& seq) {
    json vals = json::array();
    for (const Rat& v : seq.values) vals.push_back(to_string(v));
    return json{{"values", std::move(vals)}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace conekit
