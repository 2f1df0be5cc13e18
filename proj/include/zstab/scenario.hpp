// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/charge.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace zstab {

struct Scenario {
    int version = 1;
    Scene scene;
    std::vector<std::pair<std::string, CentralCharge>> charges;

    const CentralCharge& charge(const std::string& name) const {
        for (const auto& [n, c] : charges)
            if (n == name) return c;
        throw precondition_error("no charge named '" + name + "' in scenario");
    }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw parse_error("unknown key '" + it.key() + "' in " + where);
}

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

// Phase literals: "pi", "pi/4", "-3pi/4", "1/2pi" (rational multiples of pi)
// or a plain number taken as radians.
inline Phase parse_phase_string(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
    auto pos = s.find("pi");
    if (pos == std::string::npos) return Phase::from_radians(to_double(parse_rational(s)));
    std::string lead = s.substr(0, pos), tail = s.substr(pos + 2);
    Rat t(1);
    bool neg = false;
    if (!lead.empty() && (lead[0] == '+' || lead[0] == '-')) {
        neg = lead[0] == '-';
        lead.erase(lead.begin());
    }
    if (!lead.empty()) {
        if (lead.back() == '*') lead.pop_back();
        if (!lead.empty()) t = parse_rational(lead);
    }
    if (!tail.empty()) {
        if (tail[0] != '/') throw parse_error("bad phase literal: '" + in + "'");
        t /= parse_rational(tail.substr(1));
    }
    if (neg) t = -t;
    return Phase::pi_multiple(t);
}

inline Phase parse_phase_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_phase_string(j.get<std::string>());
    if (j.is_number()) return Phase::from_radians(j.get<double>());
    throw parse_error("phase must be a string or a number");
}

inline std::string phase_to_string(const Phase& p) {
    if (!p.is_pi_multiple) return std::to_string(p.radians);
    if (p.t == 0) return "0";
    std::ostringstream os;
    if (numerator(p.t) != 1) os << numerator(p.t);
    os << "pi";
    if (denominator(p.t) != 1) os << "/" << denominator(p.t);
    return os.str();
}

inline Scenario parse_scenario_json(const nlohmann::json& root) {
    if (!root.is_object()) throw parse_error("scenario must be a JSON object");
    detail::reject_unknown_keys(root, {"version", "rank", "factors", "point", "charges"}, "scenario");
    for (const char* key : {"version", "rank", "factors", "point", "charges"})
        if (!root.contains(key)) throw parse_error(std::string("scenario is missing '") + key + "'");
    Scenario sc;
    sc.version = root.at("version").get<int>();
    if (sc.version != 1) throw parse_error("unsupported scenario version");
    const std::size_t rank = root.at("rank").get<std::size_t>();

    std::vector<LinearisedFactor> factors;
    for (const auto& jf : root.at("factors")) {
        detail::reject_unknown_keys(jf, {"label", "weights", "shift"}, "factor");
        LinearisedFactor f;
        f.label = jf.contains("label") ? jf.at("label").get<std::string>() : "";
        if (!jf.contains("weights")) throw parse_error("factor is missing 'weights'");
        for (const auto& jrow : jf.at("weights")) {
            std::vector<long long> row;
            for (const auto& e : jrow) row.push_back(e.get<long long>());
            f.weights.push_back(std::move(row));
        }
        if (jf.contains("shift"))
            for (const auto& e : jf.at("shift"))
                f.shift.push_back(e.is_string() ? parse_rational(e.get<std::string>())
                                                : rat_of_double(e.get<double>()));
        else
            f.shift.assign(rank, Rat(0));
        factors.push_back(std::move(f));
    }

    std::vector<std::vector<std::complex<double>>> point;
    for (const auto& jx : root.at("point")) {
        std::vector<std::complex<double>> coords;
        for (const auto& e : jx) {
            if (e.is_string()) {
                CRat z = parse_complex(e.get<std::string>());
                coords.emplace_back(to_double(z.re), to_double(z.im));
            } else {
                coords.emplace_back(e.get<double>(), 0.0);
            }
        }
        point.push_back(std::move(coords));
    }
    sc.scene = Scene(rank, std::move(factors), std::move(point));

    for (const auto& jc : root.at("charges")) {
        detail::reject_unknown_keys(jc, {"name", "coefficients", "phase"}, "charge");
        if (!jc.contains("name") || !jc.contains("coefficients"))
            throw parse_error("charge needs 'name' and 'coefficients'");
        std::vector<CRat> coeffs;
        for (const auto& e : jc.at("coefficients")) coeffs.push_back(parse_complex(e.get<std::string>()));
        Phase phase = jc.contains("phase") ? parse_phase_json(jc.at("phase")) : Phase::pi_multiple(0);
        sc.charges.emplace_back(jc.at("name").get<std::string>(),
                                CentralCharge(std::move(coeffs), phase));
    }
    if (sc.charges.empty()) throw parse_error("scenario needs at least one charge");
    return sc;
}

inline Scenario parse_scenario(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw parse_error("JSON parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    return parse_scenario_json(root);
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

// Group literals for the Weyl commands: gl:N, sl:N, torus:R.
inline WeylAction parse_group(const std::string& spec) {
    auto pos = spec.find(':');
    if (pos == std::string::npos) throw parse_error("group must look like gl:N, sl:N or torus:R");
    std::string kind = spec.substr(0, pos);
    int n = 0;
    try {
        n = std::stoi(spec.substr(pos + 1));
    } catch (const std::exception&) {
        throw parse_error("bad group size in '" + spec + "'");
    }
    if (n < 1) throw parse_error("group size must be positive");
    if (kind == "gl") return weyl_gl(static_cast<std::size_t>(n));
    if (kind == "sl") return weyl_sl(static_cast<std::size_t>(n));
    if (kind == "torus") return weyl_torus(static_cast<std::size_t>(n));
    throw parse_error("unknown group kind '" + kind + "'");
}

// Tabulated-charge files: {"rank": r, "group": "gl:2" | {"generators": [...]},
// "entries": [{"lambda": [...], "value": "a+bi"}]}
inline TabulatedCharge load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open table file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw parse_error("JSON parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    detail::reject_unknown_keys(root, {"rank", "group", "entries"}, "table");
    if (!root.contains("rank") || !root.contains("entries"))
        throw parse_error("table needs 'rank' and 'entries'");
    const std::size_t rank = root.at("rank").get<std::size_t>();
    std::optional<WeylAction> datum;
    if (root.contains("group")) {
        const auto& jg = root.at("group");
        if (jg.is_string()) {
            datum = parse_group(jg.get<std::string>());
        } else {
            detail::reject_unknown_keys(jg, {"generators"}, "group");
            std::vector<WeylAction::Matrix> gens;
            for (const auto& jm : jg.at("generators")) {
                WeylAction::Matrix m;
                for (const auto& jrow : jm) {
                    std::vector<long long> row;
                    for (const auto& e : jrow) row.push_back(e.get<long long>());
                    m.push_back(std::move(row));
                }
                gens.push_back(std::move(m));
            }
            datum = WeylAction(rank, std::move(gens), "custom");
        }
        if (datum->rank() != rank) throw parse_error("group rank does not match table rank");
    }
    std::map<Cocharacter, CRat> table;
    for (const auto& je : root.at("entries")) {
        detail::reject_unknown_keys(je, {"lambda", "value"}, "entry");
        Cocharacter lam;
        for (const auto& e : je.at("lambda")) lam.push_back(e.get<long long>());
        table[lam] = parse_complex(je.at("value").get<std::string>());
    }
    return TabulatedCharge(rank, std::move(table), std::move(datum));
}

}  // namespace zstab
