#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "schw/analysis.hpp"

// JSON serialization of verification artifacts. Schema kept stable for CI:
//   { "n": int, "checks": [ { "name": str, "computed": num,
//     "reference": num|null, "tolerance": num, "mode": "abs"|"rel",
//     "pass": bool } ] }

namespace schw {

inline nlohmann::json to_json(const Check& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["computed"] = c.computed;
    if (c.reference)
        j["reference"] = *c.reference;
    else
        j["reference"] = nullptr;
    j["tolerance"] = c.tolerance;
    j["mode"] = c.mode == Check::Mode::Rel ? "rel" : "abs";
    j["pass"] = c.pass;
    return j;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back(to_json(c));
    return j;
}

inline nlohmann::json to_json(const RatioScanResult& scan, Dimension n) {
    nlohmann::json j;
    j["n"] = n.value();
    j["argmin_r"] = scan.argmin_r;
    j["min_ratio"] = scan.min_ratio;
    j["kappa_lower_bound"] = kappa_lower_bound(scan, n);
    j["grid_size"] = scan.grid_size;
    j["refined"] = scan.refined;
    j["bracket"] = {scan.bracket_lo, scan.bracket_hi};
    return j;
}

inline nlohmann::json to_json(const HeisenbergReport& h, Dimension n, double B) {
    nlohmann::json j;
    j["n"] = n.value();
    j["B"] = B;
    j["lhs"] = h.lhs;
    j["moment"] = h.moment;
    j["energy"] = h.energy;
    j["rhs"] = h.rhs;
    j["slack"] = h.slack;
    j["relative_slack"] = h.slack / h.rhs;
    return j;
}

} // namespace schw
