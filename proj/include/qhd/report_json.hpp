#pragma once

#include <string>

#include <json.hpp>

#include "qhd/analysis.hpp"
#include "qhd/errors.hpp"

namespace qhd {

inline CaseTag case_tag_from_string(const std::string& s) {
    if (s == "entangled") return CaseTag::entangled;
    if (s == "all_disagree") return CaseTag::all_disagree;
    if (s == "all_agree") return CaseTag::all_agree;
    throw input_error("unknown case tag '" + s + "'");
}

inline RunMode run_mode_from_string(const std::string& s) {
    if (s == "exact") return RunMode::exact;
    if (s == "sampled") return RunMode::sampled;
    throw input_error("unknown mode '" + s + "' (expected exact or sampled)");
}

// Stable report schema. Keys are frozen:
//   n, N, kappa, H, M_c, C, p1, delta, case, mode, shots,
//   classical_joint, classical_textbook, warnings
// delta and the classical fields are null when not taken.
inline nlohmann::json report_to_json(const HammingReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["N"] = r.N;
    j["kappa"] = r.kappa;
    j["H"] = r.hamming;
    j["M_c"] = r.common_ones;
    j["C"] = r.reading.C;
    j["p1"] = r.reading.p1;
    j["delta"] = r.delta ? nlohmann::json(*r.delta) : nlohmann::json(nullptr);
    j["case"] = to_string(r.tag);
    j["mode"] = to_string(r.reading.mode);
    j["shots"] = r.reading.shots;
    j["classical_joint"] =
        r.classical_joint ? nlohmann::json(*r.classical_joint) : nlohmann::json(nullptr);
    j["classical_textbook"] =
        r.classical_textbook ? nlohmann::json(*r.classical_textbook) : nlohmann::json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

inline HammingReport report_from_json(const nlohmann::json& j) {
    HammingReport r;
    r.n = j.at("n").get<int>();
    r.N = j.at("N").get<std::uint64_t>();
    r.kappa = j.at("kappa").get<int>();
    r.hamming = j.at("H").get<std::uint64_t>();
    r.common_ones = j.at("M_c").get<std::uint64_t>();
    r.reading.C = j.at("C").get<double>();
    r.reading.p1 = j.at("p1").get<double>();
    if (!j.at("delta").is_null()) r.delta = j.at("delta").get<int>();
    r.tag = case_tag_from_string(j.at("case").get<std::string>());
    r.reading.mode = run_mode_from_string(j.at("mode").get<std::string>());
    r.reading.shots = j.at("shots").get<std::uint64_t>();
    if (!j.at("classical_joint").is_null())
        r.classical_joint = j.at("classical_joint").get<std::uint64_t>();
    if (!j.at("classical_textbook").is_null())
        r.classical_textbook = j.at("classical_textbook").get<std::uint64_t>();
    if (r.classical_joint) r.agrees_with_classical = (r.hamming == r.N - *r.classical_joint);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

} // namespace qhd
