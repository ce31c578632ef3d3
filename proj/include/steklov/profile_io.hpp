#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "steklov/errors.hpp"
#include "steklov/profile.hpp"

namespace steklov {

/**
 * Profile spec format (JSON):
 *
 *   {"kind": "cylinder",     "L": 2}
 *   {"kind": "degenerate",   "L": 2}
 *   {"kind": "smoothed_max", "L": 2, "delta": 0.1, "shape": "quadratic"|"cosine"}
 *   {"kind": "plateau",      "L": 4, "m": 2, "delta": 0.1}
 *   {"kind": "successor",    "of": { ...profile spec... }}
 *   {"kind": "samples",      "L": 2, "samples": [1, ...], "symmetric": false}
 *
 * An optional "n_hint" (intended ambient dimension) is accepted anywhere and
 * ignored by construction; it only documents intent for downstream tooling.
 */
inline Profile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw domain_error("profile spec must be an object with a \"kind\" field");
    }
    const std::string kind = j.at("kind").get<std::string>();
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) {
            throw domain_error("profile spec kind \"" + kind + "\" requires field \"" + key + "\"");
        }
        return j.at(key);
    };
    if (kind == "cylinder") return cylinder_profile(need("L").get<double>());
    if (kind == "degenerate") return degenerate_profile(need("L").get<double>());
    if (kind == "smoothed_max") {
        CapShape shape = CapShape::Quadratic;
        if (j.contains("shape")) {
            const std::string s = j.at("shape").get<std::string>();
            if (s == "cosine") shape = CapShape::Cosine;
            else if (s != "quadratic") throw domain_error("unknown cap shape \"" + s + "\"");
        }
        return smoothed_max_profile(need("L").get<double>(), need("delta").get<double>(), shape);
    }
    if (kind == "plateau") {
        return plateau_profile(need("L").get<double>(), need("m").get<double>(),
                               need("delta").get<double>());
    }
    if (kind == "successor") return successor_profile(profile_from_json(need("of")));
    if (kind == "samples") {
        auto samples = need("samples").get<std::vector<double>>();
        const bool sym = j.value("symmetric", false);
        return Profile::from_samples(need("L").get<double>(), std::move(samples), sym);
    }
    throw domain_error("unknown profile kind \"" + kind + "\"");
}

inline Profile load_profile_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open profile spec \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("profile spec \"" + path + "\" is not valid JSON: " + e.what());
    }
    return profile_from_json(j);
}

} // namespace steklov
