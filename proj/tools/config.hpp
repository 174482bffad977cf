// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

// Calibration files: a flat JSON object with cost-model timings and mock HE
// parameters. Every key is optional; unknown keys are rejected.
//
//   { "t_perm": 0.178, "t_scmult": 0.005, "t_add": 0.0034,
//     "t_decperm": 0.1068, "t_hstperm": 0.0712,
//     "n": 2048, "p": 1048573, "q_bits": 60,
//     "eta0": 8, "eta_mult": 1024, "eta_rot": 2048, "noise_budget": 5.5e11 }

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "json.hpp"

namespace helinear::cli {

struct Calibration {
    CostModel cost;
    HEParams params;
    bool explicit_budget = false;

    /// Re-derives the noise budget from p and q_bits unless one was given.
    void refresh_budget() {
        if (!explicit_budget) params.noise_budget = HEParams::default_noise_budget(params.q_bits, params.p);
    }

    void validate() const {
        cost.validate();
        params.validate();
    }
};

inline Calibration parse_calibration(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParameterError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    Calibration c;
    auto number = [](const nlohmann::json &v, const std::string &key) {
        if (!v.is_number()) throw ParameterError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto integer = [](const nlohmann::json &v, const std::string &key) {
        if (!v.is_number_unsigned()) throw ParameterError("config key '" + key + "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    };
    for (const auto &[key, v] : j.items()) {
        if (key == "t_perm") c.cost.t_perm = number(v, key);
        else if (key == "t_scmult") c.cost.t_scmult = number(v, key);
        else if (key == "t_add") c.cost.t_add = number(v, key);
        else if (key == "t_decperm") c.cost.t_decperm = number(v, key);
        else if (key == "t_hstperm") c.cost.t_hstperm = number(v, key);
        else if (key == "eta0") c.params.eta0 = number(v, key);
        else if (key == "eta_mult") c.params.eta_mult = number(v, key);
        else if (key == "eta_rot") c.params.eta_rot = number(v, key);
        else if (key == "sigma") c.params.sigma = number(v, key);
        else if (key == "n") c.params.n = integer(v, key);
        else if (key == "p") c.params.p = integer(v, key);
        else if (key == "q_bits") c.params.q_bits = static_cast<unsigned>(integer(v, key));
        else if (key == "noise_budget") {
            c.params.noise_budget = number(v, key);
            c.explicit_budget = true;
        } else {
            throw ParameterError("unknown config key '" + key + "'");
        }
    }
    c.refresh_budget();
    c.validate();
    return c;
}

inline Calibration load_calibration(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_calibration(ss.str());
}

}  // namespace helinear::cli
