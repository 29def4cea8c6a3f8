// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_CONFIG_HPP
#define PALSEC_CONFIG_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "palsec/array_channel.hpp"
#include "palsec/pa_models.hpp"
#include "palsec/precoders.hpp"

namespace palsec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PaModelKind { Poly3, Rapp };

// Scenario description with the reference defaults baked in, so a bare run
// reproduces the standard 16-antenna, 120-degree, -20 dB-noise scenario.
struct ScenarioConfig {
    ArrayGeometry geometry{16, 0.5};
    double legit_angle_deg = 120.0;
    double path_loss = 1.0;
    double noise_variance = 1e-2;

    PaModelKind pa_model = PaModelKind::Poly3;
    RappParams rapp{}; // p_sat is derived per IBO point, never configured
    std::optional<cplx> fixed_beta1; // bypass the Rapp fit when both are set
    std::optional<cplx> fixed_beta3;

    PrecoderKind precoder = PrecoderKind::Z3ro;
    int num_saturated = 1;
    double info_fraction = 0.7;

    std::vector<double> ibo_sweep_db{-10.0};
    bool ibo_sweep_explicit = false;

    int grid_points = 2000;
    std::int64_t mc_samples = 200000;
    std::uint64_t seed = 1;

    double legit_angle_rad() const { return legit_angle_deg * std::numbers::pi / 180.0; }
    double p_in() const { return 1.0 / static_cast<double>(geometry.num_antennas); }

    void validate() const {
        geometry.validate();
        UserDef{legit_angle_rad(), path_loss}.validate();
        if (!(noise_variance > 0.0)) throw ConfigError("noise.variance: must be > 0");
        try {
            rapp.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("pa.rapp: ") + e.what());
        }
        if (fixed_beta1.has_value() != fixed_beta3.has_value())
            throw ConfigError("pa.beta1/pa.beta3: set both or neither");
        if (precoder == PrecoderKind::Z3ro &&
            !(num_saturated > 0 && 2 * num_saturated < geometry.num_antennas))
            throw ConfigError("precoder.num_saturated: require 0 < M_s < M/2");
        if (precoder == PrecoderKind::MrtAn &&
            !(info_fraction > 0.0 && info_fraction <= 1.0))
            throw ConfigError("precoder.info_fraction: must be in (0, 1]");
        if (pa_model == PaModelKind::Rapp && precoder == PrecoderKind::MrtAn)
            throw ConfigError("pa.model: rapp supports precoder mrt|z3ro only");
        if (ibo_sweep_db.empty()) throw ConfigError("sweep.ibo_db: must be nonempty");
        if (grid_points < 2) throw ConfigError("grid.num_points: must be >= 2");
        if (mc_samples < 10000) throw ConfigError("mc.samples: must be >= 10^4");
    }

    // Canonical key/value echo; parsing this map back reproduces the config.
    std::map<std::string, std::string> echo() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
}

// "re" or "re,im".
inline cplx parse_complex(const std::string& key, const std::string& v) {
    const auto comma = v.find(',');
    if (comma == std::string::npos) return {parse_double(key, trim(v)), 0.0};
    return {parse_double(key, trim(v.substr(0, comma))),
            parse_double(key, trim(v.substr(comma + 1)))};
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key + ": empty list element");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

} // namespace detail

// Applies one key/value pair; unknown keys are rejected with the key path.
inline void apply_config_entry(ScenarioConfig& cfg, const std::string& key,
                               const std::string& value) {
    using namespace detail;
    if (key == "array.num_antennas") cfg.geometry.num_antennas = static_cast<int>(parse_int(key, value));
    else if (key == "array.spacing_over_wavelength") cfg.geometry.spacing_over_wavelength = parse_double(key, value);
    else if (key == "user.angle_deg") cfg.legit_angle_deg = parse_double(key, value);
    else if (key == "user.path_loss") cfg.path_loss = parse_double(key, value);
    else if (key == "noise.variance") cfg.noise_variance = parse_double(key, value);
    else if (key == "pa.model") {
        if (value == "poly3") cfg.pa_model = PaModelKind::Poly3;
        else if (value == "rapp") cfg.pa_model = PaModelKind::Rapp;
        else throw ConfigError("pa.model: expected poly3|rapp, got '" + value + "'");
    }
    else if (key == "pa.amam_gain") cfg.rapp.amam_gain = parse_double(key, value);
    else if (key == "pa.smoothness_s") cfg.rapp.smoothness_s = parse_double(key, value);
    else if (key == "pa.ampm_scale_deg") cfg.rapp.ampm_scale_deg = parse_double(key, value);
    else if (key == "pa.ampm_knee") cfg.rapp.ampm_knee = parse_double(key, value);
    else if (key == "pa.smoothness_q") cfg.rapp.smoothness_q = parse_double(key, value);
    else if (key == "pa.beta1") cfg.fixed_beta1 = parse_complex(key, value);
    else if (key == "pa.beta3") cfg.fixed_beta3 = parse_complex(key, value);
    else if (key == "precoder.kind") {
        if (value == "mrt") cfg.precoder = PrecoderKind::Mrt;
        else if (value == "z3ro") cfg.precoder = PrecoderKind::Z3ro;
        else if (value == "mrt-an") cfg.precoder = PrecoderKind::MrtAn;
        else throw ConfigError("precoder.kind: expected mrt|z3ro|mrt-an, got '" + value + "'");
    }
    else if (key == "precoder.num_saturated") cfg.num_saturated = static_cast<int>(parse_int(key, value));
    else if (key == "precoder.info_fraction") cfg.info_fraction = parse_double(key, value);
    else if (key == "sweep.ibo_db") { cfg.ibo_sweep_db = parse_double_list(key, value); cfg.ibo_sweep_explicit = true; }
    else if (key == "grid.num_points") cfg.grid_points = static_cast<int>(parse_int(key, value));
    else if (key == "mc.samples") cfg.mc_samples = parse_int(key, value);
    else if (key == "mc.seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else throw ConfigError("unknown config key: " + key);
}

// Flat key-value file: `section.key = value`, `#` comments, blank lines ok.
inline ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

inline std::map<std::string, std::string> ScenarioConfig::echo() const {
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    std::map<std::string, std::string> m;
    m["array.num_antennas"] = std::to_string(geometry.num_antennas);
    m["array.spacing_over_wavelength"] = num(geometry.spacing_over_wavelength);
    m["user.angle_deg"] = num(legit_angle_deg);
    m["user.path_loss"] = num(path_loss);
    m["noise.variance"] = num(noise_variance);
    m["pa.model"] = pa_model == PaModelKind::Poly3 ? "poly3" : "rapp";
    m["pa.amam_gain"] = num(rapp.amam_gain);
    m["pa.smoothness_s"] = num(rapp.smoothness_s);
    m["pa.ampm_scale_deg"] = num(rapp.ampm_scale_deg);
    m["pa.ampm_knee"] = num(rapp.ampm_knee);
    m["pa.smoothness_q"] = num(rapp.smoothness_q);
    if (fixed_beta1) m["pa.beta1"] = num(fixed_beta1->real()) + "," + num(fixed_beta1->imag());
    if (fixed_beta3) m["pa.beta3"] = num(fixed_beta3->real()) + "," + num(fixed_beta3->imag());
    m["precoder.kind"] = precoder == PrecoderKind::Mrt    ? "mrt"
                         : precoder == PrecoderKind::Z3ro ? "z3ro"
                                                          : "mrt-an";
    m["precoder.num_saturated"] = std::to_string(num_saturated);
    m["precoder.info_fraction"] = num(info_fraction);
    {
        std::string list;
        for (std::size_t i = 0; i < ibo_sweep_db.size(); ++i) {
            if (i) list += ",";
            list += num(ibo_sweep_db[i]);
        }
        m["sweep.ibo_db"] = list;
    }
    m["grid.num_points"] = std::to_string(grid_points);
    m["mc.samples"] = std::to_string(mc_samples);
    m["mc.seed"] = std::to_string(seed);
    return m;
}

} // namespace palsec

#endif
