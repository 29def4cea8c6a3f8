// SPDX-License-Identifier: Apache-2.0
//
// palsec batch CLI: reproduces radiation-pattern, secrecy-vs-IBO,
// secrecy-vs-angle, and SNDR-vs-IBO experiments as CSV + manifest files.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "palsec/experiments.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string precoder;
    std::string pa;
    std::vector<double> ibo_db;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Config file (flat key = value, dotted keys)");
    cmd->add_option("--precoder", o.precoder, "Precoder kind")
        ->check(CLI::IsMember({"mrt", "z3ro", "mrt-an"}));
    cmd->add_option("--pa", o.pa, "PA model")->check(CLI::IsMember({"poly3", "rapp"}));
    cmd->add_option("--ibo-db", o.ibo_db, "IBO sweep values in dB")->delimiter(',');
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
    cmd->add_option("--seed", o.seed, "Monte-Carlo seed (u64)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv"}));
}

palsec::ScenarioConfig build_config(const CommonOpts& o) {
    palsec::ScenarioConfig cfg;
    if (!o.config_path.empty()) cfg = palsec::load_config_file(o.config_path);
    if (!o.precoder.empty())
        palsec::apply_config_entry(cfg, "precoder.kind", o.precoder);
    if (!o.pa.empty()) palsec::apply_config_entry(cfg, "pa.model", o.pa);
    if (!o.ibo_db.empty()) {
        cfg.ibo_sweep_db = o.ibo_db;
        cfg.ibo_sweep_explicit = true;
    }
    if (o.seed) cfg.seed = *o.seed;
    cfg.validate();
    return cfg;
}

void report(const palsec::RunArtifact& art) {
    for (const auto& f : art.files) std::cout << "wrote " << f << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-antenna PA-distortion physical layer security simulator"};
    app.require_subcommand(1);

    CommonOpts o_pattern, o_sibo, o_sangle, o_sndr, o_validate;
    auto* c_pattern =
        app.add_subcommand("pattern", "Signal/distortion directivity pattern over angle");
    add_common(c_pattern, o_pattern);
    auto* c_sibo = app.add_subcommand("secrecy-ibo", "Secrecy-rate quantiles/mean vs IBO");
    add_common(c_sibo, o_sibo);
    auto* c_sangle =
        app.add_subcommand("secrecy-angle", "Per-angle secrecy rate, MRT vs Z3RO, per IBO");
    add_common(c_sangle, o_sangle);
    auto* c_sndr = app.add_subcommand("sndr-ibo", "Legit/eavesdropper SNDR and SNR vs IBO");
    add_common(c_sndr, o_sndr);
    auto* c_validate = app.add_subcommand("validate-config", "Parse and validate a config");
    add_common(c_validate, o_validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_validate->parsed()) {
            build_config(o_validate);
            std::cout << "config ok\n";
            return 0;
        }
        if (c_pattern->parsed())
            report(palsec::run_pattern_experiment(build_config(o_pattern), o_pattern.out_dir));
        else if (c_sibo->parsed())
            report(palsec::run_secrecy_vs_ibo(build_config(o_sibo), o_sibo.out_dir));
        else if (c_sangle->parsed())
            report(palsec::run_secrecy_vs_angle(build_config(o_sangle), o_sangle.out_dir));
        else if (c_sndr->parsed())
            report(palsec::run_sndr_vs_ibo(build_config(o_sndr), o_sndr.out_dir));
        return 0;
    } catch (const palsec::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const palsec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
