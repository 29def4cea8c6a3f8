// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_EXPERIMENTS_HPP
#define PALSEC_EXPERIMENTS_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "palsec/bussgang.hpp"
#include "palsec/config.hpp"
#include "palsec/metrics.hpp"
#include "palsec/version.hpp"

namespace palsec {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunArtifact {
    std::vector<std::string> files; // CSVs first, manifest last
    nlohmann::json manifest;
};

namespace detail {

// 9 significant digits, '.' decimal separator.
inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// dB of a linear power; empty cell encodes the -inf sentinel.
inline std::string db_or_empty(double linear) {
    if (!(linear > 0.0)) return {};
    return fmt9(10.0 * std::log10(linear));
}

// Atomic write: stage to a temp file, then rename into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string ibo_tag(double ibo_db) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", ibo_db);
    return buf;
}

} // namespace detail

// One precoder + PA linearization at a single IBO point.
struct OperatingPoint {
    Precoder precoder;
    cmat gain;
    cmat distortion_cov;
    Poly3Params poly3;      // fitted or fixed; meaningful for poly3 runs
    bool used_fit = false;
    BussgangStats mc_stats; // populated for Rapp runs
};

inline Precoder make_precoder(const ScenarioConfig& cfg, PrecoderKind kind) {
    const cvec h = los_channel(cfg.geometry, UserDef{cfg.legit_angle_rad(), cfg.path_loss});
    switch (kind) {
        case PrecoderKind::Mrt: return mrt(h);
        case PrecoderKind::Z3ro: return z3ro(h, cfg.num_saturated);
        case PrecoderKind::MrtAn: return mrt_with_an(h, cfg.info_fraction);
    }
    throw std::logic_error("unreachable precoder kind");
}

inline OperatingPoint operating_point(const ScenarioConfig& cfg, double ibo_db,
                                      PrecoderKind kind) {
    OperatingPoint op;
    op.precoder = make_precoder(cfg, kind);
    if (cfg.pa_model == PaModelKind::Poly3) {
        if (cfg.fixed_beta1 && cfg.fixed_beta3) {
            op.poly3 = Poly3Params{*cfg.fixed_beta1, *cfg.fixed_beta3};
        } else {
            RappParams rp = cfg.rapp;
            rp.p_sat = psat_from_ibo(IboSpec{ibo_db, cfg.p_in()});
            op.poly3 = fit_poly3_to_rapp(rp, cfg.p_in());
            op.used_fit = true;
        }
        const cmat c_x = op.precoder.transmit_covariance();
        op.gain = poly3_bussgang_gain(op.poly3, c_x);
        op.distortion_cov = poly3_distortion_cov(op.poly3, c_x);
    } else {
        RappParams rp = cfg.rapp;
        rp.p_sat = psat_from_ibo(IboSpec{ibo_db, cfg.p_in()});
        op.mc_stats = rapp_bussgang_mc(rp, op.precoder.weights, cfg.mc_samples, cfg.seed);
        op.gain = op.mc_stats.gain;
        op.distortion_cov = op.mc_stats.distortion_cov;
    }
    return op;
}

namespace detail {

inline nlohmann::json manifest_base(const ScenarioConfig& cfg, const std::string& experiment) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["version"] = kVersion;
    j["seed"] = cfg.seed;
    j["rng_id"] = ComplexNormalStream::generator_id();
    j["config"] = cfg.echo();
    return j;
}

inline nlohmann::json point_info(const OperatingPoint& op, double ibo_db) {
    nlohmann::json j;
    j["ibo_db"] = ibo_db;
    if (op.used_fit || op.mc_stats.num_samples == 0) {
        j["beta1"] = {op.poly3.beta1.real(), op.poly3.beta1.imag()};
        j["beta3"] = {op.poly3.beta3.real(), op.poly3.beta3.imag()};
        j["bussgang"] = "closed-form-poly3";
    } else {
        j["bussgang"] = "monte-carlo-rapp";
        j["mc_samples"] = op.mc_stats.num_samples;
    }
    return j;
}

inline void check_clamp_budget(int clamp_count, int grid_points) {
    if (static_cast<double>(clamp_count) > 1e-3 * static_cast<double>(grid_points))
        throw NumericError("negative-distortion clamp count exceeds 0.1% of grid points (" +
                           std::to_string(clamp_count) + "/" + std::to_string(grid_points) + ")");
}

inline RunArtifact finish(const std::filesystem::path& out_dir, nlohmann::json manifest,
                          std::vector<std::pair<std::string, std::string>> csvs,
                          std::chrono::steady_clock::time_point t0) {
    RunArtifact art;
    for (auto& [name, body] : csvs) {
        detail::write_file_atomic(out_dir / name, body);
        art.files.push_back((out_dir / name).string());
        manifest["files"].push_back(name);
    }
    const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    manifest["elapsed_ms"] = dt.count();
    const auto mpath = out_dir / (manifest["experiment"].get<std::string>() + "_manifest.json");
    detail::write_file_atomic(mpath, manifest.dump(2) + "\n");
    art.files.push_back(mpath.string());
    art.manifest = std::move(manifest);
    return art;
}

} // namespace detail

// Per-angle signal/distortion directivities for the configured precoder at the
// first IBO of the sweep. Columns: angle_deg, directivity_signal_db,
// directivity_distortion_db.
inline RunArtifact run_pattern_experiment(const ScenarioConfig& cfg,
                                          const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const double ibo_db = cfg.ibo_sweep_db.front();
    const OperatingPoint op = operating_point(cfg, ibo_db, cfg.precoder);
    const AngularGrid grid = AngularGrid::uniform(cfg.grid_points);

    const auto p_sig = signal_pattern(cfg.geometry, op.gain, op.precoder.weights, grid);
    int clamp_count = 0;
    const auto p_dist = distortion_pattern(cfg.geometry, op.distortion_cov, grid, &clamp_count);
    detail::check_clamp_budget(clamp_count, cfg.grid_points);
    const PatternReport rep = total_power_and_directivity(p_sig, p_dist, grid);
    const double iso = rep.total_power / std::numbers::pi;

    std::string csv = "angle_deg,directivity_signal_db,directivity_distortion_db\n";
    for (int i = 0; i < grid.size(); ++i) {
        csv += detail::fmt9(grid.points[i] * 180.0 / std::numbers::pi);
        csv += ',';
        csv += detail::db_or_empty(p_sig[i] / iso);
        csv += ',';
        csv += detail::db_or_empty(p_dist[i] / iso);
        csv += '\n';
    }

    auto manifest = detail::manifest_base(cfg, "pattern");
    manifest["points"].push_back(detail::point_info(op, ibo_db));
    manifest["clamp_count"] = clamp_count;
    manifest["total_power"] = rep.total_power;
    return detail::finish(out_dir, std::move(manifest), {{"pattern.csv", csv}}, t0);
}

// Secrecy-rate quantiles and mean across the IBO sweep for the configured
// precoder and PA model. Columns: ibo_db, secrecy_rate_p05, secrecy_rate_p10,
// secrecy_rate_mean.
inline RunArtifact run_secrecy_vs_ibo(const ScenarioConfig& cfg,
                                      const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const AngularGrid grid = AngularGrid::uniform(cfg.grid_points);
    auto manifest = detail::manifest_base(cfg, "secrecy_ibo");

    std::string csv = "ibo_db,secrecy_rate_p05,secrecy_rate_p10,secrecy_rate_mean\n";
    for (double ibo_db : cfg.ibo_sweep_db) {
        const OperatingPoint op = operating_point(cfg, ibo_db, cfg.precoder);
        const SecrecyReport rep =
            secrecy_report(cfg.geometry, op.gain, op.precoder, op.distortion_cov,
                           cfg.noise_variance, cfg.legit_angle_rad(), grid);
        csv += detail::fmt9(ibo_db);
        csv += ',' + detail::fmt9(rep.p05);
        csv += ',' + detail::fmt9(rep.p10);
        csv += ',' + detail::fmt9(rep.mean_rate);
        csv += '\n';
        manifest["points"].push_back(detail::point_info(op, ibo_db));
    }

    const std::string pre = cfg.precoder == PrecoderKind::Mrt    ? "mrt"
                            : cfg.precoder == PrecoderKind::Z3ro ? "z3ro"
                                                                 : "mrt-an";
    const std::string pa = cfg.pa_model == PaModelKind::Poly3 ? "poly3" : "rapp";
    return detail::finish(out_dir, std::move(manifest),
                          {{"secrecy_ibo_" + pre + "_" + pa + ".csv", csv}}, t0);
}

// Per-angle secrecy rate of MRT and Z3RO side by side, one CSV per IBO point.
// Default IBO set {-20, -10, 0} dB unless a sweep is configured explicitly.
// Columns: angle_deg, R_s_mrt, R_s_z3ro.
inline RunArtifact run_secrecy_vs_angle(const ScenarioConfig& cfg,
                                        const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> ibos =
        cfg.ibo_sweep_explicit ? cfg.ibo_sweep_db : std::vector<double>{-20.0, -10.0, 0.0};
    const AngularGrid grid = AngularGrid::uniform(cfg.grid_points);
    auto manifest = detail::manifest_base(cfg, "secrecy_angle");

    std::vector<std::pair<std::string, std::string>> csvs;
    for (double ibo_db : ibos) {
        const OperatingPoint mrt_op = operating_point(cfg, ibo_db, PrecoderKind::Mrt);
        const OperatingPoint z3ro_op = operating_point(cfg, ibo_db, PrecoderKind::Z3ro);
        const SecrecyReport mrt_rep =
            secrecy_report(cfg.geometry, mrt_op.gain, mrt_op.precoder, mrt_op.distortion_cov,
                           cfg.noise_variance, cfg.legit_angle_rad(), grid);
        const SecrecyReport z3ro_rep =
            secrecy_report(cfg.geometry, z3ro_op.gain, z3ro_op.precoder, z3ro_op.distortion_cov,
                           cfg.noise_variance, cfg.legit_angle_rad(), grid);

        std::string csv = "angle_deg,R_s_mrt,R_s_z3ro\n";
        for (int i = 0; i < grid.size(); ++i) {
            csv += detail::fmt9(grid.points[i] * 180.0 / std::numbers::pi);
            csv += ',' + detail::fmt9(mrt_rep.secrecy[i]);
            csv += ',' + detail::fmt9(z3ro_rep.secrecy[i]);
            csv += '\n';
        }
        csvs.emplace_back("secrecy_angle_ibo_" + detail::ibo_tag(ibo_db) + ".csv", csv);
        manifest["points"].push_back(detail::point_info(mrt_op, ibo_db));
    }
    return detail::finish(out_dir, std::move(manifest), std::move(csvs), t0);
}

// Worst-case eavesdropper angle: grid argmax of eavesdropper SNDR excluding a
// +-2 degree window around the legitimate user.
inline int worst_eve_index(const ScenarioConfig& cfg, const SecrecyReport& rep,
                           const AngularGrid& grid) {
    const double window = 2.0 * std::numbers::pi / 180.0;
    int best = -1;
    for (int i = 0; i < grid.size(); ++i) {
        if (std::abs(grid.points[i] - cfg.legit_angle_rad()) <= window) continue;
        if (best < 0 || rep.sndr_eve[i] > rep.sndr_eve[best]) best = i;
    }
    if (best < 0) throw NumericError("eavesdropper exclusion window covers the whole grid");
    return best;
}

// Legit and worst-case-eavesdropper SNDR/SNR across the IBO sweep. Columns:
// ibo_db, sndr_legit_db, snr_legit_db, sndr_eve_db, snr_eve_db.
inline RunArtifact run_sndr_vs_ibo(const ScenarioConfig& cfg,
                                   const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const AngularGrid grid = AngularGrid::uniform(cfg.grid_points);
    auto manifest = detail::manifest_base(cfg, "sndr_ibo");

    std::string csv = "ibo_db,sndr_legit_db,snr_legit_db,sndr_eve_db,snr_eve_db\n";
    for (double ibo_db : cfg.ibo_sweep_db) {
        const OperatingPoint op = operating_point(cfg, ibo_db, cfg.precoder);
        const SecrecyReport rep =
            secrecy_report(cfg.geometry, op.gain, op.precoder, op.distortion_cov,
                           cfg.noise_variance, cfg.legit_angle_rad(), grid);
        const int eve = worst_eve_index(cfg, rep, grid);
        const cvec h_l = array_response(cfg.geometry, cfg.legit_angle_rad());
        const cvec h_e = array_response(cfg.geometry, grid.points[eve]);
        const double snr_l = snr(h_l, op.gain, op.precoder.weights, cfg.noise_variance);
        const double snr_e = snr(h_e, op.gain, op.precoder.weights, cfg.noise_variance);

        csv += detail::fmt9(ibo_db);
        csv += ',' + detail::db_or_empty(rep.sndr_legit);
        csv += ',' + detail::db_or_empty(snr_l);
        csv += ',' + detail::db_or_empty(rep.sndr_eve[eve]);
        csv += ',' + detail::db_or_empty(snr_e);
        csv += '\n';

        auto info = detail::point_info(op, ibo_db);
        info["eve_angle_deg"] = grid.points[eve] * 180.0 / std::numbers::pi;
        manifest["points"].push_back(info);
    }

    const std::string pre = cfg.precoder == PrecoderKind::Mrt    ? "mrt"
                            : cfg.precoder == PrecoderKind::Z3ro ? "z3ro"
                                                                 : "mrt-an";
    const std::string pa = cfg.pa_model == PaModelKind::Poly3 ? "poly3" : "rapp";
    return detail::finish(out_dir, std::move(manifest),
                          {{"sndr_ibo_" + pre + "_" + pa + ".csv", csv}}, t0);
}

} // namespace palsec

#endif
