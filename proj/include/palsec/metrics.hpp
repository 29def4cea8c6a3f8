// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_METRICS_HPP
#define PALSEC_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "palsec/array_channel.hpp"
#include "palsec/precoders.hpp"

namespace palsec {

// Uniform angular grid spanning [0, pi] inclusive.
struct AngularGrid {
    std::vector<double> points;

    static AngularGrid uniform(int num_points) {
        if (num_points < 2) throw std::domain_error("AngularGrid: need at least 2 points");
        AngularGrid g;
        g.points.resize(num_points);
        for (int i = 0; i < num_points; ++i)
            g.points[i] = std::numbers::pi * static_cast<double>(i) /
                          static_cast<double>(num_points - 1);
        return g;
    }

    int size() const { return static_cast<int>(points.size()); }
};

// P_sig(theta) = |h(theta)^T G w|^2. For MrtAn precoders the stored weights
// already carry sqrt(rho), so this is the information-signal pattern.
inline std::vector<double> signal_pattern(const ArrayGeometry& geom, const cmat& gain,
                                          const cvec& w, const AngularGrid& grid) {
    if (gain.rows() != gain.cols() || gain.rows() != w.size() ||
        gain.rows() != geom.num_antennas)
        throw std::domain_error("signal_pattern: dimension mismatch");
    const cvec gw = gain * w;
    std::vector<double> out(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const cvec h = array_response(geom, grid.points[i]);
        out[i] = std::norm(h.transpose() * gw);
    }
    return out;
}

// P_dist(theta) = h(theta)^T C_e h(theta)^*, real and nonnegative. Tiny
// negatives from rounding are clamped to zero; the caller gets the count.
inline std::vector<double> distortion_pattern(const ArrayGeometry& geom, const cmat& c_e,
                                              const AngularGrid& grid,
                                              int* clamp_count = nullptr) {
    if (c_e.rows() != c_e.cols() || c_e.rows() != geom.num_antennas)
        throw std::domain_error("distortion_pattern: dimension mismatch");
    std::vector<double> out(grid.points.size());
    int clamped = 0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const cvec h = array_response(geom, grid.points[i]);
        const double v = (h.transpose() * c_e * h.conjugate())(0).real();
        if (v < 0.0) {
            out[i] = 0.0;
            ++clamped;
        } else {
            out[i] = v;
        }
    }
    if (clamp_count) *clamp_count = clamped;
    return out;
}

struct PatternReport {
    std::vector<double> signal_power;
    std::vector<double> distortion_power;
    std::vector<double> directivity;
    double total_power = 0.0;
    int clamp_count = 0;
};

inline double trapezoid(const std::vector<double>& y, const std::vector<double>& x) {
    double acc = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i)
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return acc;
}

// P(theta) = P_sig + P_dist; P_T by trapezoid quadrature over [0, pi];
// D(theta) = P(theta) / (P_T / pi).
inline PatternReport total_power_and_directivity(const std::vector<double>& p_sig,
                                                 const std::vector<double>& p_dist,
                                                 const AngularGrid& grid) {
    if (p_sig.size() != p_dist.size() || p_sig.size() != grid.points.size())
        throw std::domain_error("total_power_and_directivity: inconsistent grids");
    PatternReport rep;
    rep.signal_power = p_sig;
    rep.distortion_power = p_dist;
    std::vector<double> total(p_sig.size());
    for (std::size_t i = 0; i < total.size(); ++i) total[i] = p_sig[i] + p_dist[i];
    rep.total_power = trapezoid(total, grid.points);
    rep.directivity.resize(total.size());
    const double iso = rep.total_power / std::numbers::pi;
    for (std::size_t i = 0; i < total.size(); ++i) rep.directivity[i] = total[i] / iso;
    return rep;
}

// SNDR at a given channel vector: signal over distortion-plus-AN-plus-noise.
// Pass an AN covariance for MrtAn precoders; the received AN power is
// h^T G C_an G^H h^*.
inline double sndr(const cvec& h, const cmat& gain, const cvec& w, const cmat& c_e,
                   double noise_variance, const cmat* an_covariance = nullptr) {
    if (!(noise_variance > 0.0)) throw std::domain_error("sndr: noise variance must be > 0");
    const double signal = std::norm(h.transpose() * (gain * w));
    double denom = noise_variance;
    denom += std::max(0.0, (h.transpose() * c_e * h.conjugate())(0).real());
    if (an_covariance && an_covariance->size() > 0) {
        const cmat leaked = gain * (*an_covariance) * gain.adjoint();
        denom += std::max(0.0, (h.transpose() * leaked * h.conjugate())(0).real());
    }
    return signal / denom;
}

// SNR ignores distortion and AN: |h^T G w|^2 / sigma_nu^2.
inline double snr(const cvec& h, const cmat& gain, const cvec& w, double noise_variance) {
    if (!(noise_variance > 0.0)) throw std::domain_error("snr: noise variance must be > 0");
    return std::norm(h.transpose() * (gain * w)) / noise_variance;
}

// R_s = max{0, log2((1 + SNDR_legit) / (1 + SNDR_eve))}.
inline double secrecy_rate(double sndr_legit, double sndr_eve) {
    if (sndr_legit < 0.0 || sndr_eve < 0.0)
        throw std::domain_error("secrecy_rate: SNDR values must be >= 0");
    return std::max(0.0, std::log2((1.0 + sndr_legit) / (1.0 + sndr_eve)));
}

// Empirical outage probability: fraction of grid angles with R_s < R_th.
inline double outage_probability(const std::vector<double>& rates, double r_th) {
    if (rates.empty()) throw std::domain_error("outage_probability: empty grid");
    std::size_t below = 0;
    for (double r : rates)
        if (r < r_th) ++below;
    return static_cast<double>(below) / static_cast<double>(rates.size());
}

// Lower empirical p-quantile with floor indexing: the largest threshold whose
// outage stays within p.
inline double secrecy_rate_at_outage(std::vector<double> rates, double p) {
    if (rates.empty()) throw std::domain_error("secrecy_rate_at_outage: empty grid");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("secrecy_rate_at_outage: p must be in (0, 1)");
    std::sort(rates.begin(), rates.end());
    const auto idx = static_cast<std::size_t>(std::floor(p * static_cast<double>(rates.size())));
    return rates[std::min(idx, rates.size() - 1)];
}

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

// Per-angle secrecy report for one precoder/PA operating point.
struct SecrecyReport {
    std::vector<double> sndr_eve;  // grid order
    double sndr_legit = 0.0;
    std::vector<double> secrecy;   // R_s per grid angle
    double p05 = 0.0;
    double p10 = 0.0;
    double mean_rate = 0.0;
};

// SNDR over the grid and the derived secrecy summaries against a legitimate
// user at legit_angle_rad.
inline SecrecyReport secrecy_report(const ArrayGeometry& geom, const cmat& gain,
                                    const Precoder& pre, const cmat& c_e,
                                    double noise_variance, double legit_angle_rad,
                                    const AngularGrid& grid) {
    const cmat* an = pre.kind == PrecoderKind::MrtAn ? &pre.an_covariance : nullptr;
    SecrecyReport rep;
    const cvec h_l = array_response(geom, legit_angle_rad);
    rep.sndr_legit = sndr(h_l, gain, pre.weights, c_e, noise_variance, an);
    rep.sndr_eve.resize(grid.points.size());
    rep.secrecy.resize(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const cvec h = array_response(geom, grid.points[i]);
        rep.sndr_eve[i] = sndr(h, gain, pre.weights, c_e, noise_variance, an);
        rep.secrecy[i] = secrecy_rate(rep.sndr_legit, rep.sndr_eve[i]);
    }
    rep.p05 = secrecy_rate_at_outage(rep.secrecy, 0.05);
    rep.p10 = secrecy_rate_at_outage(rep.secrecy, 0.10);
    rep.mean_rate = mean(rep.secrecy);
    return rep;
}

} // namespace palsec

#endif
