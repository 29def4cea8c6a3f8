// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_PA_MODELS_HPP
#define PALSEC_PA_MODELS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace palsec {

// Modified Rapp amplifier. AM/AM small-signal gain is a plain linear factor;
// the AM/PM numerator coefficient is in degrees and converted to radians at
// application time.
struct RappParams {
    double amam_gain = 1.0;
    double p_sat = 1.0;          // watts
    double smoothness_s = 2.0;
    double ampm_scale_deg = -0.315;
    double ampm_knee = 1.137;    // amplitude units
    double smoothness_q = 4.0;

    void validate() const {
        if (!(amam_gain > 0.0)) throw std::domain_error("RappParams: amam_gain must be > 0");
        if (!(p_sat > 0.0)) throw std::domain_error("RappParams: p_sat must be > 0");
        if (!(smoothness_s > 0.0)) throw std::domain_error("RappParams: smoothness_s must be > 0");
        if (!(smoothness_q > 0.0)) throw std::domain_error("RappParams: smoothness_q must be > 0");
        if (!(ampm_knee > 0.0)) throw std::domain_error("RappParams: ampm_knee must be > 0");
    }
};

// 3rd-order polynomial amplifier y = beta1 x + beta3 x |x|^2.
struct Poly3Params {
    std::complex<double> beta1{1.0, 0.0};
    std::complex<double> beta3{0.0, 0.0};

    void validate() const {
        if (std::abs(beta1) == 0.0)
            throw std::domain_error("Poly3Params: beta1 must be nonzero");
    }
};

// IBO bookkeeping; IBO_dB = 10 log10(p_in / p_sat), so negative dB means
// backed off below saturation.
struct IboSpec {
    double ibo_db = 0.0;
    double p_in = 1.0; // watts, average per-antenna input power
};

inline double psat_from_ibo(const IboSpec& ibo) {
    if (!(ibo.p_in > 0.0)) throw std::domain_error("IboSpec: p_in must be > 0");
    return ibo.p_in / std::pow(10.0, ibo.ibo_db / 10.0);
}

// Rapp AM/AM amplitude response.
inline double rapp_amplitude(const RappParams& p, double r) {
    const double ratio = r / std::sqrt(p.p_sat);
    return p.amam_gain * r /
           std::pow(1.0 + std::pow(ratio, 2.0 * p.smoothness_s), 1.0 / (2.0 * p.smoothness_s));
}

// Rapp AM/PM phase shift in radians.
inline double rapp_phase_shift(const RappParams& p, double r) {
    const double deg = p.ampm_scale_deg * std::pow(r, p.smoothness_q) /
                       (1.0 + std::pow(r / p.ampm_knee, p.smoothness_q));
    return deg * std::numbers::pi / 180.0;
}

inline std::complex<double> rapp_apply(const RappParams& p, std::complex<double> x) {
    const double r = std::abs(x);
    if (r == 0.0) return {0.0, 0.0};
    return std::polar(rapp_amplitude(p, r), std::arg(x) + rapp_phase_shift(p, r));
}

inline std::complex<double> poly3_apply(const Poly3Params& p, std::complex<double> x) {
    return p.beta1 * x + p.beta3 * x * std::norm(x);
}

// Weighted linear least squares of the Rapp complex amplitude response
// g(r) = phi_A(r) e^{j phi_phi(r)} on the basis {r, r^3}. Amplitudes are a
// deterministic uniform grid on [0, 5 sqrt(p_in)], each point weighted by the
// Rayleigh density with E[r^2] = p_in (Gaussian-input amplitude law), so fits
// are bit-reproducible.
inline Poly3Params fit_poly3_to_rapp(const RappParams& p, double p_in, int grid_points = 4096) {
    p.validate();
    if (!(p_in > 0.0)) throw std::domain_error("fit_poly3_to_rapp: p_in must be > 0");
    if (grid_points < 4) throw std::runtime_error("fit_poly3_to_rapp: degenerate amplitude grid");

    const double r_max = 5.0 * std::sqrt(p_in);
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
    std::complex<double> b1{}, b2{};
    double weight_mass = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const double w = (2.0 * r / p_in) * std::exp(-r * r / p_in);
        weight_mass += w;
        const std::complex<double> g =
            std::polar(rapp_amplitude(p, r), rapp_phase_shift(p, r));
        const double r2 = r * r;
        const double r3 = r2 * r;
        a11 += w * r2;
        a12 += w * r2 * r2;
        a22 += w * r3 * r3;
        b1 += w * r * g;
        b2 += w * r3 * g;
    }
    if (!(weight_mass > 0.0))
        throw std::runtime_error("fit_poly3_to_rapp: zero weight mass on amplitude grid");
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 0.0))
        throw std::runtime_error("fit_poly3_to_rapp: singular normal equations");
    Poly3Params out;
    out.beta1 = (a22 * b1 - a12 * b2) / det;
    out.beta3 = (a11 * b2 - a12 * b1) / det;
    return out;
}

} // namespace palsec

#endif
