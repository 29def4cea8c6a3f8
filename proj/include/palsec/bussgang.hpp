// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_BUSSGANG_HPP
#define PALSEC_BUSSGANG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "palsec/array_channel.hpp"
#include "palsec/pa_models.hpp"
#include "palsec/rng.hpp"

namespace palsec {

inline bool is_hermitian(const cmat& a, double rel_tol = 1e-12) {
    if (a.rows() != a.cols()) return false;
    const double scale = a.norm();
    return (a - a.adjoint()).norm() <= rel_tol * std::max(scale, 1.0);
}

inline void require_transmit_covariance(const cmat& c_x) {
    if (!is_hermitian(c_x))
        throw std::domain_error("transmit covariance must be Hermitian");
    Eigen::SelfAdjointEigenSolver<cmat> es(c_x, Eigen::EigenvaluesOnly);
    const double floor = -1e-10 * std::abs(c_x.trace());
    if (es.eigenvalues().minCoeff() < floor)
        throw std::domain_error("transmit covariance must be positive semidefinite");
}

enum class BussgangSource { ClosedFormPoly3, MonteCarloRapp };

// Linearized PA description: diagonal gain G and distortion covariance C_e,
// with provenance so reports can state how the numbers were obtained.
struct BussgangStats {
    cmat gain;            // G, diagonal (per-antenna PAs)
    cmat distortion_cov;  // C_e, Hermitian PSD
    BussgangSource source = BussgangSource::ClosedFormPoly3;
    std::int64_t num_samples = 0;
    std::uint64_t seed = 0;
    std::string rng_id;
    std::vector<int> zero_weight_antennas;
};

// G = beta1 I + 2 beta3 diag(C_x). For C_x = w w^H this is the rank-one
// Gaussian-input result; arbitrary Hermitian PSD C_x covers the
// beam-plus-artificial-noise case.
inline cmat poly3_bussgang_gain(const Poly3Params& p, const cmat& c_x) {
    require_transmit_covariance(c_x);
    const auto m = c_x.rows();
    cmat g = cmat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        g(i, i) = p.beta1 + 2.0 * p.beta3 * c_x(i, i);
    return g;
}

// C_e = 2 |beta3|^2 (C_x ⊙ C_x^* ⊙ C_x), elementwise.
inline cmat poly3_distortion_cov(const Poly3Params& p, const cmat& c_x) {
    require_transmit_covariance(c_x);
    const double b3sq = std::norm(p.beta3);
    return 2.0 * b3sq *
           c_x.cwiseProduct(c_x.conjugate()).cwiseProduct(c_x);
}

inline BussgangStats poly3_bussgang(const Poly3Params& p, const cmat& c_x) {
    BussgangStats stats;
    stats.gain = poly3_bussgang_gain(p, c_x);
    stats.distortion_cov = poly3_distortion_cov(p, c_x);
    stats.source = BussgangSource::ClosedFormPoly3;
    return stats;
}

// Monte-Carlo Bussgang estimate for the Rapp PA driven by x = w s,
// s ~ CN(0,1). Deterministic given (seed, num_samples). Accumulates the
// second-order moments S_yy, S_yx, S_xx so the distortion covariance
// C_e = S_yy - G S_xy^H - S_yx G^H + G S_xx G^H comes out of a single pass.
inline BussgangStats rapp_bussgang_mc(const RappParams& p, const cvec& w,
                                      std::int64_t num_samples, std::uint64_t seed) {
    p.validate();
    if (w.norm() <= 0.0)
        throw std::domain_error("rapp_bussgang_mc: precoder must be nonzero");
    if (num_samples < 10000)
        throw std::domain_error("rapp_bussgang_mc: num_samples must be >= 10^4");

    const auto m = w.size();
    cmat s_yy = cmat::Zero(m, m), s_yx = cmat::Zero(m, m), s_xx = cmat::Zero(m, m);
    cvec num = cvec::Zero(m);
    Eigen::VectorXd den = Eigen::VectorXd::Zero(m);

    ComplexNormalStream rng(seed);
    cvec x(m), y(m);
    for (std::int64_t n = 0; n < num_samples; ++n) {
        const cplx s = rng.next();
        for (Eigen::Index i = 0; i < m; ++i) {
            x(i) = w(i) * s;
            y(i) = rapp_apply(p, x(i));
        }
        num += y.cwiseProduct(x.conjugate());
        den += x.cwiseAbs2();
        s_yy += y * y.adjoint();
        s_yx += y * x.adjoint();
        s_xx += x * x.adjoint();
    }

    BussgangStats stats;
    stats.gain = cmat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (den(i) > 0.0) {
            stats.gain(i, i) = num(i) / den(i);
        } else {
            stats.gain(i, i) = 0.0; // zero-weight antenna: gain 0 by convention
            stats.zero_weight_antennas.push_back(static_cast<int>(i));
        }
    }
    const double inv_n = 1.0 / static_cast<double>(num_samples);
    const cmat& g = stats.gain;
    cmat c_e = (s_yy - g * s_yx.adjoint() - s_yx * g.adjoint() + g * s_xx * g.adjoint()) * inv_n;
    stats.distortion_cov = 0.5 * (c_e + c_e.adjoint()); // symmetrize rounding residue
    stats.source = BussgangSource::MonteCarloRapp;
    stats.num_samples = num_samples;
    stats.seed = seed;
    stats.rng_id = ComplexNormalStream::generator_id();
    return stats;
}

} // namespace palsec

#endif
