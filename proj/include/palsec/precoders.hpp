// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_PRECODERS_HPP
#define PALSEC_PRECODERS_HPP

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "palsec/array_channel.hpp"

namespace palsec {

enum class PrecoderKind { Mrt, Z3ro, MrtAn };

// Unit-total-power precoding strategy. For MrtAn the information beam weights
// carry sqrt(info_fraction) and the rest of the power lives in an_covariance;
// trace of the transmit covariance is one for every kind.
struct Precoder {
    cvec weights;
    PrecoderKind kind = PrecoderKind::Mrt;
    int num_saturated = 0;       // Z3RO only
    double info_fraction = 1.0;  // MrtAn only
    cmat an_covariance;          // MrtAn only; empty otherwise

    // Second-order statistics of the transmitted vector x.
    cmat transmit_covariance() const {
        cmat c = weights * weights.adjoint();
        if (kind == PrecoderKind::MrtAn) c += an_covariance;
        return c;
    }

    double total_power() const { return transmit_covariance().trace().real(); }
};

// w = h^* / ||h||.
inline Precoder mrt(const cvec& h) {
    const double norm = h.norm();
    if (!(norm > 0.0)) throw std::domain_error("mrt: channel must be nonzero");
    Precoder p;
    p.kind = PrecoderKind::Mrt;
    p.weights = h.conjugate() / norm;
    return p;
}

// Zero-3rd-order precoder: the first num_saturated antennas take the negative
// gain -(sum_{unsat} |h|^4 / sum_{sat} |h|^4)^{1/3}, which nulls the aggregate
// 3rd-order distortion sum_m h_m w_m |w_m|^2 at the user. For constant-modulus
// LoS channels the factor reduces to -((M - M_s)/M_s)^{1/3} and the choice of
// saturated set is performance-irrelevant; the first-indices default keeps
// runs reproducible.
inline Precoder z3ro(const cvec& h, int num_saturated) {
    const auto m = h.size();
    if (!(num_saturated > 0 && 2 * num_saturated < m))
        throw std::domain_error("z3ro: require 0 < M_s < M/2");
    if (!(h.norm() > 0.0)) throw std::domain_error("z3ro: channel must be nonzero");

    double sat4 = 0.0, unsat4 = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double h4 = std::norm(h(i)) * std::norm(h(i));
        (i < num_saturated ? sat4 : unsat4) += h4;
    }
    if (!(sat4 > 0.0)) throw std::domain_error("z3ro: saturated antennas see zero channel");
    const double neg_gain = -std::cbrt(unsat4 / sat4);

    Precoder p;
    p.kind = PrecoderKind::Z3ro;
    p.num_saturated = num_saturated;
    p.weights = h.conjugate();
    for (Eigen::Index i = 0; i < num_saturated; ++i) p.weights(i) *= neg_gain;
    p.weights /= p.weights.norm();
    return p;
}

// MRT beam at fraction rho of the power plus artificial noise spread evenly
// over the null space of the beam. With u = h^*/||h|| the null-space projector
// is I - u u^H exactly, so C_an is deterministic and h^T C_an h^* = 0.
inline Precoder mrt_with_an(const cvec& h, double info_fraction) {
    const auto m = h.size();
    if (m < 2) throw std::domain_error("mrt_with_an: need M >= 2 for a null space");
    if (!(info_fraction > 0.0 && info_fraction <= 1.0))
        throw std::domain_error("mrt_with_an: info_fraction must be in (0, 1]");
    const double norm = h.norm();
    if (!(norm > 0.0)) throw std::domain_error("mrt_with_an: channel must be nonzero");

    const cvec u = h.conjugate() / norm;
    Precoder p;
    p.kind = PrecoderKind::MrtAn;
    p.info_fraction = info_fraction;
    p.weights = std::sqrt(info_fraction) * u;
    p.an_covariance = ((1.0 - info_fraction) / static_cast<double>(m - 1)) *
                      (cmat::Identity(m, m) - u * u.adjoint());
    return p;
}

} // namespace palsec

#endif
