// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_ARRAY_CHANNEL_HPP
#define PALSEC_ARRAY_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace palsec {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Uniform linear array. Spacing is carrier-normalized (d / lambda_c); only
// the ratio enters the phase model.
struct ArrayGeometry {
    int num_antennas = 16;
    double spacing_over_wavelength = 0.5;

    void validate() const {
        if (num_antennas < 2)
            throw std::domain_error("ArrayGeometry: num_antennas must be >= 2");
        if (!(spacing_over_wavelength > 0.0) || spacing_over_wavelength > 1.0)
            throw std::domain_error("ArrayGeometry: spacing_over_wavelength must be in (0, 1]");
    }
};

// Single-antenna user at angle theta (radians, [0, pi]) with linear-scale
// path loss beta.
struct UserDef {
    double angle_rad = 0.0;
    double path_loss = 1.0;

    void validate() const {
        if (!(angle_rad >= 0.0 && angle_rad <= std::numbers::pi))
            throw std::domain_error("UserDef: angle must be in [0, pi] radians");
        if (!(path_loss >= 0.0))
            throw std::domain_error("UserDef: path_loss must be >= 0");
    }
};

// LoS channel coefficients h_m = sqrt(beta) * exp(-j m 2*pi*(d/lambda) cos(theta)),
// m = 0..M-1.
inline cvec los_channel(const ArrayGeometry& geom, const UserDef& user) {
    geom.validate();
    user.validate();
    const double amp = std::sqrt(user.path_loss);
    const double phase_step =
        -2.0 * std::numbers::pi * geom.spacing_over_wavelength * std::cos(user.angle_rad);
    cvec h(geom.num_antennas);
    for (int m = 0; m < geom.num_antennas; ++m)
        h(m) = std::polar(amp, static_cast<double>(m) * phase_step);
    return h;
}

// Array response vector: unit-path-loss LoS channel.
inline cvec array_response(const ArrayGeometry& geom, double angle_rad) {
    return los_channel(geom, UserDef{angle_rad, 1.0});
}

} // namespace palsec

#endif
