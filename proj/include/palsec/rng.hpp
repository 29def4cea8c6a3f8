// SPDX-License-Identifier: Apache-2.0
//
// palsec - physical layer security simulator for nonlinear-PA antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef PALSEC_RNG_HPP
#define PALSEC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace palsec {

// splitmix64; used to derive well-separated engine seeds from (seed, stream).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d82db5ee9d5b3ull;
    return z ^ (z >> 31);
}

// Deterministic CN(0,1) stream: mt19937_64 (bit-stable per the C++ standard)
// seeded via splitmix64(seed, stream), uniforms from the top 53 bits, complex
// Gaussians via Box-Muller. The identity string travels with every
// Monte-Carlo report.
class ComplexNormalStream {
public:
    explicit ComplexNormalStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed ^ (0xd1b54a32d192ed03ull * (stream + 1));
        engine_.seed(splitmix64(s));
    }

    static std::string generator_id() { return "mt19937_64+splitmix64/box-muller"; }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // CN(0,1): unit total variance, i.i.d. real/imag parts.
    std::complex<double> next() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-std::log(u1));
        const double phase = 2.0 * std::numbers::pi * u2;
        return std::polar(radius, phase);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace palsec

#endif
