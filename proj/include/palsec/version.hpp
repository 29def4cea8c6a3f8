// SPDX-License-Identifier: Apache-2.0

#ifndef PALSEC_VERSION_HPP
#define PALSEC_VERSION_HPP

namespace palsec {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
