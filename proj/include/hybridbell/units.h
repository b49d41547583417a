// Copyright 2026 The hybridbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBRIDBELL_UNITS_H
#define HYBRIDBELL_UNITS_H

#include <numbers>

// Internal units: hbar = 1, times in ns, angular frequencies and rates in rad/ns.
namespace hybridbell::units {

inline constexpr double kTwoPi = 2 * std::numbers::pi;

/// Ordinary frequency in GHz -> angular rad/ns.
constexpr double ghz(double f) {
    return kTwoPi * f;
}
constexpr double mhz(double f) {
    return kTwoPi * f * 1e-3;
}
constexpr double khz(double f) {
    return kTwoPi * f * 1e-6;
}
constexpr double us(double t) {
    return t * 1e3;
}
constexpr double ms(double t) {
    return t * 1e6;
}

/// Angular rad/ns -> GHz.
constexpr double to_ghz(double omega) {
    return omega / kTwoPi;
}

}  // namespace hybridbell::units

#endif
