// Copyright 2026 The qvlbi Authors
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

#pragma once

#include <numbers>

namespace qvlbi::constants {

// CODATA 2018 exact values.
inline constexpr double planck = 6.62607015e-34;       // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double gravitational = 6.67430e-11;   // m^3 kg^-1 s^-2

// IAU 2015 nominal solar mass parameter.
inline constexpr double gm_sun = 1.3271244e20;  // m^3 s^-2
inline constexpr double solar_mass = gm_sun / gravitational;

inline constexpr double astronomical_unit = 1.495978707e11;  // m
inline constexpr double parsec = 3.0856775814913673e16;      // m

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double arcsec_per_radian = 180.0 / pi * 3600.0;
inline constexpr double microarcsec_per_arcsec = 1e6;

}  // namespace qvlbi::constants
