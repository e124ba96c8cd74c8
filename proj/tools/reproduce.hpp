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

#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"

namespace qvlbi::cli {

/// One regenerated table or figure, with the tolerance check applied to it.
struct Artifact {
    std::string name;
    std::string file;
    /// Table or figure in the source publication that the rows reproduce.
    std::string anchor;
    Table table;
    bool pass = false;
    std::string check;
};

Artifact exoplanet_table();
Artifact consumption_table();
Artifact photometry_table();
Artifact c_factor_figure();
Artifact stirap_figure();

/// Generator names accepted by `reproduce --table` / `--figure`.
const std::vector<std::string>& table_names();
const std::vector<std::string>& figure_names();

/// Runs the generator registered under `name` ("exoplanets", "consumption",
/// "photometry", "c-factor", "stirap").
Artifact generate(const std::string& name);

/// Every generator, in manifest order.
std::vector<Artifact> generate_all();

/// Manifest document for a set of artifacts written under `directory`.
Json manifest(const std::vector<Artifact>& artifacts, std::uint64_t seed);

}  // namespace qvlbi::cli
