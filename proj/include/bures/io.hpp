// Copyright 2026 The Bures-VQA Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "bures/reconstruct.hpp"
#include "bures/simulator.hpp"

namespace bures::io {

using json = nlohmann::json;

/// { "dim": d, "re": [[...]], "im": [[...]] }, row-major.
json density_matrix_to_json(const DensityMatrix &rho);
/// Parses and validates against the density-matrix invariants.
DensityMatrix density_matrix_from_json(const json &j);
DensityMatrix load_density_matrix(const std::string &path);

json vector_to_json(const CVector &v);

/// { "probabilities": [...], "parts": [[qubits]...],
///   "components": [[{ "re": [...], "im": [...] } per part] per j] }
json ensemble_to_json(const SeparableEnsemble &ensemble,
                      const std::vector<std::vector<int>> &parts);

json read_json_file(const std::string &path);

}  // namespace bures::io
