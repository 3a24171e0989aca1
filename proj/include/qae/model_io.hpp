// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include <json.hpp>

#include "qae/network.hpp"

namespace qae {

/// Model document:
///
///   {
///     "format": "qae-model/1",
///     "layer_sizes": [2, 1, 2],
///     "kappa": [...],            // canonical parameter order
///     "channel": "depolarizing", // or null
///     "p": 0.2,                  // or null
///     "seed": 7,
///     "epochs": 150,
///     "final_fidelity": 0.99     // or null
///   }
inline constexpr const char* kModelFormat = "qae-model/1";

nlohmann::json model_to_json(const QaeModel& model);
/// Throws std::invalid_argument naming the offending field.
QaeModel model_from_json(const nlohmann::json& doc);

void save_model(const QaeModel& model, const std::filesystem::path& path);
/// Throws std::runtime_error if the file cannot be opened or parsed.
QaeModel load_model(const std::filesystem::path& path);

}  // namespace qae
