// Copyright 2026 The SpinStar Authors
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
#include <string>

#include "spinstar/sweep.hpp"

namespace spinstar {

/// Parses a JSON run configuration. Every key is optional:
///
///   {
///     "n_bath": [0, 1, 2],
///     "coupling": {"scheme": "equal", "value": 1.0, "values": [...],
///                  "lo": 1.0, "hi": 2.0, "seed": 7, "rescale": false},
///     "target": "hadamard" | "pi8" | {"central": [[[re, im], ...], ...]},
///     "fidelity": "f1" | "f2",
///     "tau": {"start": 0.5, "stop": 5.0, "step": 0.5},
///     "tau_windows": {"4": {"start": ..., "stop": ..., "step": ...}},
///     "restarts": 200, "threshold": 0.995, "dt": 0.05, "seed": 0,
///     "threads": 1, "initial_scale": 1.0, "dim_cap": 256,
///     "record_wall_time": true, "stop_at_threshold": false,
///     "optimizer": {"max_iterations": 2000, "gradient_tolerance": 1e-9,
///                   "history": 10, "bound": 50.0, "value_target": 0.999}
///   }
///
/// Without "restarts" the count defaults to 200 for f1 and 500 for f2.
/// Throws ConfigError on malformed input or unknown keys.
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Inverse of parse_sweep_config, for recording the effective configuration.
std::string sweep_config_to_json(const SweepConfig& config);

}  // namespace spinstar
