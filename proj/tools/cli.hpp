// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace gsht {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceBreach = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitConfig = 3;

/// Runs the command line with results on `out` and progress/errors on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct DemoOptions {
  int order = -1;  // per-demo default when < 0
  double theta = 0.5;
  double phi = 1.2;
  double kd = 1.0;
  int expansion = -1;  // default from the truncation rule
  double spacing = 0.1;
  double freq = 1000.0;
  double sound_speed = 343.0;
};

const std::vector<std::string>& demo_names();

/// Runs one demo and returns its report. Throws std::invalid_argument for an
/// unknown name.
nlohmann::ordered_json run_demo(const std::string& name, const DemoOptions& opts);

}  // namespace gsht
