// Copyright 2026 The GTD Evaluation Authors.
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

// Helpers for the hand-rolled JSON writers. nlohmann::json cannot pin the
// number of decimals, and every float in our files is written with six.

#include <cmath>
#include <string>
#include <string_view>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace gtd::json {

inline std::string quote(std::string_view s) {
  return nlohmann::json(std::string(s)).dump();
}

inline std::string fixed6(double v) {
  // Avoid "-0.000000".
  if (v == 0.0 || std::fabs(v) < 5e-7) v = 0.0;
  return fmt::format("{:.6f}", v);
}

// Rounds to the nearest multiple of 1e-6 so that fixed6() round-trips exactly.
inline double quantize6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace gtd::json
