// Copyright 2026 The regis Authors. All rights reserved.
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

#ifndef REGIS_REPORT_HPP
#define REGIS_REPORT_HPP

#include <string>

#include "json.hpp"
#include "regis/engine.hpp"

namespace regis {

inline constexpr int kReportSchemaVersion = 1;

// Costs that fit 64 bits are numbers, larger ones decimal strings.
nlohmann::ordered_json cost_json(Cost c);

nlohmann::ordered_json config_json(const SimplifyConfig& cfg);

// Machine readable run report. Wall time is left out when `with_timing` is off,
// so that two runs of the same input compare byte for byte.
nlohmann::ordered_json report_json(const SimplifyResult& r, const SimplifyConfig& cfg, bool with_timing = true);

std::string report_string(const SimplifyResult& r, const SimplifyConfig& cfg, bool with_timing = true);

} // namespace regis

#endif
