// Copyright 2026 The sdee Authors
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

#include <chrono>
#include <string>
#include <string_view>

namespace sdee {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

inline constexpr double kDaysPerMonth = 30.44;

/// Parses "YYYY-MM-DD". Throws InputError.
Date parse_date(std::string_view text);

/// Parses ISO-8601 "YYYY-MM-DD[THH:MM[:SS][.fff]][Z|+HH:MM|-HH:MM]" and
/// normalizes to UTC. A bare date is midnight UTC. Throws InputError.
Timestamp parse_timestamp(std::string_view text);

std::string format_date(Date d);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

/// Length of [start, end] in days, fractional.
double days_between(Timestamp start, Timestamp end);

}  // namespace sdee
