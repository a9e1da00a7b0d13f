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

#include "sdee/common/time.hpp"

#include <cstdio>

#include "sdee/common/error.hpp"

namespace sdee {
namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

Date parse_ymd(std::string_view text, std::string_view original) {
  int y, m, d;
  if (text.size() < 10 || !digits(text, 0, 4, y) || text[4] != '-' || !digits(text, 5, 2, m) ||
      text[7] != '-' || !digits(text, 8, 2, d)) {
    throw InputError("malformed date '" + std::string(original) + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw InputError("invalid calendar date '" + std::string(original) + "'");
  return Date{ymd};
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10) throw InputError("malformed date '" + std::string(text) + "'");
  return parse_ymd(text, text);
}

Timestamp parse_timestamp(std::string_view text) {
  const Date day = parse_ymd(text, text);
  Timestamp ts{std::chrono::duration_cast<std::chrono::seconds>(day.time_since_epoch())};
  if (text.size() == 10) return ts;
  const auto bad = [&] { return InputError("malformed timestamp '" + std::string(text) + "'"); };
  if (text[10] != 'T' && text[10] != ' ') throw bad();
  int hh, mm, ss = 0;
  if (!digits(text, 11, 2, hh) || text.size() < 16 || text[13] != ':' || !digits(text, 14, 2, mm)) throw bad();
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    if (!digits(text, pos + 1, 2, ss)) throw bad();
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) throw bad();
  ts += std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};
  if (pos == text.size()) return ts;
  if (text[pos] == 'Z' && pos + 1 == text.size()) return ts;
  if (text[pos] == '+' || text[pos] == '-') {
    int oh, om = 0;
    if (!digits(text, pos + 1, 2, oh)) throw bad();
    std::size_t rest = pos + 3;
    if (rest < text.size() && text[rest] == ':') ++rest;
    if (rest < text.size()) {
      if (!digits(text, rest, 2, om)) throw bad();
      rest += 2;
    }
    if (rest != text.size()) throw bad();
    const auto offset = std::chrono::hours{oh} + std::chrono::minutes{om};
    return text[pos] == '+' ? ts - offset : ts + offset;
  }
  throw bad();
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp t) {
  const Date day = std::chrono::floor<std::chrono::days>(t);
  const auto secs = (t - day).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02lld:%02lld:%02lldZ", format_date(day).c_str(),
                static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                static_cast<long long>(secs % 60));
  return buf;
}

double days_between(Timestamp start, Timestamp end) {
  return static_cast<double>((end - start).count()) / 86400.0;
}

}  // namespace sdee
