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

#include "sdee/corpus/tokenize.hpp"

#include <cctype>

#include "sdee/corpus/types.hpp"

namespace sdee::corpus {
namespace {

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool url_char(unsigned char c) { return !std::isspace(c) && c != ')' && c != '>' && c != '"' && c != '\''; }

/// Removes fenced blocks (``` or ~~~), inline code spans and URLs.
std::string strip_markup(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  bool at_line_start = true;
  while (i < raw.size()) {
    if (at_line_start) {
      std::size_t j = i;
      while (j < raw.size() && (raw[j] == ' ' || raw[j] == '\t')) ++j;
      if (raw.compare(j, 3, "```") == 0 || raw.compare(j, 3, "~~~") == 0) {
        const std::string_view fence = raw.substr(j, 3);
        std::size_t close = raw.find('\n', j);
        while (close != std::string_view::npos) {
          std::size_t k = close + 1;
          while (k < raw.size() && (raw[k] == ' ' || raw[k] == '\t')) ++k;
          if (raw.compare(k, 3, fence) == 0) break;
          close = raw.find('\n', k);
        }
        if (close == std::string_view::npos) break;  // unterminated fence swallows the rest
        const std::size_t end = raw.find('\n', close + 1);
        i = end == std::string_view::npos ? raw.size() : end + 1;
        out.push_back('\n');
        continue;
      }
    }
    const char c = raw[i];
    if (c == '`') {
      const std::size_t close = raw.find('`', i + 1);
      if (close != std::string_view::npos) {
        out.push_back(' ');
        i = close + 1;
        at_line_start = false;
        continue;
      }
    }
    if (starts_with_ci(raw, i, "http://") || starts_with_ci(raw, i, "https://") ||
        starts_with_ci(raw, i, "ftp://") || starts_with_ci(raw, i, "www.")) {
      while (i < raw.size() && url_char(static_cast<unsigned char>(raw[i]))) ++i;
      out.push_back(' ');
      at_line_start = false;
      continue;
    }
    // "](target)" of a markdown link: keep the label, drop the target.
    if (c == ']' && i + 1 < raw.size() && raw[i + 1] == '(') {
      const std::size_t close = raw.find(')', i + 2);
      if (close != std::string_view::npos) {
        out.push_back(' ');
        i = close + 1;
        at_line_start = false;
        continue;
      }
    }
    out.push_back(c);
    at_line_start = c == '\n';
    ++i;
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw) {
  const std::string text = strip_markup(raw);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

DescriptionDoc DescriptionDoc::from_text(std::string raw) {
  DescriptionDoc doc;
  doc.tokens = tokenize(raw);
  doc.raw_text = std::move(raw);
  return doc;
}

const RepoRecord* Corpus::find(const std::string& owner, const std::string& repo) const {
  for (const auto& r : repos) {
    if (r.owner == owner && r.repo == repo) return &r;
  }
  return nullptr;
}

}  // namespace sdee::corpus
