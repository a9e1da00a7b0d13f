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

#include <string>
#include <string_view>
#include <vector>

namespace sdee::corpus {

/// Normalizes README-style text into word tokens: drops fenced code blocks,
/// inline code, URLs and markdown link targets, lowercases ASCII, splits on
/// anything that is not alphanumeric and drops tokens shorter than two
/// characters. Bytes >= 0x80 count as word characters so UTF-8 words survive.
std::vector<std::string> tokenize(std::string_view raw);

}  // namespace sdee::corpus
