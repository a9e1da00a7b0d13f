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

#include "sdee/embed/model.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "sdee/common/error.hpp"
#include "sdee/common/random.hpp"

namespace sdee::embed {

void TrainingScenario::validate(std::size_t corpus_size) const {
  if (epochs < 1) throw InputError("epochs must be >= 1");
  if (vector_size < 1) throw InputError("vector size must be >= 1");
  const std::size_t samples = training_samples == 0 ? corpus_size : static_cast<std::size_t>(training_samples);
  if (training_samples < 0 || samples < 1 || samples > corpus_size) {
    throw InputError("training samples must lie in [1, " + std::to_string(corpus_size) + "]");
  }
}

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<std::uint64_t> counts)
    : words_(std::move(words)), counts_(std::move(counts)) {
  if (words_.size() != counts_.size()) throw InputError("vocabulary words and counts differ in length");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<std::uint32_t>(i)).second) {
      throw InputError("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::build(std::span<const Document> docs, std::uint64_t min_count) {
  std::map<std::string, std::uint64_t> freq;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [w, c] : freq) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  for (auto& [w, c] : kept) {
    words.push_back(w);
    counts.push_back(c);
  }
  return Vocabulary(std::move(words), std::move(counts));
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (const auto id = find(t)) ids.push_back(*id);
  }
  return ids;
}

namespace {

void fnv(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::string SimilarityModel::id() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < vocab.size(); ++i) fnv(h, vocab.word(i).data(), vocab.word(i).size() + 1);
  fnv(h, word_vectors.data(), static_cast<std::size_t>(word_vectors.size()) * sizeof(float));
  fnv(h, doc_vectors.data(), static_cast<std::size_t>(doc_vectors.size()) * sizeof(float));
  char buf[96];
  std::snprintf(buf, sizeof buf, "pvdbow-g%d-b%d-n%lld-s%llu-%016llx", scenario.vector_size, scenario.epochs,
                static_cast<long long>(doc_vectors.rows()), static_cast<unsigned long long>(scenario.seed),
                static_cast<unsigned long long>(h));
  return buf;
}

bool SimilarityModel::operator==(const SimilarityModel& o) const {
  return vocab == o.vocab && scenario == o.scenario && doc_ids == o.doc_ids &&
         word_vectors.rows() == o.word_vectors.rows() && word_vectors.cols() == o.word_vectors.cols() &&
         doc_vectors.rows() == o.doc_vectors.rows() && doc_vectors.cols() == o.doc_vectors.cols() &&
         std::equal(word_vectors.data(), word_vectors.data() + word_vectors.size(), o.word_vectors.data()) &&
         std::equal(doc_vectors.data(), doc_vectors.data() + doc_vectors.size(), o.doc_vectors.data());
}

Eigen::VectorXf make_reference_vector(int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("reference vector dimension must be >= 1");
  Rng rng(derive_seed(seed, 0x5265665665637421ULL));
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  } while (v.norm() == 0.0);
  return (v / v.norm()).cast<float>();
}

}  // namespace sdee::embed
