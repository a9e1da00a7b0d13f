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

#include "sdee/embed/model_io.hpp"

#include <array>
#include <bit>
#include <fstream>

#include "sdee/common/error.hpp"

namespace sdee::embed {
namespace {

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw LoadError("model", 0, std::string("truncated while reading ") + what);
  }
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

void put_string(std::ostream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const char* what) {
  const auto n = get<std::uint32_t>(in, what);
  if (n > (1u << 24)) throw LoadError("model", 0, std::string("implausible string length for ") + what);
  std::string s(n, '\0');
  if (n && !in.read(s.data(), n)) throw LoadError("model", 0, std::string("truncated while reading ") + what);
  return s;
}

void put_matrix(std::ostream& out, const RowMatrixXf& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) put<float>(out, m.data()[i]);
}

RowMatrixXf get_matrix(std::istream& in, std::uint32_t rows, std::uint32_t cols, const char* what) {
  RowMatrixXf m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = get<float>(in, what);
  return m;
}

}  // namespace

void save_model(const SimilarityModel& model, std::ostream& out) {
  out.write("PVAM", 4);
  put<std::uint16_t>(out, kModelFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.vocab.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.doc_vectors.rows()));
  put<std::uint64_t>(out, model.scenario.seed);
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    put_string(out, model.vocab.word(i));
    put<std::uint64_t>(out, model.vocab.count(i));
  }
  put_matrix(out, model.word_vectors);
  put_matrix(out, model.doc_vectors);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.scenario.epochs));
  for (const auto& id : model.doc_ids) put_string(out, id);
}

void save_model(const SimilarityModel& model, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write model " + path.string());
    save_model(model, out);
    if (!out) throw InputError("failed writing model " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

SimilarityModel load_model(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "PVAM") throw LoadError("model", 0, "bad magic, not a model file");
  const auto version = get<std::uint16_t>(in, "version");
  if (version != kModelFormatVersion) {
    throw LoadError("model", 0, "unsupported model format version " + std::to_string(version));
  }
  const auto dim = get<std::uint32_t>(in, "dimension");
  const auto nvocab = get<std::uint32_t>(in, "vocabulary size");
  const auto samples = get<std::uint32_t>(in, "sample count");
  SimilarityModel m;
  m.scenario.vector_size = static_cast<int>(dim);
  m.scenario.training_samples = static_cast<int>(samples);
  m.scenario.seed = get<std::uint64_t>(in, "seed");
  if (dim == 0) throw LoadError("model", 0, "zero dimension");
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  for (std::uint32_t i = 0; i < nvocab; ++i) {
    words.push_back(get_string(in, "vocabulary word"));
    counts.push_back(get<std::uint64_t>(in, "vocabulary count"));
  }
  try {
    m.vocab = Vocabulary(std::move(words), std::move(counts));
  } catch (const InputError& e) {
    throw LoadError("model", 0, e.what());
  }
  m.word_vectors = get_matrix(in, nvocab, dim, "word vectors");
  m.doc_vectors = get_matrix(in, samples, dim, "document vectors");
  m.scenario.epochs = static_cast<int>(get<std::uint32_t>(in, "epochs"));
  for (std::uint32_t i = 0; i < samples; ++i) m.doc_ids.push_back(get_string(in, "document id"));
  return m;
}

SimilarityModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("model not found: " + path.string());
  return load_model(in);
}

}  // namespace sdee::embed
