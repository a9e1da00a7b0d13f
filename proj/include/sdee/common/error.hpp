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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sdee {

/// Base class of every domain error raised by the library. The CLI maps these
/// to exit code 1; anything else escaping a subcommand is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// A metric, statistic or effect size that is not defined for the given data
/// (zero variance, empty input, non-positive effort, ...).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  LoadError(std::string table, std::size_t row, const std::string& what)
      : Error("table " + table + ", row " + std::to_string(row) + ": " + what),
        table_(std::move(table)),
        row_(row) {}
  const std::string& table() const noexcept { return table_; }
  std::size_t row() const noexcept { return row_; }

 private:
  std::string table_;
  std::size_t row_;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class OutOfVocabulary : public Error {
 public:
  using Error::Error;
};

class SingularFit : public Error {
 public:
  SingularFit(std::size_t column, const std::string& what)
      : Error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class Divergence : public Error {
 public:
  using Error::Error;
};

/// Invalid request field; `field()` names it for field-level reporting.
class ValidationError : public InputError {
 public:
  ValidationError(std::string field, const std::string& what)
      : InputError(field + ": " + what), field_(std::move(field)), message_(what) {}
  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

}  // namespace sdee
