// Copyright 2026 The Thermoforge Authors.
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

namespace thermoforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or hyperparameter passed to an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this model family (e.g. importances of an SVM).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Problems with input data. The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public DataError {
 public:
  SchemaError(const std::string& column, const std::string& what)
      : DataError(what), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : DataError(what), row_(row), column_(std::move(column)) {}
  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

/// Malformed run configuration. `path()` is a JSON pointer to the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Non-finite loss during training. The CLI maps these to exit code 3.
class DivergenceError : public Error {
 public:
  DivergenceError(long index, const std::string& what) : Error(what), index_(index) {}
  /// Batch index (for a single gradient evaluation) or epoch (for a training loop).
  long index() const { return index_; }

 private:
  long index_;
};

}  // namespace thermoforge
