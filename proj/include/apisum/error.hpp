// Copyright 2026 The apisum Authors.
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

#ifndef APISUM_ERROR_HPP_
#define APISUM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace apisum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed a value outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data could not be parsed (dump rows, JSON artifacts, config files).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A statistical routine received a sample it cannot analyse
/// (zero variance, constant shift).
class DegenerateSampleError : public Error {
 public:
  DegenerateSampleError(const std::string& what, double value = 0.0)
      : Error(what), value_(value) {}

  /// For a constant paired shift this carries the mean difference.
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class InsufficientCorpusError : public Error {
 public:
  using Error::Error;
};

/// The model service could not be reached (refused, timeout, 503).
class ServiceUnavailableError : public Error {
 public:
  using Error::Error;
};

/// The model service answered but reported that generation failed.
class GenerationFailedError : public Error {
 public:
  GenerationFailedError(const std::string& what, int status)
      : Error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// The model service answered with something that is not the wire protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace apisum

#endif  // APISUM_ERROR_HPP_
