// Copyright 2026 The Selene Authors
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

#ifndef SELENE_ERRORS_HPP_
#define SELENE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace selene {

// Root of every error thrown by the library. Callers that only need to report
// failures can catch this; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node id outside [0, n).
class InvalidNodeError : public Error {
 public:
  using Error::Error;
};

// Invalid hyperparameters or derived quantities (probabilities, caps, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A computation produced NaN or Inf.
class NumericError : public Error {
 public:
  using Error::Error;
};

// API misuse: wrong tape, batch too small, non-deterministic callback.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A metric needs data the graph does not carry (e.g. labels).
class MetricUnavailableError : public Error {
 public:
  using Error::Error;
};

// A metric is mathematically undefined on the given input (e.g. no edges).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace selene

#endif  // SELENE_ERRORS_HPP_
