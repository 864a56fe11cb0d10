// Copyright 2026 The DQJ Authors
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

#include <stdexcept>
#include <string>

namespace dqj {

// Error hierarchy. The CLI maps the three families onto exit codes:
// InvalidInput -> 2, NumericalError -> 3, IoError -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidInterval : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidOrder : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateWindow : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class TruncationTooSmall : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Squared norm at or below the annihilation threshold.
class NormUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateNormalization : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AllAnnihilated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotADensityMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dqj
