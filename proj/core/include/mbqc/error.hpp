// Copyright 2026 The mbqc-correlator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mbqc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A forced measurement outcome disagrees with a deterministic one.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is outside what a backend or plan supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (imaginary residue, positivity, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed text, JSON, or parameter values.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A size cap (dense qubit cap, ensemble size) would be exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbqc
