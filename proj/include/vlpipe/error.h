// Copyright 2026 The vlpipe Authors.
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

#ifndef VLPIPE_ERROR_H_
#define VLPIPE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlpipe {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration violates one of its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Inputs are well-formed but too small or empty to compute anything.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Shapes, counts or ids disagree between inputs that must line up.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// An internal invariant of a computed structure does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Iterative procedure hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Malformed text input. `offset` is the byte offset of the offending
// construct within the parsed string (or line number for line formats).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset);

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace vlpipe

#endif  // VLPIPE_ERROR_H_
