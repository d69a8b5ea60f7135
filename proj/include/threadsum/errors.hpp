// Copyright 2026 The threadsum Authors.
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

#ifndef THREADSUM_ERRORS_HPP_
#define THREADSUM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace threadsum {

// Base of every error the library throws. The CLI maps any of these to a
// nonzero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Softmax over a row/column whose entries are all masked out.
class EmptySupportError : public Error {
 public:
  using Error::Error;
};

// Non-finite value found during backward; message names the op.
class NumericError : public Error {
 public:
  using Error::Error;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

// Contextual vector files whose width or token counts do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// NaN loss during training.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace threadsum

#endif  // THREADSUM_ERRORS_HPP_
