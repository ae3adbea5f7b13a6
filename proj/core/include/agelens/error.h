// Copyright 2026 The age-lens Authors.
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

#ifndef AGELENS_ERROR_H_
#define AGELENS_ERROR_H_

#include <stdexcept>
#include <string>

namespace agelens {

// Bad or inconsistent user configuration (flags, config files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with input data: unreadable files, empty corpora, bad records.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyCorpusError : public DataError {
 public:
  using DataError::DataError;
};

// Raised when a profile would be built from a review on the held-out side of
// a temporal split.
class LeakageError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace agelens

#endif  // AGELENS_ERROR_H_
