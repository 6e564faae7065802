// Copyright 2026 The jaif Authors. All Rights Reserved.
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

#ifndef JAIF_ERROR_HPP_
#define JAIF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace jaif {

// Violated preconditions and bad configuration. The CLI maps these to exit 2.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable, corrupt or otherwise unusable data. The CLI maps these to exit 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A codec cannot provide what a caller asked for (latents, rate split).
class UnsupportedError : public ContractError {
 public:
  using ContractError::ContractError;
};

// External codec process failure: carries the exit status and a stderr excerpt.
class CodecFailure : public DataError {
 public:
  CodecFailure(const std::string& what, int status, std::string stderr_excerpt)
      : DataError(what), status_(status), stderr_(std::move(stderr_excerpt)) {}
  int status() const { return status_; }
  const std::string& stderr_excerpt() const { return stderr_; }

 private:
  int status_;
  std::string stderr_;
};

}  // namespace jaif

#endif  // JAIF_ERROR_HPP_
