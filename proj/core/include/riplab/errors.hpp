// Copyright 2026 The riplab Authors.
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

#ifndef RIPLAB_ERRORS_HPP_
#define RIPLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace riplab {

// Precondition violated by the caller (bad dimension, out-of-range parameter).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter outside the domain where a closed-form constant is meaningful.
class DomainError : public InvalidParameter {
 public:
  explicit DomainError(const std::string& what) : InvalidParameter(what) {}
};

// Exhaustive computation requested beyond the supported problem size.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite intermediate or failed convergence.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riplab

#endif  // RIPLAB_ERRORS_HPP_
