// Copyright 2026 The PML Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef PML_ERRORS_HPP_
#define PML_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include "pml/scalar.hpp"

namespace pml {

// Input/shape problems: the model or the requested parameters are malformed.
// The CLI maps these to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problems arising while computing on a well-formed model.  Exit code 2.
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonStochasticRow : ValidationError {
  using ValidationError::ValidationError;
};
struct NegativeEntry : ValidationError {
  using ValidationError::ValidationError;
};
struct ShapeMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptySupport : ValidationError {
  using ValidationError::ValidationError;
};
struct OutOfSupport : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidEpsilon : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidDelta : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidZeta : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptyEvent : ValidationError {
  using ValidationError::ValidationError;
};
struct ZeroProbabilityEvent : ValidationError {
  using ValidationError::ValidationError;
};
struct MissingStage : ValidationError {
  using ValidationError::ValidationError;
};
struct UnknownF : ValidationError {
  using ValidationError::ValidationError;
};
struct InfiniteInput : ValidationError {
  using ValidationError::ValidationError;
};

struct ZeroBaselineGain : ComputationError {
  using ComputationError::ComputationError;
};
struct BudgetExceeded : ComputationError {
  using ComputationError::ComputationError;
};

// Thrown when the exhaustive event enumeration would be too large; carries the
// sufficient (but not tight) analytic fallback bound.
struct TooLargeForBruteForce : ComputationError {
  TooLargeForBruteForce(const std::string& what, Scalar fallback)
      : ComputationError(what), fallback_bound(std::move(fallback)) {}
  Scalar fallback_bound;
};

}  // namespace pml

#endif  // PML_ERRORS_HPP_
