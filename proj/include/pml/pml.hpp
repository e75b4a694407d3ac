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
//
// Umbrella header for the pointwise-maximal-leakage audit library.
#ifndef PML_PML_HPP_
#define PML_PML_HPP_

#include "pml/adversary.hpp"
#include "pml/channel_ops.hpp"
#include "pml/comparisons.hpp"
#include "pml/errors.hpp"
#include "pml/fixtures.hpp"
#include "pml/guarantees.hpp"
#include "pml/leakage.hpp"
#include "pml/model.hpp"
#include "pml/oracles.hpp"
#include "pml/scalar.hpp"

#endif  // PML_PML_HPP_
