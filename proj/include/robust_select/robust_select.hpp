// Copyright 2026 The Authors.
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

#ifndef ROBUST_SELECT_ROBUST_SELECT_HPP_
#define ROBUST_SELECT_ROBUST_SELECT_HPP_

#include "robust_select/action_set.hpp"
#include "robust_select/bench.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/json_io.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/oracle.hpp"
#include "robust_select/scenario.hpp"
#include "robust_select/solvers.hpp"
#include "robust_select/surrogate.hpp"

#endif  // ROBUST_SELECT_ROBUST_SELECT_HPP_
