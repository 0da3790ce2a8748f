// Copyright 2026 The camp-opt Authors
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

#ifndef CAMPOPT_CAMPOPT_HPP_
#define CAMPOPT_CAMPOPT_HPP_

// Umbrella header pulling in the whole library.

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/karate.hpp"
#include "campopt/lp.hpp"
#include "campopt/network.hpp"
#include "campopt/oracle.hpp"
#include "campopt/rng.hpp"
#include "campopt/robust.hpp"
#include "campopt/strategies_adversary.hpp"
#include "campopt/strategies_basic.hpp"
#include "campopt/strategies_ccc.hpp"
#include "campopt/strategies_concave.hpp"

#endif  // CAMPOPT_CAMPOPT_HPP_
