// Copyright 2026 The sigev Authors
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

#include "sigev/analysis.hpp"
#include "sigev/beliefs.hpp"
#include "sigev/emit.hpp"
#include "sigev/equilibrium_solver.hpp"
#include "sigev/error.hpp"
#include "sigev/expected_utility.hpp"
#include "sigev/game_model.hpp"
#include "sigev/regimes.hpp"
#include "sigev/scenario.hpp"
#include "sigev/verifier.hpp"
