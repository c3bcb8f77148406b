// Copyright 2026 The intentbn Authors
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

#pragma once

// Engine only; service.hpp and cli.hpp pull in networking and are included
// separately.
#include "intentbn/config_io.hpp"
#include "intentbn/counts.hpp"
#include "intentbn/error.hpp"
#include "intentbn/evidence.hpp"
#include "intentbn/graph.hpp"
#include "intentbn/inference.hpp"
#include "intentbn/likert.hpp"
#include "intentbn/network.hpp"
#include "intentbn/scenario.hpp"
#include "intentbn/validation.hpp"
