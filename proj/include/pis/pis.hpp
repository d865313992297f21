/*
 * Copyright 2026 The pis Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "pis/bench.hpp"
#include "pis/composition.hpp"
#include "pis/dot.hpp"
#include "pis/equivalence.hpp"
#include "pis/format.hpp"
#include "pis/generators.hpp"
#include "pis/lts.hpp"
#include "pis/system.hpp"
#include "pis/topology.hpp"
#include "pis/verifier.hpp"
