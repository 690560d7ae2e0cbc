// Copyright 2026 The tlcalc Authors
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

#include "tlcalc/bases.hpp"
#include "tlcalc/complex_matrix.hpp"
#include "tlcalc/diagram.hpp"
#include "tlcalc/dsl.hpp"
#include "tlcalc/errors.hpp"
#include "tlcalc/evaluate.hpp"
#include "tlcalc/protocols.hpp"
#include "tlcalc/random.hpp"
#include "tlcalc/registry.hpp"
#include "tlcalc/rewrite.hpp"
