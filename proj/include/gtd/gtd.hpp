// Copyright 2026 The GTD Evaluation Authors.
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

#include "gtd/ast.hpp"
#include "gtd/construction.hpp"
#include "gtd/dataset.hpp"
#include "gtd/generator.hpp"
#include "gtd/lexicon.hpp"
#include "gtd/metrics.hpp"
#include "gtd/parser.hpp"
#include "gtd/random.hpp"
#include "gtd/realizer.hpp"
#include "gtd/renderer.hpp"
#include "gtd/semantics.hpp"
#include "gtd/worldmodel.hpp"
