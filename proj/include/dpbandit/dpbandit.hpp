// Copyright 2026 The dpbandit Authors
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

#pragma once

#include "dpbandit/csv.hpp"
#include "dpbandit/env.hpp"
#include "dpbandit/harness.hpp"
#include "dpbandit/normal.hpp"
#include "dpbandit/parallel.hpp"
#include "dpbandit/policies.hpp"
#include "dpbandit/privacy.hpp"
#include "dpbandit/rng.hpp"
#include "dpbandit/verify.hpp"
