// Copyright 2026 The qmarkov Authors
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

#include "qmc/error.hpp"
#include "qmc/options.hpp"
#include "qmc/linalg.hpp"
#include "qmc/kraus.hpp"
#include "qmc/spectral.hpp"
#include "qmc/output_states.hpp"
#include "qmc/equivalence.hpp"
#include "qmc/covariance.hpp"
#include "qmc/param_family.hpp"
#include "qmc/qfi.hpp"
#include "qmc/parallel.hpp"
#include "qmc/lan.hpp"
#include "qmc/gram.hpp"
