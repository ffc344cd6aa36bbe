// SPDX-License-Identifier: Apache-2.0
//
// scmimo - space-constrained massive MIMO channel statistics
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCMIMO_SCMIMO_HPP
#define SCMIMO_SCMIMO_HPP

#include "scmimo/analytic.hpp"
#include "scmimo/array_channel.hpp"
#include "scmimo/common.hpp"
#include "scmimo/experiments.hpp"
#include "scmimo/montecarlo.hpp"
#include "scmimo/quadrature.hpp"
#include "scmimo/rng.hpp"

#endif  // SCMIMO_SCMIMO_HPP
