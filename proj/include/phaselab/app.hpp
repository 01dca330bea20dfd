// SPDX-License-Identifier: Apache-2.0
//
// phaselab: uniqueness and stability analysis for phase retrieval on finite frames
// Copyright (C) 2026 The phaselab authors
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
// ------------------------------------------------------------------------

#pragma once

#include <ostream>

namespace phaselab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitThreshold = 1;  ///< a configured acceptance threshold was missed
inline constexpr int kExitUsage = 2;      ///< usage, configuration or input error

/// Entry point of the `phaselab` command line; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phaselab
