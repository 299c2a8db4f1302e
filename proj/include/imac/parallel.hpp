//*****************************************************************************
// Copyright 2026 The imac-sim Authors
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
//*****************************************************************************

#pragma once

#include <cstddef>
#include <functional>

namespace imac {

// Worker count: IMAC_SIM_THREADS when set and positive, otherwise the
// hardware concurrency (0 in the variable also means auto).
[[nodiscard]] unsigned thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
// Each index is handled exactly once, in no particular order; callers write
// into per-index slots and merge afterwards so results do not depend on the
// thread count. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace imac
