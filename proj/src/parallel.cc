//
// Copyright 2026 The RobustAnon Authors
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
//

#include "robustanon/parallel.h"

#include <omp.h>

#include <cstdlib>

#include "absl/strings/numbers.h"

namespace robustanon {

namespace {

int DefaultThreads() {
  if (const char* env = std::getenv("ROBUSTANON_THREADS")) {
    int n;
    if (absl::SimpleAtoi(env, &n) && n > 0) return n;
  }
  return omp_get_num_procs();
}

}  // namespace

void SetThreadCount(int threads) {
  omp_set_num_threads(threads > 0 ? threads : DefaultThreads());
}

int ThreadCount() { return omp_get_max_threads(); }

}  // namespace robustanon
