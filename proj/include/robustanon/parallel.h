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

#ifndef ROBUSTANON_PARALLEL_H_
#define ROBUSTANON_PARALLEL_H_

namespace robustanon {

// kParallel runs independent per-group / per-candidate / per-query work on
// OpenMP threads. Both modes produce identical results.
enum class ExecutionMode { kSerial, kParallel };

// threads <= 0 restores the default: ROBUSTANON_THREADS if set, else the
// OpenMP runtime default.
void SetThreadCount(int threads);
int ThreadCount();

}  // namespace robustanon

#endif  // ROBUSTANON_PARALLEL_H_
