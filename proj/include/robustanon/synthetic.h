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

#ifndef ROBUSTANON_SYNTHETIC_H_
#define ROBUSTANON_SYNTHETIC_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "robustanon/robustness.h"
#include "robustanon/table.h"

namespace robustanon {

// A seeded table whose sensitive value depends on the QI values. Attributes
// are Q1..Qk with values "Qa_i"; the sensitive attribute is "S" with values
// s0..s{m-1}, of which s0 and s1 are rare. Row ids are 1..rows.
struct SyntheticOptions {
  int64_t rows = 1000;
  int qi_attributes = 4;
  int sensitive_values = 10;
  uint64_t seed = 1;
};

absl::StatusOr<RawTable> GenerateSyntheticTable(const SyntheticOptions& options);

// The rare values s0 and s1, protected jointly.
SensitiveTargets SyntheticTargets();

}  // namespace robustanon

#endif  // ROBUSTANON_SYNTHETIC_H_
