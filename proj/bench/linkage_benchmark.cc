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

#include <memory>
#include <vector>

#include "absl/strings/str_cat.h"
#include "benchmark/benchmark.h"
#include "robustanon/art.h"
#include "robustanon/distribution.h"
#include "robustanon/parallel.h"
#include "robustanon/possible_worlds.h"
#include "robustanon/robustness.h"
#include "robustanon/synthetic.h"

namespace robustanon {
namespace {

struct Fixture {
  std::shared_ptr<const RawTable> table;
  std::vector<BoundDistribution> knowledge;
  ArtResult art;
};

const Fixture& SyntheticFixture() {
  static const Fixture* fixture = [] {
    auto table = std::make_shared<const RawTable>(*GenerateSyntheticTable({}));
    ArtConfig config;
    config.r = 10;
    config.targets = SyntheticTargets();
    ArtResult art = *ArtAnonymize(table, config);
    std::vector<BoundDistribution> knowledge = *DeriveKnowledge(*table, art.attribute_sets);
    return new Fixture{table, std::move(knowledge), std::move(art)};
  }();
  return *fixture;
}

ExecutionMode Mode(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionMode::kSerial : ExecutionMode::kParallel;
}

void BM_Audit(benchmark::State& state) {
  const Fixture& f = SyntheticFixture();
  VerifyOptions options;
  options.mode = Mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        VerifyRRobustness(f.art.dataset, f.knowledge, 10, SyntheticTargets(), options));
  }
}
BENCHMARK(BM_Audit)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Art(benchmark::State& state) {
  const Fixture& f = SyntheticFixture();
  ArtConfig config;
  config.r = state.range(1);
  config.targets = SyntheticTargets();
  config.mode = Mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(ArtAnonymize(f.table, f.knowledge, config));
}
BENCHMARK(BM_Art)
    ->ArgsProduct({{0, 1}, {2, 10}})
    ->ArgNames({"parallel", "r"})
    ->Unit(benchmark::kMillisecond);

// Exact linkage of the largest published group by the dynamic program.
void BM_GroupLinkage(benchmark::State& state) {
  const Fixture& f = SyntheticFixture();
  const AGroup* largest = &f.art.dataset.groups()[0];
  for (const AGroup& g : f.art.dataset.groups()) {
    if (g.size() > largest->size()) largest = &g;
  }
  std::vector<size_t> rows;
  for (int64_t id : largest->member_row_ids) rows.push_back(*f.table->IndexOf(id));
  for (auto _ : state) {
    benchmark::DoNotOptimize(internal::LinkageByDp(*f.table, rows, f.knowledge[0],
                                                   kDefaultWorldCap, largest->gid));
  }
  state.SetLabel(absl::StrCat("group size ", largest->size()));
}
BENCHMARK(BM_GroupLinkage)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace robustanon

BENCHMARK_MAIN();
