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

#include "robustanon/art.h"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

namespace {

absl::Status CheckCovered(const RawTable& table, const BoundDistribution& k,
                          absl::Span<const size_t> rows) {
  for (size_t row : rows) {
    if (k.class_of(row) == BoundDistribution::kNoClass) {
      return absl::FailedPreconditionError(absl::StrCat(
          "row ", table.row(row).row_id, " has no signature entry for attribute set ",
          k.attribute_set().ToString()));
    }
  }
  return absl::OkStatus();
}

// Groups with per-(attribute set, protected value) summaries. A "pair" p
// indexes attribute set p / |P| and protected value p % |P|.
class Engine {
 public:
  struct Group {
    int64_t gid = 0;
    std::vector<size_t> rows;
    std::vector<int> pcount;  // members holding each protected value
    int ptotal = 0;
    std::vector<size_t> min_row, max_row;  // per pair
    std::vector<double> fmin, fmax;
    bool alive = true;
  };

  Engine(const RawTable& table, absl::Span<const BoundDistribution> knowledge,
         std::vector<int32_t> protected_codes, bool as_set)
      : table_(table),
        knowledge_(knowledge),
        protected_(std::move(protected_codes)),
        as_set_(as_set),
        np_(protected_.size()),
        pairs_(knowledge.size() * np_),
        protected_index_(table.sensitive_domain().size(), -1) {
    for (size_t i = 0; i < np_; ++i) protected_index_[protected_[i]] = static_cast<int>(i);
  }

  const RawTable& table() const { return table_; }
  size_t num_protected() const { return np_; }
  int32_t protected_code(size_t xi) const { return protected_[xi]; }
  int ProtectedIndex(int32_t code) const { return protected_index_[code]; }
  std::vector<Group>& groups() { return groups_; }
  const std::vector<Group>& groups() const { return groups_; }

  const Rational& F(size_t pair, size_t row) const {
    const BoundDistribution& k = knowledge_[pair / np_];
    return k.probability(k.class_of(row), protected_[pair % np_]);
  }
  double Fd(size_t pair, size_t row) const {
    const BoundDistribution& k = knowledge_[pair / np_];
    return k.probability_double(k.class_of(row), protected_[pair % np_]);
  }

  size_t AddGroup(int64_t gid, std::vector<size_t> rows) {
    Group g;
    g.gid = gid;
    g.rows = std::move(rows);
    Recompute(g);
    groups_.push_back(std::move(g));
    return groups_.size() - 1;
  }

  void Recompute(Group& g) const {
    g.pcount.assign(np_, 0);
    g.ptotal = 0;
    g.min_row.assign(pairs_, 0);
    g.max_row.assign(pairs_, 0);
    g.fmin.assign(pairs_, 0);
    g.fmax.assign(pairs_, 0);
    for (size_t row : g.rows) {
      int xi = protected_index_[table_.sensitive_code(row)];
      if (xi >= 0) {
        ++g.pcount[xi];
        ++g.ptotal;
      }
    }
    if (g.rows.empty()) return;
    for (size_t p = 0; p < pairs_; ++p) {
      size_t lo = g.rows[0], hi = g.rows[0];
      for (size_t row : g.rows) {
        if (F(p, row) < F(p, lo)) lo = row;
        if (F(p, row) > F(p, hi)) hi = row;
      }
      SetExtremes(g, p, lo, hi);
    }
  }

  void Absorb(Group& into, Group& from) const {
    for (size_t p = 0; p < pairs_; ++p) {
      size_t lo = into.min_row[p], hi = into.max_row[p];
      if (F(p, from.min_row[p]) < F(p, lo)) lo = from.min_row[p];
      if (F(p, from.max_row[p]) > F(p, hi)) hi = from.max_row[p];
      SetExtremes(into, p, lo, hi);
    }
    for (size_t xi = 0; xi < np_; ++xi) into.pcount[xi] += from.pcount[xi];
    into.ptotal += from.ptotal;
    into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
    from.rows.clear();
    from.alive = false;
  }

  // Protected values a merge partner of `l` must not hold.
  std::vector<char> ForbiddenFor(const Group& l) const {
    std::vector<char> mask(np_, 0);
    for (size_t xi = 0; xi < np_; ++xi) {
      mask[xi] = (as_set_ && l.ptotal > 0) || l.pcount[xi] > 0;
    }
    return mask;
  }

  bool Eligible(const Group& c, const std::vector<char>& forbidden) const {
    for (size_t xi = 0; xi < np_; ++xi) {
      if (forbidden[xi] && c.pcount[xi] > 0) return false;
    }
    return true;
  }

  bool Feasible(const Group& l, const Group& c) const {
    for (size_t p = 0; p < pairs_; ++p) {
      const size_t xi = p % np_;
      if (l.pcount[xi] + c.pcount[xi] == 0) continue;
      const double lo = std::min(l.fmin[p], c.fmin[p]);
      const double hi = std::max(l.fmax[p], c.fmax[p]);
      if (lo == 0 && hi > 0) return false;
    }
    return true;
  }

  double DistanceDouble(const Group& l, const Group& c) const {
    double d = 0;
    for (size_t p = 0; p < pairs_; ++p) {
      const double before = l.fmax[p] - l.fmin[p];
      const double after =
          std::max(l.fmax[p], c.fmax[p]) - std::min(l.fmin[p], c.fmin[p]);
      d += std::max(after - before, 0.0);
    }
    return d;
  }

  Rational DistanceExact(const Group& l, const Group& c) const {
    Rational d = 0;
    for (size_t p = 0; p < pairs_; ++p) {
      const Rational& lmin = F(p, l.min_row[p]);
      const Rational& lmax = F(p, l.max_row[p]);
      const Rational& cmin = F(p, c.min_row[p]);
      const Rational& cmax = F(p, c.max_row[p]);
      Rational increase = (lmax < cmax ? cmax : lmax) - (cmin < lmin ? cmin : lmin) -
                          (lmax - lmin);
      if (sgn(increase) > 0) d += increase;
    }
    return d;
  }

  // Double screening is safe: each of the <= pairs_ terms carries a rounding
  // error far below kScreenSlack, so the exact minimum is always screened in.
  std::optional<std::pair<size_t, Rational>> Closest(
      size_t l, absl::Span<const size_t> pool, const std::vector<char>& forbidden,
      bool require_feasible, ExecutionMode mode) const {
    constexpr double kScreenSlack = 1e-9;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const Group& lg = groups_[l];
    std::vector<double> dist(pool.size(), kInf);
    const int64_t count = static_cast<int64_t>(pool.size());
#pragma omp parallel for schedule(static) if (mode == ExecutionMode::kParallel && count > 256)
    for (int64_t i = 0; i < count; ++i) {
      const Group& c = groups_[pool[i]];
      if (pool[i] == l || !c.alive || !Eligible(c, forbidden)) continue;
      if (require_feasible && !Feasible(lg, c)) continue;
      dist[i] = DistanceDouble(lg, c);
    }
    const double best_double = *std::min_element(dist.begin(), dist.end());
    if (best_double == kInf) return std::nullopt;
    std::optional<std::pair<size_t, Rational>> best;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (dist[i] > best_double + kScreenSlack) continue;
      const Group& c = groups_[pool[i]];
      Rational d = DistanceExact(lg, c);
      if (!best) {
        best.emplace(pool[i], std::move(d));
        continue;
      }
      const Group& b = groups_[best->first];
      if (d < best->second ||
          (d == best->second && (c.rows.size() < b.rows.size() ||
                                 (c.rows.size() == b.rows.size() && c.gid < b.gid)))) {
        best.emplace(pool[i], std::move(d));
      }
    }
    return best;
  }

 private:
  void SetExtremes(Group& g, size_t p, size_t lo, size_t hi) const {
    g.min_row[p] = lo;
    g.max_row[p] = hi;
    g.fmin[p] = Fd(p, lo);
    g.fmax[p] = Fd(p, hi);
  }

  const RawTable& table_;
  absl::Span<const BoundDistribution> knowledge_;
  std::vector<int32_t> protected_;
  bool as_set_;
  size_t np_;
  size_t pairs_;
  std::vector<int> protected_index_;
  std::vector<Group> groups_;
};

class ArtRun {
 public:
  ArtRun(const RawTable& table, absl::Span<const BoundDistribution> knowledge,
         std::vector<int32_t> protected_codes, const ArtConfig& config)
      : engine_(table, knowledge, std::move(protected_codes), config.targets.as_set),
        knowledge_(knowledge),
        config_(config),
        threshold_(1 / config.r) {}

  absl::Status Run() {
    const RawTable& t = engine_.table();
    for (size_t row = 0; row < t.size(); ++row) {
      alive_.push_back(engine_.AddGroup(static_cast<int64_t>(row) + 1, {row}));
    }
    for (size_t g = 0; g < engine_.groups().size(); ++g) {
      if (absl::Status s = MergeStep(g); !s.ok()) return s;
    }
    return Audit();
  }

  std::vector<MergeTraceStep>& trace() { return trace_; }
  std::vector<SuppressedRow>& suppressed() { return suppressed_; }
  int64_t guard_checks() const { return guard_checks_; }
  const std::vector<size_t>& alive() const { return alive_; }
  const Engine& engine() const { return engine_; }

 private:
  struct Evaluation {
    std::vector<char> failing;     // per protected value
    std::vector<char> infeasible;  // per protected value
    int64_t expected_min_size = 0;
    std::string infeasible_reason;
  };

  Evaluation Evaluate(const Engine::Group& g) const {
    const size_t np = engine_.num_protected();
    Evaluation ev{std::vector<char>(np, 0), std::vector<char>(np, 0), 0, ""};
    const int64_t n = static_cast<int64_t>(g.rows.size());
    for (size_t a = 0; a < knowledge_.size(); ++a) {
      for (size_t xi = 0; xi < np; ++xi) {
        if (g.pcount[xi] == 0) continue;
        const size_t p = a * np + xi;
        const std::string& name =
            engine_.table().sensitive_domain()[engine_.protected_code(xi)];
        const std::string& attrs = knowledge_[a].attribute_set().ToString();
        if (g.pcount[xi] > 1 || (config_.targets.as_set && g.ptotal > 1)) {
          ev.infeasible[xi] = 1;
          ev.infeasible_reason = absl::StrCat("'", name, "' occurs more than once");
          continue;
        }
        const Rational& fmax = engine_.F(p, g.max_row[p]);
        const Rational& fmin = engine_.F(p, g.min_row[p]);
        if (sgn(fmax) == 0) continue;
        const Rational delta = fmax - fmin;
        if (!BoundHolds(n, 1, config_.r, fmax, delta)) ev.failing[xi] = 1;
        if (sgn(fmin) == 0 || (fmax == 1 && sgn(delta) != 0)) {
          ev.infeasible[xi] = 1;
          ev.infeasible_reason = absl::StrCat(
              "no group size satisfies the bound for '", name, "' under ", attrs);
          continue;
        }
        int64_t n0;
        if (fmax == 1) {
          n0 = Ceil(config_.r).get_si();
        } else {
          absl::StatusOr<int64_t> size = ExpectedMinSize(delta, fmax, config_.r);
          n0 = size.ok() ? *size : std::numeric_limits<int64_t>::max();
        }
        ev.expected_min_size = std::max(ev.expected_min_size, n0);
      }
    }
    return ev;
  }

  // Per protected value: does some member's exact posterior exceed 1/r
  // under some attribute set?
  absl::StatusOr<std::vector<char>> ExactCheck(const Engine::Group& g) const {
    const size_t np = engine_.num_protected();
    std::vector<absl::StatusOr<GroupLinkage>> linkages(knowledge_.size(),
                                                       absl::UnknownError(""));
    const int64_t count = static_cast<int64_t>(knowledge_.size());
#pragma omp parallel for schedule(dynamic) if (config_.mode == ExecutionMode::kParallel)
    for (int64_t a = 0; a < count; ++a) {
      linkages[a] = internal::LinkageByDp(engine_.table(), g.rows, knowledge_[a],
                                          config_.world_cap, g.gid);
    }
    std::vector<char> failing(np, 0);
    for (const auto& linkage : linkages) {
      if (!linkage.ok()) return linkage.status();
      for (size_t xi = 0; xi < np; ++xi) {
        if (g.pcount[xi] == 0) continue;
        const int v = linkage->ValueIndex(engine_.protected_code(xi));
        BigInt top = 0;
        for (size_t m = 0; m < g.rows.size(); ++m) {
          top = std::max(top, linkage->numerator(m, v));
        }
        if (Rational(top, linkage->normalizer()) > threshold_) failing[xi] = 1;
      }
    }
    return failing;
  }

  absl::Status MergeStep(size_t gi) {
    while (true) {
      Engine::Group& l = engine_.groups()[gi];
      if (!l.alive || l.ptotal == 0) return absl::OkStatus();
      Evaluation ev = Evaluate(l);
      if (Any(ev.infeasible)) {
        Suppress(gi, ev.infeasible, ev.infeasible_reason);
        continue;
      }
      std::vector<char> failing = ev.failing;
      int64_t expected = ev.expected_min_size;
      const char* why = "the bound condition cannot be met with the remaining groups";
      if (!Any(failing)) {
        if (!config_.exact_guard) return absl::OkStatus();
        ++guard_checks_;
        absl::StatusOr<std::vector<char>> exact = ExactCheck(l);
        if (!exact.ok()) return exact.status();
        if (!Any(*exact)) return absl::OkStatus();
        failing = *std::move(exact);
        expected = 0;
        why = "the exact posterior stays above 1/r with the remaining groups";
      }
      std::optional<std::pair<size_t, Rational>> closest = engine_.Closest(
          gi, alive_, engine_.ForbiddenFor(l), /*require_feasible=*/true, config_.mode);
      if (!closest) {
        Suppress(gi, failing, why);
        continue;
      }
      Engine::Group& absorbed = engine_.groups()[closest->first];
      MergeTraceStep step;
      step.gid = l.gid;
      step.absorbed_gid = absorbed.gid;
      step.expected_min_size = expected;
      step.distance = std::move(closest->second);
      engine_.Absorb(l, absorbed);
      step.size_after = l.rows.size();
      trace_.push_back(std::move(step));
      Kill(closest->first);
    }
  }

  // Removes the members holding a flagged protected value.
  void Suppress(size_t gi, const std::vector<char>& values, absl::string_view reason) {
    Engine::Group& g = engine_.groups()[gi];
    const RawTable& t = engine_.table();
    std::vector<size_t> kept;
    for (size_t row : g.rows) {
      const int xi = engine_.ProtectedIndex(t.sensitive_code(row));
      if (xi >= 0 && values[xi]) {
        suppressed_.push_back({t.row(row).row_id, std::string(reason)});
      } else {
        kept.push_back(row);
      }
    }
    g.rows = std::move(kept);
    engine_.Recompute(g);
    if (g.rows.empty()) {
      g.alive = false;
      Kill(gi);
    }
  }

  void Kill(size_t gi) {
    auto it = std::lower_bound(alive_.begin(), alive_.end(), gi);
    if (it != alive_.end() && *it == gi) alive_.erase(it);
  }

  // Every published group must meet the bound (and the guard, when on).
  absl::Status Audit() const {
    for (size_t gi : alive_) {
      const Engine::Group& g = engine_.groups()[gi];
      if (g.ptotal == 0) continue;
      Evaluation ev = Evaluate(g);
      if (Any(ev.failing) || Any(ev.infeasible)) {
        return absl::InternalError(
            absl::StrCat("group ", g.gid, " violates the bound after merging"));
      }
    }
    return absl::OkStatus();
  }

  static bool Any(const std::vector<char>& v) {
    return std::find(v.begin(), v.end(), 1) != v.end();
  }

  Engine engine_;
  absl::Span<const BoundDistribution> knowledge_;
  const ArtConfig& config_;
  Rational threshold_;
  std::vector<size_t> alive_;
  std::vector<MergeTraceStep> trace_;
  std::vector<SuppressedRow> suppressed_;
  int64_t guard_checks_ = 0;
};

absl::StatusOr<std::vector<size_t>> RowIndices(const RawTable& table, const AGroup& g) {
  std::vector<size_t> rows;
  for (int64_t id : g.member_row_ids) {
    std::optional<size_t> idx = table.IndexOf(id);
    if (!idx) {
      return absl::InvalidArgumentError(
          absl::StrCat("group ", g.gid, " references unknown row ", id));
    }
    rows.push_back(*idx);
  }
  return rows;
}

absl::StatusOr<AGroup> Union(const RawTable& table, const AGroup& a, const AGroup& b) {
  std::vector<int64_t> ids = a.member_row_ids;
  ids.insert(ids.end(), b.member_row_ids.begin(), b.member_row_ids.end());
  return MakeGroup(table, a.gid, std::move(ids));
}

}  // namespace

absl::StatusOr<MergeDistance> ComputeMergeDistance(
    const RawTable& table, const AGroup& from, const AGroup& to,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes) {
  absl::StatusOr<AGroup> merged = Union(table, from, to);
  if (!merged.ok()) return merged.status();
  MergeDistance out{from.gid, to.gid, Rational(0)};
  for (const BoundDistribution& k : knowledge) {
    for (int32_t code : protected_codes) {
      const std::string& x = table.sensitive_domain()[code];
      absl::StatusOr<GroupProfile> before = ProfileGroup(table, from, k, x);
      if (!before.ok()) return before.status();
      absl::StatusOr<GroupProfile> after = ProfileGroup(table, *merged, k, x);
      if (!after.ok()) return after.status();
      Rational increase = after->delta - before->delta;
      if (sgn(increase) > 0) out.d += increase;
    }
  }
  return out;
}

absl::StatusOr<std::optional<MergeDistance>> FindClosest(
    const RawTable& table, const AGroup& l, absl::Span<const AGroup> pool,
    absl::Span<const std::string> forbidden,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes, const ClosestOptions& options) {
  std::optional<MergeDistance> best;
  size_t best_size = 0;
  for (const AGroup& c : pool) {
    bool blocked = false;
    for (const std::string& v : c.sensitive_multiset) {
      blocked |= std::find(forbidden.begin(), forbidden.end(), v) != forbidden.end();
    }
    if (blocked) continue;
    absl::StatusOr<AGroup> merged = Union(table, l, c);
    if (!merged.ok()) return merged.status();
    if (options.require_feasible) {
      bool feasible = true;
      for (const BoundDistribution& k : knowledge) {
        for (int32_t code : protected_codes) {
          const std::string& x = table.sensitive_domain()[code];
          if (std::find(merged->sensitive_multiset.begin(),
                        merged->sensitive_multiset.end(),
                        x) == merged->sensitive_multiset.end()) {
            continue;
          }
          absl::StatusOr<GroupProfile> p = ProfileGroup(table, *merged, k, x);
          if (!p.ok()) return p.status();
          if (sgn(p->f_max) > 0 && p->delta == p->f_max) feasible = false;
        }
      }
      if (!feasible) continue;
    }
    absl::StatusOr<MergeDistance> d =
        ComputeMergeDistance(table, l, c, knowledge, protected_codes);
    if (!d.ok()) return d.status();
    const size_t size = merged->size();
    if (!best || d->d < best->d ||
        (d->d == best->d && (size < best_size || (size == best_size && c.gid < best->to_gid)))) {
      best = *std::move(d);
      best_size = size;
    }
  }
  return best;
}

absl::StatusOr<std::optional<MergeDistance>> FindClosestScreened(
    const RawTable& table, const AGroup& l, absl::Span<const AGroup> pool,
    absl::Span<const std::string> forbidden,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes, const ClosestOptions& options) {
  std::vector<int32_t> codes(protected_codes.begin(), protected_codes.end());
  std::sort(codes.begin(), codes.end());
  Engine engine(table, knowledge, codes, /*as_set=*/false);
  std::vector<char> mask(codes.size(), 0);
  for (const std::string& v : forbidden) {
    std::optional<int32_t> code = table.SensitiveCode(v);
    int xi = code ? engine.ProtectedIndex(*code) : -1;
    if (xi < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("forbidden value '", v, "' is not protected"));
    }
    mask[xi] = 1;
  }
  std::vector<size_t> indices;
  for (size_t i = 0; i <= pool.size(); ++i) {
    const AGroup& g = i == 0 ? l : pool[i - 1];
    absl::StatusOr<std::vector<size_t>> rows = RowIndices(table, g);
    if (!rows.ok()) return rows.status();
    for (const BoundDistribution& k : knowledge) {
      if (absl::Status s = CheckCovered(table, k, *rows); !s.ok()) return s;
    }
    indices.push_back(engine.AddGroup(g.gid, *std::move(rows)));
  }
  absl::Span<const size_t> candidates = absl::MakeConstSpan(indices).subspan(1);
  auto best = engine.Closest(0, candidates, mask, options.require_feasible, options.mode);
  if (!best) return std::optional<MergeDistance>();
  return std::optional<MergeDistance>(
      MergeDistance{l.gid, pool[best->first - 1].gid, std::move(best->second)});
}

absl::StatusOr<ArtResult> ArtAnonymize(std::shared_ptr<const RawTable> table,
                                       const ArtConfig& config) {
  if (table == nullptr) return absl::InvalidArgumentError("null table");
  absl::StatusOr<std::vector<AttributeSet>> sets =
      EnumerateAttributeSets(*table, config.max_attrset_size, config.min_support);
  if (!sets.ok()) return sets.status();
  if (sets->empty()) {
    return absl::InvalidArgumentError("min_support prunes every attribute set");
  }
  absl::StatusOr<std::vector<BoundDistribution>> knowledge =
      DeriveKnowledge(*table, *sets);
  if (!knowledge.ok()) return knowledge.status();
  return ArtAnonymize(std::move(table), *knowledge, config);
}

absl::StatusOr<ArtResult> ArtAnonymize(std::shared_ptr<const RawTable> table,
                                       absl::Span<const BoundDistribution> knowledge,
                                       const ArtConfig& config) {
  if (table == nullptr) return absl::InvalidArgumentError("null table");
  if (table->empty()) return absl::InvalidArgumentError("table is empty");
  if (config.r <= 1) return absl::InvalidArgumentError("r must exceed 1");
  if (knowledge.empty()) return absl::InvalidArgumentError("no background knowledge given");
  std::vector<size_t> all(table->size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (const BoundDistribution& k : knowledge) {
    if (absl::Status s = CheckCovered(*table, k, all); !s.ok()) return s;
  }
  absl::StatusOr<std::vector<int32_t>> protected_codes =
      ResolveProtectedCodes(*table, config.targets);
  if (!protected_codes.ok()) return protected_codes.status();

  ArtRun run(*table, knowledge, *std::move(protected_codes), config);
  if (absl::Status s = run.Run(); !s.ok()) return s;

  std::vector<AGroup> groups;
  int64_t next_gid = 1;
  for (size_t gi : run.alive()) {
    const Engine::Group& g = run.engine().groups()[gi];
    std::vector<int64_t> ids;
    for (size_t row : g.rows) ids.push_back(table->row(row).row_id);
    absl::StatusOr<AGroup> group = MakeGroup(*table, next_gid++, std::move(ids));
    if (!group.ok()) return group.status();
    groups.push_back(*std::move(group));
  }
  std::vector<int64_t> suppressed_ids;
  for (const SuppressedRow& s : run.suppressed()) suppressed_ids.push_back(s.row_id);
  absl::StatusOr<AnonymizedDataset> dataset =
      AnonymizedDataset::Create(table, std::move(groups), std::move(suppressed_ids));
  if (!dataset.ok()) return dataset.status();
  std::sort(run.suppressed().begin(), run.suppressed().end(),
            [](const SuppressedRow& a, const SuppressedRow& b) { return a.row_id < b.row_id; });
  ArtResult result{*std::move(dataset), std::move(run.suppressed()), std::move(run.trace()),
                   {}, run.guard_checks()};
  for (const BoundDistribution& k : knowledge) result.attribute_sets.push_back(k.attribute_set());
  return result;
}

}  // namespace robustanon
