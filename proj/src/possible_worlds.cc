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

#include "robustanon/possible_worlds.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

Rational GroupLinkage::Probability(size_t member, size_t value) const {
  Rational q(numerator(member, value), normalizer_);
  q.canonicalize();
  return q;
}

Rational GroupLinkage::SetProbability(size_t member,
                                      absl::Span<const int32_t> codes) const {
  BigInt sum = 0;
  for (size_t v = 0; v < value_codes_.size(); ++v) {
    if (std::binary_search(codes.begin(), codes.end(), value_codes_[v])) {
      sum += numerator(member, v);
    }
  }
  Rational q(sum, normalizer_);
  q.canonicalize();
  return q;
}

int GroupLinkage::ValueIndex(int32_t code) const {
  auto it = std::lower_bound(value_codes_.begin(), value_codes_.end(), code);
  if (it == value_codes_.end() || *it != code) return -1;
  return static_cast<int>(it - value_codes_.begin());
}

int GroupLinkage::MemberIndex(int64_t row_id) const {
  for (size_t i = 0; i < member_row_ids_.size(); ++i) {
    if (member_row_ids_[i] == row_id) return static_cast<int>(i);
  }
  return -1;
}

class LinkageBuilder {
 public:
  // Collects members, distinct values and the per-member weights.
  static absl::StatusOr<LinkageBuilder> Start(const RawTable& table,
                                              absl::Span<const size_t> members,
                                              const BoundDistribution& knowledge,
                                              int64_t gid) {
    LinkageBuilder b;
    std::map<int32_t, int> counts;
    for (size_t idx : members) {
      b.out_.member_row_ids_.push_back(table.row(idx).row_id);
      ++counts[table.sensitive_code(idx)];
    }
    for (const auto& [code, m] : counts) {
      b.out_.value_codes_.push_back(code);
      b.out_.multiplicities_.push_back(m);
    }
    const size_t nv = b.out_.value_codes_.size();
    b.weights_.resize(members.size() * nv);
    for (size_t j = 0; j < members.size(); ++j) {
      int32_t cls = knowledge.class_of(members[j]);
      if (cls == BoundDistribution::kNoClass) {
        return absl::NotFoundError(absl::StrCat(
            "row ", table.row(members[j]).row_id, " in group ", gid,
            " has no signature entry for attribute set ",
            knowledge.attribute_set().ToString()));
      }
      for (size_t v = 0; v < nv; ++v) {
        b.weights_[j * nv + v] = knowledge.weight(cls, b.out_.value_codes_[v]);
      }
    }
    std::map<int32_t, int> class_index;
    for (size_t idx : members) {
      auto [it, inserted] = class_index.try_emplace(
          knowledge.class_of(idx), static_cast<int>(class_index.size()));
      b.member_class_.push_back(it->second);
      if (inserted) {
        b.class_sizes_.push_back(0);
        b.class_rep_.push_back(b.member_class_.size() - 1);
      }
      ++b.class_sizes_[it->second];
    }
    b.out_.numerators_.assign(members.size() * nv, BigInt(0));
    b.gid_ = gid;
    return b;
  }

  // Upper bounds on the state counts of the two dynamic programs, saturated
  // at `limit` + 1.
  int64_t ValueStates(int64_t limit) const {
    return SaturatedProduct(out_.multiplicities_, limit);
  }
  int64_t ClassStates(int64_t limit) const {
    return SaturatedProduct(class_sizes_, limit);
  }

  absl::Status RunValueDp(int64_t cap) {
    const size_t nv = out_.value_codes_.size();
    const auto& m = out_.multiplicities_;
    std::vector<int64_t> stride(nv + 1);
    stride[0] = 1;
    for (size_t v = 0; v < nv; ++v) {
      stride[v + 1] = stride[v] * (m[v] + 1);
      if (stride[v + 1] > cap) return CapError("DP states", cap);
    }
    const int64_t states = stride[nv];
    if (states == 1) {  // empty group
      out_.normalizer_ = 1;
      return absl::OkStatus();
    }
    // Count of tuples already assigned in state s is the digit sum.
    std::vector<BigInt> fwd(states), bwd(states);
    std::vector<int> digit(nv, 0);
    int level = 0;
    fwd[0] = 1;
    BigInt term;
    for (int64_t s = 1; s < states; ++s) {
      for (size_t v = 0;; ++v) {  // mixed-radix increment
        if (digit[v] < m[v]) {
          ++digit[v];
          ++level;
          break;
        }
        level -= digit[v];
        digit[v] = 0;
      }
      const size_t j = level - 1;  // the tuple assigned last
      for (size_t v = 0; v < nv; ++v) {
        if (digit[v] == 0) continue;
        const BigInt& w = weights_[j * nv + v];
        const BigInt& prev = fwd[s - stride[v]];
        if (sgn(w) == 0 || sgn(prev) == 0) continue;
        mpz_addmul(fwd[s].get_mpz_t(), prev.get_mpz_t(), w.get_mpz_t());
      }
    }
    bwd[states - 1] = 1;
    for (int64_t s = states - 1; s-- > 0;) {
      for (size_t v = 0;; ++v) {  // mixed-radix decrement
        if (digit[v] > 0) {
          --digit[v];
          --level;
          break;
        }
        digit[v] = m[v];
        level += m[v];
      }
      const size_t j = level;  // the next tuple to assign
      for (size_t v = 0; v < nv; ++v) {
        if (digit[v] == m[v]) continue;
        const BigInt& w = weights_[j * nv + v];
        const BigInt& next = bwd[s + stride[v]];
        if (sgn(w) == 0 || sgn(next) == 0) continue;
        mpz_mul(term.get_mpz_t(), w.get_mpz_t(), next.get_mpz_t());
        bwd[s] += term;
        if (sgn(fwd[s]) != 0) {
          mpz_addmul(out_.numerators_[j * nv + v].get_mpz_t(),
                     fwd[s].get_mpz_t(), term.get_mpz_t());
        }
      }
    }
    out_.normalizer_ = fwd[states - 1];
    return CheckNormalizer();
  }

  // Values are placed one at a time; the state records how many tuples of
  // each class already hold a value. Tuples of one class are exchangeable,
  // so p(t:v) = E[K_cv] / n_c with K_cv the count of v placed in class c.
  absl::Status RunClassDp(int64_t cap) {
    const size_t nv = out_.value_codes_.size();
    const size_t nc = class_sizes_.size();
    const size_t n = out_.member_row_ids_.size();
    if (n == 0) {
      out_.normalizer_ = 1;
      return absl::OkStatus();
    }
    if (ClassStates(cap) > cap) return CapError("DP states", cap);
    std::vector<int64_t> stride(nc + 1);
    stride[0] = 1;
    for (size_t c = 0; c < nc; ++c) {
      stride[c + 1] = stride[c] * (class_sizes_[c] + 1);
    }
    std::vector<BigInt> factorial(n + 1);
    factorial[0] = 1;
    for (size_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
    // power[v][c][k] = weight(c, v)^k
    std::vector<std::vector<std::vector<BigInt>>> power(nv);
    for (size_t v = 0; v < nv; ++v) {
      power[v].resize(nc);
      const int m = out_.multiplicities_[v];
      for (size_t c = 0; c < nc; ++c) {
        const int kmax = std::min(m, class_sizes_[c]);
        auto& pw = power[v][c];
        pw.resize(kmax + 1);
        pw[0] = 1;
        for (int k = 1; k <= kmax; ++k) {
          pw[k] = pw[k - 1] * weights_[class_rep_[c] * nv + v];
        }
      }
    }

    using Level = absl::flat_hash_map<int64_t, BigInt>;
    std::vector<Level> fwd(nv + 1);
    fwd[0][0] = 1;
    std::vector<int> digits(nc), split(nc);
    // Calls visit(next_state, transition_weight) for every way to place the
    // m copies of value v into the free capacity of `state`.
    auto for_each_split = [&](int64_t state, size_t v, auto&& visit) {
      for (size_t c = 0; c < nc; ++c) {
        digits[c] = static_cast<int>((state % stride[c + 1]) / stride[c]);
      }
      const int m = out_.multiplicities_[v];
      BigInt weight, coef, denom;
      auto rec = [&](auto&& self, size_t c, int left) -> void {
        if (c + 1 == nc) {
          if (left > class_sizes_[c] - digits[c]) return;
          split[c] = left;
          weight = 1;
          denom = 1;
          int64_t next = state;
          for (size_t u = 0; u < nc; ++u) {
            if (split[u] == 0) continue;
            const BigInt& pw = power[v][u][split[u]];
            if (sgn(pw) == 0) return;
            weight *= pw;
            denom *= factorial[split[u]];
            next += split[u] * stride[u];
          }
          mpz_divexact(coef.get_mpz_t(), factorial[m].get_mpz_t(),
                       denom.get_mpz_t());
          weight *= coef;
          visit(next, weight);
          return;
        }
        const int hi = std::min(left, class_sizes_[c] - digits[c]);
        for (int k = 0; k <= hi; ++k) {
          split[c] = k;
          self(self, c + 1, left - k);
        }
      };
      rec(rec, 0, m);
    };

    for (size_t v = 0; v < nv; ++v) {
      Level& next_level = fwd[v + 1];
      for (const auto& [state, f] : fwd[v]) {
        for_each_split(state, v, [&](int64_t next, const BigInt& t) {
          mpz_addmul(next_level[next].get_mpz_t(), f.get_mpz_t(),
                     t.get_mpz_t());
        });
      }
    }
    const int64_t full = stride[nc] - 1;
    auto it = fwd[nv].find(full);
    BigInt z = it == fwd[nv].end() ? BigInt(0) : it->second;
    if (sgn(z) == 0) {
      out_.normalizer_ = 0;
      return CheckNormalizer();
    }

    // class_num[c * nv + v] = sum over worlds of weight * K_cv
    std::vector<BigInt> class_num(nc * nv);
    Level bwd_next;
    bwd_next[full] = 1;
    BigInt term;
    for (size_t v = nv; v-- > 0;) {
      Level bwd;
      for (const auto& [state, f] : fwd[v]) {
        BigInt acc = 0;
        for_each_split(state, v, [&](int64_t next, const BigInt& t) {
          auto b = bwd_next.find(next);
          if (b == bwd_next.end() || sgn(b->second) == 0) return;
          mpz_mul(term.get_mpz_t(), t.get_mpz_t(), b->second.get_mpz_t());
          acc += term;
          term *= f;
          for (size_t c = 0; c < nc; ++c) {
            if (split[c] > 0) {
              mpz_addmul_ui(class_num[c * nv + v].get_mpz_t(),
                            term.get_mpz_t(), split[c]);
            }
          }
        });
        if (sgn(acc) != 0) bwd.emplace(state, std::move(acc));
      }
      bwd_next = std::move(bwd);
    }

    BigInt lcm = 1;
    for (int size : class_sizes_) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), size);
    out_.normalizer_ = z * lcm;
    for (size_t j = 0; j < n; ++j) {
      const int c = member_class_[j];
      BigInt scale = lcm / class_sizes_[c];
      for (size_t v = 0; v < nv; ++v) {
        out_.numerators_[j * nv + v] = class_num[c * nv + v] * scale;
      }
    }
    return CheckNormalizer();
  }

  absl::Status RunEnumeration(int64_t cap) {
    const size_t nv = out_.value_codes_.size();
    const size_t n = out_.member_row_ids_.size();
    if (Multinomial() > cap) return CapError("worlds", cap);
    std::vector<int> assignment;  // value index per member
    for (size_t v = 0; v < nv; ++v) {
      assignment.insert(assignment.end(), out_.multiplicities_[v],
                        static_cast<int>(v));
    }
    BigInt total = 0, weight;
    do {
      weight = 1;
      for (size_t j = 0; j < n && sgn(weight) != 0; ++j) {
        weight *= weights_[j * nv + assignment[j]];
      }
      if (sgn(weight) == 0) continue;
      total += weight;
      for (size_t j = 0; j < n; ++j) {
        out_.numerators_[j * nv + assignment[j]] += weight;
      }
    } while (std::next_permutation(assignment.begin(), assignment.end()));
    out_.normalizer_ = n == 0 ? BigInt(1) : total;
    return CheckNormalizer();
  }

  GroupLinkage Finish() && { return std::move(out_); }

 private:
  static int64_t SaturatedProduct(const std::vector<int>& sizes,
                                  int64_t limit) {
    int64_t product = 1;
    for (int size : sizes) {
      product *= size + 1;
      if (product > limit) return limit + 1;
    }
    return product;
  }

  BigInt Multinomial() const {
    BigInt result = 1;
    unsigned long placed = 0;
    for (int m : out_.multiplicities_) {
      for (int i = 1; i <= m; ++i) {
        ++placed;
        result *= placed;
        result /= static_cast<unsigned long>(i);
      }
    }
    return result;
  }

  absl::Status CapError(absl::string_view what, int64_t cap) const {
    return absl::ResourceExhaustedError(absl::StrCat(
        "group ", gid_, " exceeds the cap of ", cap, " ", what));
  }

  absl::Status CheckNormalizer() const {
    if (sgn(out_.normalizer_) == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "group ", gid_, " has no possible world of positive probability"));
    }
    return absl::OkStatus();
  }

  GroupLinkage out_;
  std::vector<BigInt> weights_;  // [member * nv + value]
  std::vector<int> member_class_;
  std::vector<int> class_sizes_;
  std::vector<size_t> class_rep_;  // one member of each class
  int64_t gid_ = 0;
};

namespace internal {

absl::StatusOr<GroupLinkage> LinkageByDp(const RawTable& table,
                                         absl::Span<const size_t> members,
                                         const BoundDistribution& knowledge,
                                         int64_t cap, int64_t gid) {
  absl::StatusOr<LinkageBuilder> b =
      LinkageBuilder::Start(table, members, knowledge, gid);
  if (!b.ok()) return b.status();
  const bool by_class = b->ClassStates(cap) <= b->ValueStates(cap);
  absl::Status s = by_class ? b->RunClassDp(cap) : b->RunValueDp(cap);
  if (!s.ok()) return s;
  return std::move(*b).Finish();
}

absl::StatusOr<GroupLinkage> LinkageByValueDp(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid) {
  absl::StatusOr<LinkageBuilder> b =
      LinkageBuilder::Start(table, members, knowledge, gid);
  if (!b.ok()) return b.status();
  if (absl::Status s = b->RunValueDp(cap); !s.ok()) return s;
  return std::move(*b).Finish();
}

absl::StatusOr<GroupLinkage> LinkageByClassDp(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid) {
  absl::StatusOr<LinkageBuilder> b =
      LinkageBuilder::Start(table, members, knowledge, gid);
  if (!b.ok()) return b.status();
  if (absl::Status s = b->RunClassDp(cap); !s.ok()) return s;
  return std::move(*b).Finish();
}

absl::StatusOr<GroupLinkage> LinkageByEnumeration(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid) {
  absl::StatusOr<LinkageBuilder> b =
      LinkageBuilder::Start(table, members, knowledge, gid);
  if (!b.ok()) return b.status();
  if (absl::Status s = b->RunEnumeration(cap); !s.ok()) return s;
  return std::move(*b).Finish();
}

}  // namespace internal

namespace {

absl::StatusOr<std::vector<size_t>> MemberIndices(const RawTable& table,
                                                  const AGroup& group) {
  std::vector<size_t> out;
  out.reserve(group.size());
  for (int64_t id : group.member_row_ids) {
    std::optional<size_t> idx = table.IndexOf(id);
    if (!idx) {
      return absl::InvalidArgumentError(
          absl::StrCat("group ", group.gid, " references unknown row ", id));
    }
    out.push_back(*idx);
  }
  return out;
}

absl::StatusOr<std::vector<int32_t>> TargetCodes(
    const RawTable& table, absl::Span<const std::string> values) {
  std::vector<int32_t> codes;
  for (const std::string& v : values) {
    std::optional<int32_t> code = table.SensitiveCode(v);
    if (!code) {
      return absl::InvalidArgumentError(
          absl::StrCat("sensitive value '", v, "' is not in the domain"));
    }
    codes.push_back(*code);
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

}  // namespace

absl::StatusOr<std::vector<PossibleWorld>> EnumerateWorlds(const AGroup& group,
                                                           int64_t cap) {
  std::vector<std::string> values = group.sensitive_multiset;
  std::sort(values.begin(), values.end());
  std::map<std::string, int> counts;
  for (const std::string& v : values) ++counts[v];
  BigInt total = 1;
  unsigned long placed = 0;
  for (const auto& [v, m] : counts) {
    for (int i = 1; i <= m; ++i) {
      ++placed;
      total *= placed;
      total /= static_cast<unsigned long>(i);
    }
  }
  if (total > cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "group ", group.gid, " has ", total.get_str(),
        " possible worlds, above the cap of ", cap));
  }
  std::vector<PossibleWorld> worlds;
  do {
    PossibleWorld w;
    for (size_t j = 0; j < values.size(); ++j) {
      w.assignment[group.member_row_ids[j]] = values[j];
    }
    worlds.push_back(std::move(w));
  } while (std::next_permutation(values.begin(), values.end()));
  return worlds;
}

absl::StatusOr<Rational> WorldWeight(const RawTable& table,
                                     const PossibleWorld& world,
                                     const AGroup& group,
                                     const BoundDistribution& knowledge) {
  Rational weight = 1;
  for (int64_t id : group.member_row_ids) {
    std::optional<size_t> idx = table.IndexOf(id);
    auto it = world.assignment.find(id);
    if (!idx || it == world.assignment.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("world does not assign row ", id, " of group ", group.gid));
    }
    int32_t cls = knowledge.class_of(*idx);
    if (cls == BoundDistribution::kNoClass) {
      return absl::NotFoundError(absl::StrCat(
          "row ", id, " has no signature entry for attribute set ",
          knowledge.attribute_set().ToString()));
    }
    std::optional<int32_t> code = table.SensitiveCode(it->second);
    if (!code) return Rational(0);
    weight *= knowledge.probability(cls, *code);
  }
  return weight;
}

absl::StatusOr<std::vector<WeightedWorld>> WorldPosterior(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap) {
  absl::StatusOr<std::vector<PossibleWorld>> worlds = EnumerateWorlds(group, cap);
  if (!worlds.ok()) return worlds.status();
  std::vector<WeightedWorld> out;
  Rational total = 0;
  for (PossibleWorld& w : *worlds) {
    absl::StatusOr<Rational> weight = WorldWeight(table, w, group, knowledge);
    if (!weight.ok()) return weight.status();
    total += *weight;
    out.push_back({std::move(w), std::move(*weight), Rational(0)});
  }
  if (sgn(total) == 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "group ", group.gid, " has no possible world of positive probability"));
  }
  for (WeightedWorld& w : out) w.posterior = w.weight / total;
  return out;
}

absl::StatusOr<GroupLinkage> ComputeGroupLinkage(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap) {
  absl::StatusOr<std::vector<size_t>> members = MemberIndices(table, group);
  if (!members.ok()) return members.status();
  return internal::LinkageByDp(table, *members, knowledge, cap, group.gid);
}

absl::StatusOr<GroupLinkage> ComputeGroupLinkageByEnumeration(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap) {
  absl::StatusOr<std::vector<size_t>> members = MemberIndices(table, group);
  if (!members.ok()) return members.status();
  return internal::LinkageByEnumeration(table, *members, knowledge, cap,
                                        group.gid);
}

absl::StatusOr<Rational> TupleLinkProbability(
    const RawTable& table, const AGroup& group, int64_t row_id,
    absl::string_view value, const BoundDistribution& knowledge) {
  std::string v(value);
  return SetLinkProbability(table, group, row_id, absl::MakeConstSpan(&v, 1),
                            knowledge);
}

absl::StatusOr<Rational> SetLinkProbability(
    const RawTable& table, const AGroup& group, int64_t row_id,
    absl::Span<const std::string> values, const BoundDistribution& knowledge) {
  absl::StatusOr<std::vector<int32_t>> codes = TargetCodes(table, values);
  if (!codes.ok()) return codes.status();
  absl::StatusOr<GroupLinkage> linkage =
      ComputeGroupLinkage(table, group, knowledge);
  if (!linkage.ok()) return linkage.status();
  int member = linkage->MemberIndex(row_id);
  if (member < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("row ", row_id, " is not a member of group ", group.gid));
  }
  return linkage->SetProbability(member, *codes);
}

absl::StatusOr<WorstCase> WorstCaseProbability(
    const RawTable& table, const AGroup& group, int64_t row_id,
    absl::Span<const std::string> target,
    absl::Span<const BoundDistribution> knowledge) {
  if (knowledge.empty()) {
    return absl::InvalidArgumentError("no background knowledge given");
  }
  std::optional<WorstCase> best;
  for (const BoundDistribution& k : knowledge) {
    absl::StatusOr<Rational> p =
        SetLinkProbability(table, group, row_id, target, k);
    if (!p.ok()) return p.status();
    if (!best || *p > best->probability ||
        (*p == best->probability && k.attribute_set() < best->attribute_set)) {
      best = WorstCase{*p, k.attribute_set()};
    }
  }
  return *best;
}

}  // namespace robustanon
