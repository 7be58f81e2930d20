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

#include "robustanon/distribution.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

namespace {

std::vector<int32_t> CodeKey(const RawTable& table, size_t row,
                             const AttributeSet& attributes) {
  std::vector<int32_t> key(attributes.size());
  for (size_t i = 0; i < attributes.size(); ++i) {
    key[i] = table.qi_code(row, attributes.indices()[i]);
  }
  return key;
}

}  // namespace

absl::StatusOr<QIDistribution> QIDistribution::Create(
    AttributeSet attribute_set, std::vector<std::string> sensitive_domain,
    std::vector<Entry> entries) {
  if (!std::is_sorted(sensitive_domain.begin(), sensitive_domain.end()) ||
      std::adjacent_find(sensitive_domain.begin(), sensitive_domain.end()) !=
          sensitive_domain.end()) {
    return absl::InvalidArgumentError(
        "sensitive domain must be sorted and duplicate-free");
  }
  for (const Entry& e : entries) {
    if (e.values.size() != attribute_set.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("signature arity mismatch for ", attribute_set.ToString()));
    }
    if (e.probabilities.size() != sensitive_domain.size()) {
      return absl::InvalidArgumentError("probability vector size mismatch");
    }
    if (e.support < 1) {
      return absl::InvalidArgumentError("signature support must be >= 1");
    }
    Rational sum = 0;
    for (const Rational& p : e.probabilities) {
      if (sgn(p) < 0 || p > 1) {
        return absl::InvalidArgumentError("probability outside [0, 1]");
      }
      sum += p;
    }
    if (sum != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("probabilities of a signature in ",
                       attribute_set.ToString(), " sum to ", FormatFraction(sum)));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.values < b.values; });
  QIDistribution d;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!d.index_.emplace(entries[i].values, i).second) {
      return absl::InvalidArgumentError("duplicate signature");
    }
  }
  d.attribute_set_ = std::move(attribute_set);
  d.sensitive_domain_ = std::move(sensitive_domain);
  d.entries_ = std::move(entries);
  return d;
}

const QIDistribution::Entry* QIDistribution::Find(
    absl::Span<const std::string> values) const {
  auto it = index_.find(std::vector<std::string>(values.begin(), values.end()));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

absl::StatusOr<const QIDistribution::Entry*> QIDistribution::Lookup(
    const Signature& s) const {
  if (s.pairs.size() != attribute_set_.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("signature does not cover ", attribute_set_.ToString()));
  }
  std::vector<std::string> values;
  for (const std::string& name : attribute_set_.names()) {
    auto it = s.pairs.find(name);
    if (it == s.pairs.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("signature lacks attribute ", name));
    }
    values.push_back(it->second);
  }
  const Entry* e = Find(values);
  if (e == nullptr) {
    return absl::NotFoundError(absl::StrCat("no entry for signature ", s.ToString()));
  }
  return e;
}

absl::StatusOr<Rational> QIDistribution::Probability(
    const Signature& s, absl::string_view sensitive_value) const {
  absl::StatusOr<const Entry*> e = Lookup(s);
  if (!e.ok()) return e.status();
  auto it = std::lower_bound(sensitive_domain_.begin(), sensitive_domain_.end(),
                             sensitive_value);
  if (it == sensitive_domain_.end() || *it != sensitive_value) return Rational(0);
  return (*e)->probabilities[it - sensitive_domain_.begin()];
}

absl::StatusOr<int64_t> QIDistribution::Support(const Signature& s) const {
  absl::StatusOr<const Entry*> e = Lookup(s);
  if (!e.ok()) return e.status();
  return (*e)->support;
}

Signature QIDistribution::SignatureOf(const Entry& entry) const {
  Signature s;
  for (size_t i = 0; i < attribute_set_.size(); ++i) {
    s.pairs.emplace(attribute_set_.names()[i], entry.values[i]);
  }
  return s;
}

absl::StatusOr<QIDistribution> DeriveDistribution(const RawTable& table,
                                                  const AttributeSet& attributes) {
  if (table.empty()) return absl::InvalidArgumentError("table is empty");
  const size_t domain = table.sensitive_domain().size();
  std::map<std::vector<int32_t>, std::vector<int64_t>> counts;
  for (size_t r = 0; r < table.size(); ++r) {
    auto& c = counts[CodeKey(table, r, attributes)];
    if (c.empty()) c.assign(domain, 0);
    ++c[table.sensitive_code(r)];
  }
  std::vector<QIDistribution::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    QIDistribution::Entry e;
    for (size_t i = 0; i < key.size(); ++i) {
      e.values.push_back(table.qi_domain(attributes.indices()[i])[key[i]]);
    }
    e.support = std::accumulate(c.begin(), c.end(), int64_t{0});
    e.probabilities.reserve(domain);
    for (int64_t n : c) e.probabilities.push_back(MakeRational(n, e.support));
    entries.push_back(std::move(e));
  }
  return QIDistribution::Create(attributes, table.sensitive_domain(),
                                std::move(entries));
}

absl::StatusOr<std::vector<AttributeSet>> EnumerateAttributeSets(
    const RawTable& table, int max_size, int64_t min_support) {
  const int q = static_cast<int>(table.qi_attributes().size());
  if (max_size < 1 || max_size > q) {
    return absl::InvalidArgumentError(
        absl::StrCat("max attribute set size must be in [1, ", q, "], got ",
                     max_size));
  }
  if (min_support < 1) {
    return absl::InvalidArgumentError("min_support must be >= 1");
  }
  std::vector<AttributeSet> out;
  for (uint32_t mask = 1; mask < (1u << q); ++mask) {
    if (__builtin_popcount(mask) > max_size) continue;
    std::vector<std::string> names;
    for (int a = 0; a < q; ++a) {
      if (mask & (1u << a)) names.push_back(table.qi_attributes()[a]);
    }
    absl::StatusOr<AttributeSet> set =
        AttributeSet::Create(table.qi_attributes(), std::move(names));
    if (!set.ok()) return set.status();
    if (min_support > 1) {
      absl::flat_hash_map<std::vector<int32_t>, int64_t> support;
      int64_t best = 0;
      for (size_t r = 0; r < table.size(); ++r) {
        best = std::max(best, ++support[CodeKey(table, r, *set)]);
      }
      if (best < min_support) continue;
    }
    out.push_back(*std::move(set));
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<BoundDistribution> BoundDistribution::Bind(
    const RawTable& table, std::shared_ptr<const QIDistribution> distribution,
    MissingSignaturePolicy policy) {
  if (distribution == nullptr) return absl::InvalidArgumentError("null distribution");
  const QIDistribution& d = *distribution;
  const AttributeSet& attrs = d.attribute_set();
  // Positions may differ from the schema the distribution was built on.
  absl::StatusOr<AttributeSet> local =
      AttributeSet::Create(table.qi_attributes(), attrs.names());
  if (!local.ok()) return local.status();

  const std::vector<std::string>& domain = table.sensitive_domain();
  std::vector<int64_t> dist_pos(domain.size(), -1);
  for (size_t v = 0; v < domain.size(); ++v) {
    auto it = std::lower_bound(d.sensitive_domain().begin(),
                               d.sensitive_domain().end(), domain[v]);
    if (it != d.sensitive_domain().end() && *it == domain[v]) {
      dist_pos[v] = it - d.sensitive_domain().begin();
    }
  }

  BoundDistribution b;
  b.distribution_ = std::move(distribution);
  b.class_of_.assign(table.size(), kNoClass);
  absl::flat_hash_map<std::vector<int32_t>, int32_t> class_by_key;
  absl::flat_hash_map<const QIDistribution::Entry*, int32_t> class_by_entry;
  int32_t uniform_class = kNoClass;

  auto add_class = [&](std::vector<Rational> probs) {
    BigInt scale = 1;
    for (const Rational& p : probs) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.get_den_mpz_t());
    }
    std::vector<BigInt> w;
    std::vector<double> pd;
    w.reserve(probs.size());
    for (const Rational& p : probs) {
      w.push_back(p.get_num() * (scale / p.get_den()));
      pd.push_back(p.get_d());
    }
    b.weights_.push_back(std::move(w));
    b.probabilities_double_.push_back(std::move(pd));
    b.probabilities_.push_back(std::move(probs));
    return static_cast<int32_t>(b.weights_.size() - 1);
  };

  for (size_t r = 0; r < table.size(); ++r) {
    std::vector<int32_t> key = CodeKey(table, r, *local);
    if (auto it = class_by_key.find(key); it != class_by_key.end()) {
      b.class_of_[r] = it->second;
      if (it->second == uniform_class) ++b.fallback_rows_;
      continue;
    }
    std::vector<std::string> values;
    for (size_t i = 0; i < key.size(); ++i) {
      values.push_back(table.qi_domain(local->indices()[i])[key[i]]);
    }
    const QIDistribution::Entry* e = d.Find(values);
    int32_t cls = kNoClass;
    if (e != nullptr) {
      auto [ce, inserted] = class_by_entry.emplace(e, 0);
      if (inserted) {
        std::vector<Rational> probs(domain.size(), Rational(0));
        for (size_t v = 0; v < domain.size(); ++v) {
          if (dist_pos[v] >= 0) probs[v] = e->probabilities[dist_pos[v]];
        }
        ce->second = add_class(std::move(probs));
      }
      cls = ce->second;
    } else if (policy == MissingSignaturePolicy::kUniform) {
      if (uniform_class == kNoClass) {
        uniform_class = add_class(std::vector<Rational>(
            domain.size(), MakeRational(1, static_cast<int64_t>(domain.size()))));
      }
      cls = uniform_class;
      ++b.fallback_rows_;
    }
    class_by_key.emplace(std::move(key), cls);
    b.class_of_[r] = cls;
  }
  return b;
}

absl::StatusOr<std::vector<BoundDistribution>> DeriveKnowledge(
    const RawTable& table, absl::Span<const AttributeSet> attribute_sets) {
  std::vector<BoundDistribution> out;
  out.reserve(attribute_sets.size());
  for (const AttributeSet& a : attribute_sets) {
    absl::StatusOr<QIDistribution> d = DeriveDistribution(table, a);
    if (!d.ok()) return d.status();
    absl::StatusOr<BoundDistribution> b = BoundDistribution::Bind(
        table, std::make_shared<const QIDistribution>(*std::move(d)));
    if (!b.ok()) return b.status();
    out.push_back(*std::move(b));
  }
  return out;
}

}  // namespace robustanon
