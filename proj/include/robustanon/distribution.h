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

#ifndef ROBUSTANON_DISTRIBUTION_H_
#define ROBUSTANON_DISTRIBUTION_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "robustanon/rational.h"
#include "robustanon/table.h"

namespace robustanon {

// The adversary's background knowledge for one attribute set: for every
// signature s, the probability p(s:x) that a tuple matching s carries
// sensitive value x.
class QIDistribution {
 public:
  struct Entry {
    // Aligned with attribute_set().names().
    std::vector<std::string> values;
    int64_t support = 0;
    // Aligned with sensitive_domain().
    std::vector<Rational> probabilities;
  };

  // Validates every entry: probabilities in [0, 1] summing to exactly 1,
  // support >= 1, distinct signatures. Entries are stored sorted by values.
  static absl::StatusOr<QIDistribution> Create(
      AttributeSet attribute_set, std::vector<std::string> sensitive_domain,
      std::vector<Entry> entries);

  const AttributeSet& attribute_set() const { return attribute_set_; }
  const std::vector<std::string>& sensitive_domain() const {
    return sensitive_domain_;
  }
  const std::vector<Entry>& entries() const { return entries_; }

  // nullptr when the signature has no entry.
  const Entry* Find(absl::Span<const std::string> values) const;

  absl::StatusOr<Rational> Probability(const Signature& s,
                                       absl::string_view sensitive_value) const;
  absl::StatusOr<int64_t> Support(const Signature& s) const;
  Signature SignatureOf(const Entry& entry) const;

 private:
  absl::StatusOr<const Entry*> Lookup(const Signature& s) const;

  AttributeSet attribute_set_;
  std::vector<std::string> sensitive_domain_;
  std::vector<Entry> entries_;
  absl::flat_hash_map<std::vector<std::string>, size_t> index_;
};

// Empirical frequencies of the sensitive column per signature in `table`:
// the worst-case (exact) knowledge an adversary can hold.
absl::StatusOr<QIDistribution> DeriveDistribution(const RawTable& table,
                                                  const AttributeSet& attributes);

// Every non-empty subset of the QI attributes with at most `max_size`
// attributes, minus the sets whose signatures all have support below
// `min_support`. Sorted lexicographically by attribute name list.
absl::StatusOr<std::vector<AttributeSet>> EnumerateAttributeSets(
    const RawTable& table, int max_size, int64_t min_support);

enum class MissingSignaturePolicy {
  // Operations touching a row without an entry fail.
  kError,
  // Such rows get the uniform distribution over the table's sensitive domain.
  kUniform,
};

// A QIDistribution resolved against one table: each row is mapped to a
// signature class, and each class carries integer weights over the table's
// sensitive codes. Within a class, weight(c, v) / sum_v weight(c, v) equals
// p(s:v); the per-class scale cancels in every posterior.
class BoundDistribution {
 public:
  static absl::StatusOr<BoundDistribution> Bind(
      const RawTable& table, std::shared_ptr<const QIDistribution> distribution,
      MissingSignaturePolicy policy = MissingSignaturePolicy::kError);

  const QIDistribution& distribution() const { return *distribution_; }
  const AttributeSet& attribute_set() const {
    return distribution_->attribute_set();
  }

  // kNoClass for rows without an entry under kError.
  static constexpr int32_t kNoClass = -1;
  int32_t class_of(size_t row_index) const { return class_of_[row_index]; }
  size_t num_classes() const { return weights_.size(); }

  const BigInt& weight(int32_t cls, int32_t sensitive_code) const {
    return weights_[cls][sensitive_code];
  }
  const Rational& probability(int32_t cls, int32_t sensitive_code) const {
    return probabilities_[cls][sensitive_code];
  }
  double probability_double(int32_t cls, int32_t sensitive_code) const {
    return probabilities_double_[cls][sensitive_code];
  }

  // Rows that fell back to the uniform class.
  int64_t fallback_rows() const { return fallback_rows_; }

 private:
  std::shared_ptr<const QIDistribution> distribution_;
  std::vector<int32_t> class_of_;
  std::vector<std::vector<BigInt>> weights_;
  std::vector<std::vector<Rational>> probabilities_;
  std::vector<std::vector<double>> probabilities_double_;
  int64_t fallback_rows_ = 0;
};

// Derives and binds the distribution of every attribute set.
absl::StatusOr<std::vector<BoundDistribution>> DeriveKnowledge(
    const RawTable& table, absl::Span<const AttributeSet> attribute_sets);

}  // namespace robustanon

#endif  // ROBUSTANON_DISTRIBUTION_H_
