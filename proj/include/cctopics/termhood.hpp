// Copyright 2026 The cctopics authors
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

#ifndef CCTOPICS_TERMHOOD_HPP_
#define CCTOPICS_TERMHOOD_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cctopics/corpus.hpp"

namespace cctopics {

// Per-word cross-collection statistics. The posterior P(c|w) comes from
// Laplace-smoothed token counts, so no entry is ever exactly 0 or 1 and the
// normalized entropy lies in (0, 1].
struct WordStats {
  TokenId word = 0;
  std::vector<double> smoothed_counts;  // tf(w,c) + 1
  std::vector<double> posterior;        // P(c|w), sums to 1
  double entropy = 0.0;                 // normalized H(w)
  double termhood = 0.0;                // 1 - H(w)
};

// Normalized entropy H = (1/log2 C) * sum -p*log2(p). The summation order is
// canonicalized (descending) so that permuted inputs give bit-identical
// results; an exactly uniform posterior returns exactly 1.0. Requires C >= 2.
double normalized_entropy(std::span<const double> posterior,
                          int num_collections);

// Entropy of a smoothed hapax legomenon: the posterior (2/(C+1), 1/(C+1),
// ..., 1/(C+1)). Defined for any corpus, whether or not it contains one.
double hapax_threshold(int num_collections);

// P(c|w) with Laplace smoothing plus entropy and termhood for every word.
std::vector<WordStats> estimate_posteriors(const Corpus& corpus);

// The entropy split of the vocabulary. Words with H(w) <= threshold are
// collection-specific (ties included), the rest collection-independent.
struct VocabularyPartition {
  double threshold = 0.0;
  std::vector<std::uint8_t> is_specific;  // indexed by token id
  std::size_t specific_count = 0;
  std::size_t independent_count = 0;
  double gamma = 0.0;  // share of corpus tokens that are specific-word tokens
  std::vector<double> entropies;  // H(w) per word, kept for ranking output

  bool specific(TokenId w) const { return is_specific[w] != 0; }
  std::vector<TokenId> specific_words() const;
  std::vector<TokenId> independent_words() const;
};

// Splits the vocabulary at the given threshold (default: hapax_threshold of
// the corpus' collection count) and estimates gamma from raw token counts.
VocabularyPartition partition_vocabulary(
    const Corpus& corpus, std::optional<double> threshold = std::nullopt);

// gamma = sum of raw occurrences of specific words / total token count.
double estimate_gamma(const Corpus& corpus,
                      const VocabularyPartition& partition);

struct EntropyHistogram {
  std::vector<std::int64_t> bins;  // equal-width bins over [0, 1]
  double hapax_entropy = 0.0;
  std::int64_t words_at_hapax_entropy = 0;  // exact H(w) == hapax value
};

EntropyHistogram entropy_histogram(const Corpus& corpus, int bins);

// gamma as a function of the threshold, evaluated at every distinct entropy
// value in the vocabulary (ascending). Feeds the exact-mode threshold sweep.
struct ThresholdPoint {
  double threshold = 0.0;
  double gamma = 0.0;
};
std::vector<ThresholdPoint> gamma_curve(const Corpus& corpus);

}  // namespace cctopics

#endif  // CCTOPICS_TERMHOOD_HPP_
