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

#include "cctopics/termhood.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cctopics/errors.hpp"

namespace cctopics {

double normalized_entropy(std::span<const double> posterior,
                          int num_collections) {
  if (num_collections < 2) {
    throw ConfigError("normalized entropy requires at least 2 collections");
  }
  // Uniform input is exactly maximum entropy; return 1.0 without rounding.
  bool uniform = true;
  for (double p : posterior) {
    if (p != posterior[0]) {
      uniform = false;
      break;
    }
  }
  if (uniform && !posterior.empty()) return 1.0;

  // Sort descending so permutations of the same posterior sum in the same
  // order and give bit-identical entropy (threshold ties rely on this).
  std::vector<double> sorted(posterior.begin(), posterior.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double sum = 0.0;
  for (double p : sorted) {
    if (p > 0.0) sum += -p * std::log2(p);
  }
  const double h = sum / std::log2(static_cast<double>(num_collections));
  return std::clamp(h, 0.0, 1.0);
}

double hapax_threshold(int num_collections) {
  if (num_collections < 2) {
    throw ConfigError("hapax threshold requires at least 2 collections");
  }
  const double denom = static_cast<double>(num_collections) + 1.0;
  std::vector<double> posterior(num_collections, 1.0 / denom);
  posterior[0] = 2.0 / denom;
  return normalized_entropy(posterior, num_collections);
}

std::vector<WordStats> estimate_posteriors(const Corpus& corpus) {
  const auto num_collections = static_cast<int>(corpus.num_collections());
  const auto vocab_size = corpus.vocabulary_size();
  std::vector<WordStats> stats(vocab_size);
  for (std::size_t w = 0; w < vocab_size; ++w) {
    WordStats& ws = stats[w];
    ws.word = static_cast<TokenId>(w);
    ws.smoothed_counts.resize(num_collections);
    ws.posterior.resize(num_collections);
    double denom = 0.0;
    for (int c = 0; c < num_collections; ++c) {
      const double smoothed =
          static_cast<double>(corpus.token_count(static_cast<TokenId>(w), c)) +
          1.0;
      ws.smoothed_counts[c] = smoothed;
      denom += smoothed;
    }
    for (int c = 0; c < num_collections; ++c) {
      ws.posterior[c] = ws.smoothed_counts[c] / denom;
    }
    ws.entropy = normalized_entropy(ws.posterior, num_collections);
    ws.termhood = 1.0 - ws.entropy;
  }
  return stats;
}

std::vector<TokenId> VocabularyPartition::specific_words() const {
  std::vector<TokenId> words;
  for (std::size_t w = 0; w < is_specific.size(); ++w) {
    if (is_specific[w]) words.push_back(static_cast<TokenId>(w));
  }
  return words;
}

std::vector<TokenId> VocabularyPartition::independent_words() const {
  std::vector<TokenId> words;
  for (std::size_t w = 0; w < is_specific.size(); ++w) {
    if (!is_specific[w]) words.push_back(static_cast<TokenId>(w));
  }
  return words;
}

VocabularyPartition partition_vocabulary(const Corpus& corpus,
                                         std::optional<double> threshold) {
  const auto stats = estimate_posteriors(corpus);
  VocabularyPartition partition;
  partition.threshold = threshold.value_or(
      hapax_threshold(static_cast<int>(corpus.num_collections())));
  partition.is_specific.resize(stats.size());
  partition.entropies.resize(stats.size());
  for (std::size_t w = 0; w < stats.size(); ++w) {
    partition.entropies[w] = stats[w].entropy;
    const bool specific = stats[w].entropy <= partition.threshold;
    partition.is_specific[w] = specific ? 1 : 0;
    if (specific) {
      ++partition.specific_count;
    } else {
      ++partition.independent_count;
    }
  }
  partition.gamma = estimate_gamma(corpus, partition);
  return partition;
}

double estimate_gamma(const Corpus& corpus,
                      const VocabularyPartition& partition) {
  std::int64_t specific_tokens = 0;
  for (std::size_t w = 0; w < partition.is_specific.size(); ++w) {
    if (partition.is_specific[w]) {
      specific_tokens += corpus.token_count(static_cast<TokenId>(w));
    }
  }
  if (corpus.total_tokens() == 0) return 0.0;
  return static_cast<double>(specific_tokens) /
         static_cast<double>(corpus.total_tokens());
}

EntropyHistogram entropy_histogram(const Corpus& corpus, int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least 1 bin");
  const auto stats = estimate_posteriors(corpus);
  EntropyHistogram histogram;
  histogram.bins.assign(bins, 0);
  histogram.hapax_entropy =
      hapax_threshold(static_cast<int>(corpus.num_collections()));
  for (const auto& ws : stats) {
    auto bin = static_cast<std::size_t>(ws.entropy * bins);
    if (bin >= static_cast<std::size_t>(bins)) bin = bins - 1;  // H == 1.0
    ++histogram.bins[bin];
    if (ws.entropy == histogram.hapax_entropy) {
      ++histogram.words_at_hapax_entropy;
    }
  }
  return histogram;
}

std::vector<ThresholdPoint> gamma_curve(const Corpus& corpus) {
  const auto stats = estimate_posteriors(corpus);
  std::map<double, std::int64_t> tokens_at_entropy;
  for (const auto& ws : stats) {
    tokens_at_entropy[ws.entropy] += corpus.token_count(ws.word);
  }
  std::vector<ThresholdPoint> curve;
  curve.reserve(tokens_at_entropy.size());
  std::int64_t running = 0;
  for (const auto& [entropy, tokens] : tokens_at_entropy) {
    running += tokens;
    curve.push_back(ThresholdPoint{
        entropy,
        static_cast<double>(running) /
            static_cast<double>(corpus.total_tokens())});
  }
  return curve;
}

}  // namespace cctopics
