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

#ifndef CCTOPICS_EVAL_HPP_
#define CCTOPICS_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cctopics/model.hpp"

namespace cctopics {

struct FoldInOptions {
  int iterations = 50;  // sweeps; theta averages the last 10 of them
};

// Held-out inference with all trained parameters frozen: Gibbs sampling of z
// (and x for ccLDA) over the document's tokens, only the local topic counts
// evolve. Tokens must already be ids in the model's training vocabulary.
std::vector<double> fold_in(const ModelState& state, const Document& doc,
                            CollectionId assumed_collection,
                            const FoldInOptions& options, std::uint64_t seed);

// L(w | theta_d, c) under the model's averaged estimates (current counts if
// no averaged estimates are stored).
double word_likelihood(const ModelState& state, TokenId w,
                       std::span<const double> theta, CollectionId c);

struct ClassificationResult {
  Table2<double> posteriors;             // docs x C, each row sums to 1
  std::vector<double> per_doc_accuracy;  // posterior mass on the true label
  double mean_accuracy = 0.0;
};

// Folds in each document once per candidate collection (the likelihood
// depends on c through sigma), scores log-likelihoods, normalizes. The
// fold-in seed depends on the document but not the candidate, so a fully
// symmetric model yields exactly uniform posteriors.
ClassificationResult classify(const ModelState& state,
                              std::span<const Document> docs,
                              const FoldInOptions& options, std::uint64_t seed,
                              int threads = 0);

struct PerplexityResult {
  double perplexity = 0.0;
  std::int64_t tokens = 0;  // M
};

// 2^(-(1/M) * sum log2 L(w|theta_d,c)) with theta_d folded in under the true
// collection label. Throws DataError when no tokens remain.
PerplexityResult perplexity(const ModelState& state,
                            std::span<const Document> docs,
                            const FoldInOptions& options, std::uint64_t seed,
                            int threads = 0);

struct CoherenceOptions {
  int window = 110;         // boolean sliding window width
  double epsilon = 1e-12;   // smoothing for unseen pairs
};

struct CoherenceScore {
  double value = 0.0;
  std::size_t missing_words = 0;  // top words absent from the reference
};

// C_V: boolean sliding-window co-occurrence counts over the reference, NPMI
// vectors per word against the whole set (one-all segmentation), mean cosine
// between each word's vector and the set's sum vector.
CoherenceScore coherence_cv(const std::vector<std::string>& top_words,
                            const Corpus& reference,
                            const CoherenceOptions& options = {});

// Union of the topic's phi top-k words and every collection's sigma top-k,
// deduplicated; the representation scored by mixed coherence.
std::vector<std::string> mixed_top_words(const ModelState& state, int topic,
                                         int k);

struct CoherenceSummary {
  std::vector<double> per_topic;
  double mean = 0.0;
  std::size_t missing_words = 0;
};

CoherenceSummary mixed_coherence(const ModelState& state, int k,
                                 const Corpus& reference,
                                 const CoherenceOptions& options = {});

struct EvalOptions {
  FoldInOptions fold_in;
  CoherenceOptions coherence;
  int top_k = 10;            // words per distribution for mixed coherence
  std::uint64_t seed = 42;
  bool with_coherence = true;
  int threads = 0;           // 0 = hardware concurrency
};

struct FoldEval {
  double accuracy = 0.0;
  double perplexity = 0.0;
  double coherence = 0.0;  // mean mixed coherence over topics
  std::vector<double> per_topic_coherence;
  std::size_t test_documents = 0;
  std::size_t evaluated_documents = 0;
  std::size_t skipped_empty_documents = 0;  // empty after OOV filtering
  std::int64_t evaluated_tokens = 0;
  std::int64_t oov_tokens_removed = 0;
};

// OOV-filters the test corpus against the model's vocabulary, classifies,
// measures perplexity and (when a reference is given) mixed coherence.
FoldEval evaluate_model(const ModelState& state, const Corpus& test,
                        const Corpus* reference, const EvalOptions& options);

struct EvalReport {
  std::vector<FoldEval> folds;
  FoldEval aggregate;  // metric fields are means over folds, counts are sums
};

// Stratified k-fold cross-validation: per fold, train the variant on the
// train view (entropy: partition + gamma first) and evaluate on the test
// view with the train view as coherence reference.
EvalReport cross_validate(const Corpus& corpus, const Hyperparameters& hyper,
                          ModelVariant variant, int folds,
                          std::optional<double> threshold,
                          const EvalOptions& options);

struct SweepRow {
  double threshold = 0.0;
  double gamma = 0.0;
  double accuracy = 0.0;
};

struct SweepOptions {
  enum class Mode { exact, fast };
  Mode mode = Mode::fast;
  int points = 25;        // fast mode grid size (hapax threshold always added)
  int holdout_folds = 10; // the held-out split is fold 0 of this many
};

// The gamma sweep: per threshold, partition the training view, train the
// entropy variant, classify the held-out split. Rows sorted by gamma
// ascending.
std::vector<SweepRow> sweep_thresholds(const Corpus& corpus,
                                       const Hyperparameters& hyper,
                                       const SweepOptions& sweep,
                                       const EvalOptions& options);

}  // namespace cctopics

#endif  // CCTOPICS_EVAL_HPP_
