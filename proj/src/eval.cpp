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

#include "cctopics/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cctopics/errors.hpp"
#include "cctopics/sampler_cclda.hpp"
#include "cctopics/sampler_entropy.hpp"
#include "parallel.hpp"
#include "sampler_internal.hpp"

namespace cctopics {

namespace {

const PointEstimates& estimates_of(const ModelState& state,
                                   std::optional<PointEstimates>& storage) {
  if (state.averaged) return *state.averaged;
  storage.emplace(point_estimates(state));
  return *storage;
}

// Shared fold-in worker so classify and perplexity reuse one code path.
std::vector<double> fold_in_under(const ModelState& state,
                                  const PointEstimates& est,
                                  const Document& doc,
                                  CollectionId assumed_collection,
                                  const FoldInOptions& options,
                                  std::uint64_t seed) {
  if (doc.tokens.empty()) {
    throw DataError("cannot fold in an empty document");
  }
  if (options.iterations < 1) {
    throw ConfigError("fold-in needs at least 1 iteration");
  }
  const auto T = static_cast<std::size_t>(state.num_topics());
  const auto c = static_cast<std::size_t>(assumed_collection);
  const double alpha_sum =
      std::accumulate(state.alpha.begin(), state.alpha.end(), 0.0);

  Rng rng(seed);
  std::vector<std::int32_t> local(T, 0);
  std::vector<std::size_t> assignment(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const auto z = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(T)));
    assignment[i] = z;
    ++local[z];
  }

  // Per-token per-topic word factors are constant while global tables stay
  // frozen; precompute them.
  const bool joint_x = state.variant == ModelVariant::cclda;
  Table2<double> factor(doc.tokens.size(), joint_x ? 2 * T : T);
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const TokenId w = doc.tokens[i];
    for (std::size_t z = 0; z < T; ++z) {
      if (joint_x) {
        const double p_x = est.psi(z, c);
        factor(i, 2 * z) = (1.0 - p_x) * est.phi(z, w);
        factor(i, 2 * z + 1) = p_x * est.sigma(z, c, w);
      } else {
        factor(i, z) = state.partition.specific(w) ? est.sigma(z, c, w)
                                                   : est.phi(z, w);
      }
    }
  }

  std::vector<double> weights(joint_x ? 2 * T : T);
  std::vector<double> theta_sum(T, 0.0);
  const int average_last = std::min(10, options.iterations);
  int averaged = 0;
  for (int iteration = 1; iteration <= options.iterations; ++iteration) {
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const std::size_t old_z = assignment[i];
      --local[old_z];
      double total = 0.0;
      if (joint_x) {
        for (std::size_t z = 0; z < T; ++z) {
          const double doc_part = local[z] + state.alpha[z];
          weights[2 * z] = doc_part * factor(i, 2 * z);
          weights[2 * z + 1] = doc_part * factor(i, 2 * z + 1);
          total += weights[2 * z] + weights[2 * z + 1];
        }
        const std::size_t pick = sample_index(weights, total, rng);
        assignment[i] = pick / 2;
      } else {
        for (std::size_t z = 0; z < T; ++z) {
          weights[z] = (local[z] + state.alpha[z]) * factor(i, z);
          total += weights[z];
        }
        assignment[i] = sample_index(weights, total, rng);
      }
      ++local[assignment[i]];
    }
    if (iteration > options.iterations - average_last) {
      const double denom = static_cast<double>(doc.tokens.size()) + alpha_sum;
      for (std::size_t z = 0; z < T; ++z) {
        theta_sum[z] += (local[z] + state.alpha[z]) / denom;
      }
      ++averaged;
    }
  }
  for (double& v : theta_sum) v /= averaged;
  return theta_sum;
}

}  // namespace

std::vector<double> fold_in(const ModelState& state, const Document& doc,
                            CollectionId assumed_collection,
                            const FoldInOptions& options, std::uint64_t seed) {
  std::optional<PointEstimates> storage;
  const PointEstimates& est = estimates_of(state, storage);
  return fold_in_under(state, est, doc, assumed_collection, options, seed);
}

double word_likelihood(const ModelState& state, TokenId w,
                       std::span<const double> theta, CollectionId c) {
  if (w < 0 || static_cast<std::size_t>(w) >= state.vocab_size()) {
    throw DataError("word id outside the training vocabulary");
  }
  std::optional<PointEstimates> storage;
  const PointEstimates& est = estimates_of(state, storage);
  return word_likelihood_under(state, est, theta, w, c);
}

ClassificationResult classify(const ModelState& state,
                              std::span<const Document> docs,
                              const FoldInOptions& options, std::uint64_t seed,
                              int threads) {
  const std::size_t C = state.num_collections();
  std::optional<PointEstimates> storage;
  const PointEstimates& est = estimates_of(state, storage);

  ClassificationResult result;
  result.posteriors = Table2<double>(docs.size(), C);
  result.per_doc_accuracy.resize(docs.size());

  parallel_for(docs.size(), threads, [&](std::size_t d) {
    const Document& doc = docs[d];
    // One fold-in per candidate collection; the seed depends only on the
    // document so identical likelihoods give identical thetas.
    std::vector<double> log_likelihood(C);
    for (std::size_t c = 0; c < C; ++c) {
      const auto candidate = static_cast<CollectionId>(c);
      const auto theta = fold_in_under(state, est, doc, candidate, options,
                                       mix_seed(seed, d));
      double sum = 0.0;
      for (TokenId w : doc.tokens) {
        sum += std::log(word_likelihood_under(state, est, theta, w, candidate));
      }
      log_likelihood[c] = sum;
    }
    const double max_ll =
        *std::max_element(log_likelihood.begin(), log_likelihood.end());
    double norm = 0.0;
    for (std::size_t c = 0; c < C; ++c) {
      result.posteriors(d, c) = std::exp(log_likelihood[c] - max_ll);
      norm += result.posteriors(d, c);
    }
    for (std::size_t c = 0; c < C; ++c) result.posteriors(d, c) /= norm;
    result.per_doc_accuracy[d] =
        result.posteriors(d, static_cast<std::size_t>(doc.collection));
  });

  if (!docs.empty()) {
    result.mean_accuracy =
        std::accumulate(result.per_doc_accuracy.begin(),
                        result.per_doc_accuracy.end(), 0.0) /
        static_cast<double>(docs.size());
  }
  return result;
}

PerplexityResult perplexity(const ModelState& state,
                            std::span<const Document> docs,
                            const FoldInOptions& options, std::uint64_t seed,
                            int threads) {
  std::optional<PointEstimates> storage;
  const PointEstimates& est = estimates_of(state, storage);

  std::vector<double> doc_log2(docs.size(), 0.0);
  parallel_for(docs.size(), threads, [&](std::size_t d) {
    const Document& doc = docs[d];
    const auto theta = fold_in_under(state, est, doc, doc.collection, options,
                                     mix_seed(seed, d));
    double sum = 0.0;
    for (TokenId w : doc.tokens) {
      sum += std::log2(
          word_likelihood_under(state, est, theta, w, doc.collection));
    }
    doc_log2[d] = sum;
  });

  PerplexityResult result;
  for (const Document& doc : docs) {
    result.tokens += static_cast<std::int64_t>(doc.tokens.size());
  }
  if (result.tokens == 0) {
    throw DataError("perplexity undefined: no tokens to evaluate");
  }
  const double total = std::accumulate(doc_log2.begin(), doc_log2.end(), 0.0);
  result.perplexity =
      std::exp2(-total / static_cast<double>(result.tokens));
  return result;
}

std::vector<std::string> mixed_top_words(const ModelState& state, int topic,
                                         int k) {
  const TopicReport report = top_words(state, k);
  const auto z = static_cast<std::size_t>(topic);
  std::vector<std::string> words;
  auto add = [&](const std::vector<WeightedWord>& list) {
    for (const auto& entry : list) {
      const std::string& token = state.vocab.token(entry.word);
      if (std::find(words.begin(), words.end(), token) == words.end()) {
        words.push_back(token);
      }
    }
  };
  add(report.independent[z]);
  for (std::size_t c = 0; c < state.num_collections(); ++c) {
    add(report.specific[z][c]);
  }
  return words;
}

CoherenceSummary mixed_coherence(const ModelState& state, int k,
                                 const Corpus& reference,
                                 const CoherenceOptions& options) {
  const TopicReport report = top_words(state, k);
  CoherenceSummary summary;
  summary.per_topic.resize(report.independent.size());
  for (std::size_t z = 0; z < report.independent.size(); ++z) {
    std::vector<std::string> words;
    auto add = [&](const std::vector<WeightedWord>& list) {
      for (const auto& entry : list) {
        const std::string& token = state.vocab.token(entry.word);
        if (std::find(words.begin(), words.end(), token) == words.end()) {
          words.push_back(token);
        }
      }
    };
    add(report.independent[z]);
    for (std::size_t c = 0; c < state.num_collections(); ++c) {
      add(report.specific[z][c]);
    }
    const CoherenceScore score = coherence_cv(words, reference, options);
    summary.per_topic[z] = score.value;
    summary.missing_words += score.missing_words;
  }
  if (!summary.per_topic.empty()) {
    summary.mean = std::accumulate(summary.per_topic.begin(),
                                   summary.per_topic.end(), 0.0) /
                   static_cast<double>(summary.per_topic.size());
  }
  return summary;
}

FoldEval evaluate_model(const ModelState& state, const Corpus& test,
                        const Corpus* reference, const EvalOptions& options) {
  FoldEval eval;
  eval.test_documents = test.num_documents();

  std::vector<Document> docs;
  docs.reserve(test.num_documents());
  for (const Document& doc : test.documents()) {
    OovFilterResult filtered =
        filter_oov(doc, test.vocabulary(), state.vocab);
    eval.oov_tokens_removed += static_cast<std::int64_t>(filtered.removed);
    if (filtered.empty()) {
      ++eval.skipped_empty_documents;
      continue;
    }
    docs.push_back(std::move(filtered.document));
  }
  eval.evaluated_documents = docs.size();
  for (const Document& doc : docs) {
    eval.evaluated_tokens += static_cast<std::int64_t>(doc.tokens.size());
  }
  if (docs.empty()) {
    throw DataError("no evaluable documents after OOV filtering");
  }

  const auto classification =
      classify(state, docs, options.fold_in, options.seed, options.threads);
  eval.accuracy = classification.mean_accuracy;
  eval.perplexity =
      perplexity(state, docs, options.fold_in, options.seed, options.threads)
          .perplexity;
  if (options.with_coherence && reference != nullptr) {
    const auto coherence =
        mixed_coherence(state, options.top_k, *reference, options.coherence);
    eval.coherence = coherence.mean;
    eval.per_topic_coherence = coherence.per_topic;
  }
  return eval;
}

EvalReport cross_validate(const Corpus& corpus, const Hyperparameters& hyper,
                          ModelVariant variant, int folds,
                          std::optional<double> threshold,
                          const EvalOptions& options) {
  const auto splits = split_folds(corpus, folds, hyper.seed);
  EvalReport report;
  report.folds.resize(splits.size());

  parallel_for(splits.size(), options.threads, [&](std::size_t f) {
    const FoldSplit& split = splits[f];
    Hyperparameters fold_hyper = hyper;
    fold_hyper.seed = mix_seed(hyper.seed, f);

    TrainResult trained;
    if (variant == ModelVariant::entropy_based) {
      const auto partition = partition_vocabulary(split.train, threshold);
      trained = train_entropy(split.train, fold_hyper, partition);
    } else {
      trained = train_cclda(split.train, fold_hyper);
    }
    EvalOptions fold_options = options;
    fold_options.threads = 1;  // the outer pool already spans folds
    report.folds[f] =
        evaluate_model(trained.state, split.test, &split.train, fold_options);
  });

  FoldEval& total = report.aggregate;
  for (const FoldEval& fold : report.folds) {
    total.accuracy += fold.accuracy;
    total.perplexity += fold.perplexity;
    total.coherence += fold.coherence;
    total.test_documents += fold.test_documents;
    total.evaluated_documents += fold.evaluated_documents;
    total.skipped_empty_documents += fold.skipped_empty_documents;
    total.evaluated_tokens += fold.evaluated_tokens;
    total.oov_tokens_removed += fold.oov_tokens_removed;
  }
  const auto n = static_cast<double>(report.folds.size());
  total.accuracy /= n;
  total.perplexity /= n;
  total.coherence /= n;
  return report;
}

std::vector<SweepRow> sweep_thresholds(const Corpus& corpus,
                                       const Hyperparameters& hyper,
                                       const SweepOptions& sweep,
                                       const EvalOptions& options) {
  const auto splits = split_folds(corpus, sweep.holdout_folds, hyper.seed);
  const Corpus& train = splits[0].train;
  const Corpus& test = splits[0].test;

  std::vector<double> grid;
  if (sweep.mode == SweepOptions::Mode::exact) {
    for (const auto& point : gamma_curve(train)) {
      grid.push_back(point.threshold);
    }
  } else {
    if (sweep.points < 2) throw ConfigError("sweep needs at least 2 points");
    for (int i = 0; i < sweep.points; ++i) {
      grid.push_back(static_cast<double>(i) /
                     static_cast<double>(sweep.points - 1));
    }
    grid.push_back(hapax_threshold(static_cast<int>(corpus.num_collections())));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }

  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    const auto partition = partition_vocabulary(train, grid[i]);
    const TrainResult trained = train_entropy(train, hyper, partition);

    std::vector<Document> docs;
    for (const Document& doc : test.documents()) {
      OovFilterResult filtered =
          filter_oov(doc, test.vocabulary(), trained.state.vocab);
      if (!filtered.empty()) docs.push_back(std::move(filtered.document));
    }
    const auto classification =
        classify(trained.state, docs, options.fold_in, options.seed, 1);
    rows[i] = SweepRow{grid[i], partition.gamma, classification.mean_accuracy};
  });

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.threshold < b.threshold;
  });
  return rows;
}

}  // namespace cctopics
