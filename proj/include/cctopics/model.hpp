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

#ifndef CCTOPICS_MODEL_HPP_
#define CCTOPICS_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cctopics/corpus.hpp"
#include "cctopics/rng.hpp"
#include "cctopics/tables.hpp"
#include "cctopics/termhood.hpp"

namespace cctopics {

enum class ModelVariant { entropy_based, cclda };

std::string variant_name(ModelVariant variant);
ModelVariant parse_variant(const std::string& name);

struct Hyperparameters {
  int topics = 25;                // T
  double alpha = 1.0;             // uniform per-topic prior
  double alpha_background = 5.0;  // prior of the background topic
  int background_topic = 0;       // -1 disables the background topic
  double beta = 0.01;             // prior for phi
  double delta = 0.01;            // prior for sigma
  double gamma0 = 1.0;            // Beta prior pseudocount for x = 0 (ccLDA)
  double gamma1 = 1.0;            // Beta prior pseudocount for x = 1 (ccLDA)
  int burn_in = 200;
  int samples = 10;
  int lag = 10;
  std::uint64_t seed = 42;

  std::vector<double> alpha_vector() const;
  double alpha_sum() const;
  void validate() const;  // throws ConfigError
};

// Averaged (or single-state) posterior point estimates. For the entropy
// variant phi is zero outside the collection-independent support and sigma
// outside the collection-specific one.
struct PointEstimates {
  Table2<double> theta;  // D x T
  Table2<double> phi;    // T x V
  Table3<double> sigma;  // T x C x V
  Table2<double> psi;    // T x C, posterior mean of P(x=1|z,c); ccLDA only
};

// All Gibbs state for either model variant: assignments and count tables,
// plus the training vocabulary and collection labels so a saved model can be
// evaluated and reported without the original corpus.
struct ModelState {
  ModelVariant variant = ModelVariant::entropy_based;
  Hyperparameters hyper;
  std::vector<double> alpha;  // expanded per-topic prior, size T

  Vocabulary vocab;
  std::vector<std::string> collections;
  VocabularyPartition partition;  // entropy variant only
  double gamma = 0.0;             // entropy variant: P(x=1)

  std::vector<std::vector<std::int32_t>> z_assign;  // per doc, per token
  std::vector<std::vector<std::uint8_t>> x_assign;  // ccLDA only

  Table2<std::int32_t> n_dz;         // D x T
  Table2<std::int32_t> n_zw_phi;     // T x V
  std::vector<std::int32_t> n_z_phi;  // T
  Table3<std::int32_t> n_zcw_sigma;  // T x C x V
  Table2<std::int32_t> n_zc_sigma;   // T x C
  Table2<std::int32_t> n_zc_x;       // T x C, tokens with x = 1 (ccLDA)
  Table2<std::int32_t> n_zc_notx;    // T x C, tokens with x = 0 (ccLDA)

  std::vector<std::int32_t> doc_len;
  std::int64_t phi_vocab_size = 0;    // V_phi: words phi normalizes over
  std::int64_t sigma_vocab_size = 0;  // V_sigma

  std::optional<PointEstimates> averaged;
  std::string config_echo;  // run configuration, stored verbatim in the file

  int num_topics() const { return hyper.topics; }
  std::size_t num_collections() const { return collections.size(); }
  std::size_t num_documents() const { return z_assign.size(); }
  std::size_t vocab_size() const { return vocab.size(); }
};

// Random initialization: every token gets a uniform topic; ccLDA tokens a
// fair-coin x, entropy tokens the x fixed by the partition. Deterministic
// for a given rng state.
ModelState init_state(const Corpus& corpus, const Hyperparameters& hyper,
                      ModelVariant variant,
                      const VocabularyPartition* partition, Rng& rng);

// Posterior point estimates from the current count tables.
PointEstimates point_estimates(const ModelState& state);

// Full-table audit of the count invariants; throws DataError on violation.
void audit_counts(const ModelState& state, const Corpus& corpus);

// L(w | theta, c) evaluated against explicit point estimates; shared by the
// evaluation module and the training progress trace.
double word_likelihood_under(const ModelState& state,
                             const PointEstimates& est,
                             std::span<const double> theta, TokenId w,
                             CollectionId c);

// Sum over tokens of ln L(w | theta_d, c) under the current point
// estimates; the progress trace metric.
double training_log_likelihood(const ModelState& state, const Corpus& corpus);

struct WeightedWord {
  TokenId word = 0;
  double probability = 0.0;
};

struct TopicReport {
  int top_k = 0;
  // independent[z] and specific[z][c], each sorted by probability descending,
  // ties broken by token id ascending.
  std::vector<std::vector<WeightedWord>> independent;
  std::vector<std::vector<std::vector<WeightedWord>>> specific;
};

// Top-k words per distribution from the averaged estimates when present,
// otherwise from the current counts.
TopicReport top_words(const ModelState& state, int k);

// Domain terms of one collection: words ranked by sum_z P(z) *
// sigma_{z,c}[w] with P(z) the token-mass share of topic z. Entropy variant
// only.
std::vector<WeightedWord> export_domain_terms(const ModelState& state,
                                              CollectionId collection, int k);

// Versioned, checksummed binary container. Round trips bit-identically.
void save_model(const ModelState& state, const std::filesystem::path& path);
ModelState load_model(const std::filesystem::path& path);

// In-memory encoding used by save/load; exposed for reproducibility checks.
std::vector<std::uint8_t> encode_model(const ModelState& state);
ModelState decode_model(const std::vector<std::uint8_t>& bytes);

}  // namespace cctopics

#endif  // CCTOPICS_MODEL_HPP_
