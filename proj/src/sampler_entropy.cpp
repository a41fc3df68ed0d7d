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

#include "cctopics/sampler_entropy.hpp"

#include <chrono>

#include "sampler_internal.hpp"

namespace cctopics {

void gibbs_sweep_entropy(ModelState& state, const Corpus& corpus, Rng& rng) {
  const auto T = static_cast<std::size_t>(state.num_topics());
  const double beta = state.hyper.beta;
  const double delta = state.hyper.delta;
  const double v_phi_beta = static_cast<double>(state.phi_vocab_size) * beta;
  const double v_sigma_delta =
      static_cast<double>(state.sigma_vocab_size) * delta;

  std::vector<double> weights(T);
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const Document& doc = corpus.documents()[d];
    const auto c = static_cast<std::size_t>(doc.collection);
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const TokenId w = doc.tokens[i];
      const auto old_z = static_cast<std::size_t>(state.z_assign[d][i]);
      const bool specific = state.partition.specific(w);

      --state.n_dz(d, old_z);
      if (specific) {
        --state.n_zcw_sigma(old_z, c, w);
        --state.n_zc_sigma(old_z, c);
      } else {
        --state.n_zw_phi(old_z, w);
        --state.n_z_phi[old_z];
      }

      double total = 0.0;
      if (specific) {
        for (std::size_t z = 0; z < T; ++z) {
          const double weight = (state.n_dz(d, z) + state.alpha[z]) *
                                (state.n_zcw_sigma(z, c, w) + delta) /
                                (state.n_zc_sigma(z, c) + v_sigma_delta);
          weights[z] = weight;
          total += weight;
        }
      } else {
        for (std::size_t z = 0; z < T; ++z) {
          const double weight = (state.n_dz(d, z) + state.alpha[z]) *
                                (state.n_zw_phi(z, w) + beta) /
                                (state.n_z_phi[z] + v_phi_beta);
          weights[z] = weight;
          total += weight;
        }
      }

      const std::size_t new_z = sample_index(weights, total, rng);
      state.z_assign[d][i] = static_cast<std::int32_t>(new_z);
      ++state.n_dz(d, new_z);
      if (specific) {
        ++state.n_zcw_sigma(new_z, c, w);
        ++state.n_zc_sigma(new_z, c);
      } else {
        ++state.n_zw_phi(new_z, w);
        ++state.n_z_phi[new_z];
      }
    }
  }
}

TrainResult train_entropy(const Corpus& corpus, const Hyperparameters& hyper,
                          const VocabularyPartition& partition,
                          const ProgressFn& progress) {
  Rng rng(hyper.seed);
  TrainResult result;
  result.state =
      init_state(corpus, hyper, ModelVariant::entropy_based, &partition, rng);
  run_training_schedule(
      result, corpus, hyper, progress,
      [&rng](ModelState& state, const Corpus& view) {
        gibbs_sweep_entropy(state, view, rng);
      });
  return result;
}

}  // namespace cctopics
