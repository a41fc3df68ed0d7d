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

#include "cctopics/sampler_cclda.hpp"

#include "sampler_internal.hpp"

namespace cctopics {

void gibbs_sweep_cclda(ModelState& state, const Corpus& corpus, Rng& rng) {
  const auto T = static_cast<std::size_t>(state.num_topics());
  const double beta = state.hyper.beta;
  const double delta = state.hyper.delta;
  const double gamma0 = state.hyper.gamma0;
  const double gamma1 = state.hyper.gamma1;
  const double v_beta = static_cast<double>(state.phi_vocab_size) * beta;
  const double v_delta = static_cast<double>(state.sigma_vocab_size) * delta;

  // weights[2z] is (z, x=0), weights[2z+1] is (z, x=1)
  std::vector<double> weights(2 * T);
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const Document& doc = corpus.documents()[d];
    const auto c = static_cast<std::size_t>(doc.collection);
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const TokenId w = doc.tokens[i];
      const auto old_z = static_cast<std::size_t>(state.z_assign[d][i]);
      const bool old_x = state.x_assign[d][i] != 0;

      --state.n_dz(d, old_z);
      if (old_x) {
        --state.n_zcw_sigma(old_z, c, w);
        --state.n_zc_sigma(old_z, c);
        --state.n_zc_x(old_z, c);
      } else {
        --state.n_zw_phi(old_z, w);
        --state.n_z_phi[old_z];
        --state.n_zc_notx(old_z, c);
      }

      double total = 0.0;
      for (std::size_t z = 0; z < T; ++z) {
        const double doc_part = state.n_dz(d, z) + state.alpha[z];
        const double x_total =
            state.n_zc_x(z, c) + state.n_zc_notx(z, c) + gamma0 + gamma1;
        const double weight0 = doc_part *
                               ((state.n_zc_notx(z, c) + gamma0) / x_total) *
                               (state.n_zw_phi(z, w) + beta) /
                               (state.n_z_phi[z] + v_beta);
        const double weight1 = doc_part *
                               ((state.n_zc_x(z, c) + gamma1) / x_total) *
                               (state.n_zcw_sigma(z, c, w) + delta) /
                               (state.n_zc_sigma(z, c) + v_delta);
        weights[2 * z] = weight0;
        weights[2 * z + 1] = weight1;
        total += weight0 + weight1;
      }

      const std::size_t pick = sample_index(weights, total, rng);
      const std::size_t new_z = pick / 2;
      const bool new_x = (pick & 1) != 0;
      state.z_assign[d][i] = static_cast<std::int32_t>(new_z);
      state.x_assign[d][i] = new_x ? 1 : 0;
      ++state.n_dz(d, new_z);
      if (new_x) {
        ++state.n_zcw_sigma(new_z, c, w);
        ++state.n_zc_sigma(new_z, c);
        ++state.n_zc_x(new_z, c);
      } else {
        ++state.n_zw_phi(new_z, w);
        ++state.n_z_phi[new_z];
        ++state.n_zc_notx(new_z, c);
      }
    }
  }
}

TrainResult train_cclda(const Corpus& corpus, const Hyperparameters& hyper,
                        const ProgressFn& progress) {
  Rng rng(hyper.seed);
  TrainResult result;
  result.state = init_state(corpus, hyper, ModelVariant::cclda, nullptr, rng);
  run_training_schedule(result, corpus, hyper, progress,
                        [&rng](ModelState& state, const Corpus& view) {
                          gibbs_sweep_cclda(state, view, rng);
                        });
  return result;
}

}  // namespace cctopics
