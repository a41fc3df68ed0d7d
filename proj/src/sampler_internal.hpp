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

#ifndef CCTOPICS_SRC_SAMPLER_INTERNAL_HPP_
#define CCTOPICS_SRC_SAMPLER_INTERNAL_HPP_

#include <chrono>
#include <vector>

#include "cctopics/model.hpp"
#include "cctopics/rng.hpp"
#include "cctopics/sampler_entropy.hpp"

namespace cctopics {

// Inverse-CDF draw from unnormalized positive weights. The priors keep every
// weight strictly positive, so total > 0 always holds here.
inline std::size_t sample_index(const std::vector<double>& weights,
                                double total, Rng& rng) {
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return weights.size() - 1;
}

// Burn-in then `samples` retained states separated by `lag` sweeps; the
// retained point estimates are averaged into state.averaged. The trace gets
// one record per sweep.
template <typename SweepFn>
void run_training_schedule(TrainResult& result, const Corpus& corpus,
                           const Hyperparameters& hyper,
                           const ProgressFn& progress, SweepFn&& sweep) {
  ModelState& state = result.state;
  const auto start = std::chrono::steady_clock::now();
  const int total_sweeps = hyper.burn_in + hyper.samples * hyper.lag;

  PointEstimates sum;
  int retained = 0;
  for (int iteration = 1; iteration <= total_sweeps; ++iteration) {
    sweep(state, corpus);

    IterationRecord record;
    record.iteration = iteration;
    record.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    record.log_likelihood = training_log_likelihood(state, corpus);
    result.trace.push_back(record);
    if (progress) progress(record);

    const int after_burn_in = iteration - hyper.burn_in;
    if (after_burn_in > 0 && after_burn_in % hyper.lag == 0) {
      PointEstimates est = point_estimates(state);
      if (retained == 0) {
        sum = std::move(est);
      } else {
        for (std::size_t i = 0; i < sum.theta.data().size(); ++i) {
          sum.theta.data()[i] += est.theta.data()[i];
        }
        for (std::size_t i = 0; i < sum.phi.data().size(); ++i) {
          sum.phi.data()[i] += est.phi.data()[i];
        }
        for (std::size_t i = 0; i < sum.sigma.data().size(); ++i) {
          sum.sigma.data()[i] += est.sigma.data()[i];
        }
        for (std::size_t i = 0; i < sum.psi.data().size(); ++i) {
          sum.psi.data()[i] += est.psi.data()[i];
        }
      }
      ++retained;
    }
  }

  const double scale = 1.0 / retained;
  for (double& v : sum.theta.data()) v *= scale;
  for (double& v : sum.phi.data()) v *= scale;
  for (double& v : sum.sigma.data()) v *= scale;
  for (double& v : sum.psi.data()) v *= scale;
  state.averaged = std::move(sum);
}

}  // namespace cctopics

#endif  // CCTOPICS_SRC_SAMPLER_INTERNAL_HPP_
