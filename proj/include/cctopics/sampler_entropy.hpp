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

#ifndef CCTOPICS_SAMPLER_ENTROPY_HPP_
#define CCTOPICS_SAMPLER_ENTROPY_HPP_

#include <functional>
#include <vector>

#include "cctopics/model.hpp"

namespace cctopics {

struct IterationRecord {
  int iteration = 0;
  double elapsed_seconds = 0.0;
  double log_likelihood = 0.0;
};

// Called after every sweep; wired to the progress log by the CLI.
using ProgressFn = std::function<void(const IterationRecord&)>;

struct TrainResult {
  ModelState state;
  std::vector<IterationRecord> trace;
};

// One full sweep of the collapsed sampler with x fixed per vocabulary word:
// documents in order, tokens in order, z drawn from the collapsed
// conditional. x is never resampled.
void gibbs_sweep_entropy(ModelState& state, const Corpus& corpus, Rng& rng);

// init + burn_in sweeps + `samples` retained states at `lag` spacing whose
// point estimates are averaged into state.averaged.
TrainResult train_entropy(const Corpus& corpus, const Hyperparameters& hyper,
                          const VocabularyPartition& partition,
                          const ProgressFn& progress = {});

}  // namespace cctopics

#endif  // CCTOPICS_SAMPLER_ENTROPY_HPP_
