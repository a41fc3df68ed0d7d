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

#ifndef CCTOPICS_SAMPLER_CCLDA_HPP_
#define CCTOPICS_SAMPLER_CCLDA_HPP_

#include "cctopics/sampler_entropy.hpp"

namespace cctopics {

// One full sweep of the ccLDA baseline: (z, x) sampled jointly from 2T
// weights per token; phi and sigma both normalize over the full vocabulary.
void gibbs_sweep_cclda(ModelState& state, const Corpus& corpus, Rng& rng);

TrainResult train_cclda(const Corpus& corpus, const Hyperparameters& hyper,
                        const ProgressFn& progress = {});

}  // namespace cctopics

#endif  // CCTOPICS_SAMPLER_CCLDA_HPP_
