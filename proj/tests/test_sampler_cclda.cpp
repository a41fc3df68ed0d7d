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

#include <doctest.h>

#include <cmath>

#include "cctopics/sampler_cclda.hpp"
#include "support/enumeration.hpp"
#include "support/synthetic.hpp"

using namespace cctopics;

TEST_CASE("gibbs_sweep_cclda: symmetric single-word corpus flips a fair coin") {
  // One shared word, one token per collection, T=1, gamma0 = gamma1: every
  // (x_1, x_2) configuration has identical collapsed probability, so the
  // stationary P(x=1) is exactly one half.
  std::vector<TokenizedRecord> records = {
      {"d0", "c0", {"w"}},
      {"d1", "c1", {"w"}},
  };
  const Corpus corpus = build_corpus(records);
  Hyperparameters hyper;
  hyper.topics = 1;
  hyper.seed = 31;
  Rng rng(hyper.seed);
  auto state = init_state(corpus, hyper, ModelVariant::cclda, nullptr, rng);

  std::int64_t x_draws = 0, x_ones = 0;
  for (int sweep = 0; sweep < 25000; ++sweep) {
    gibbs_sweep_cclda(state, corpus, rng);
    for (const auto& doc : state.x_assign) {
      for (auto x : doc) {
        ++x_draws;
        x_ones += x;
      }
    }
  }
  const double fraction =
      static_cast<double>(x_ones) / static_cast<double>(x_draws);
  INFO("empirical P(x=1) = ", fraction);
  CHECK(fraction == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +- 0.02
}

TEST_CASE("gibbs_sweep_cclda: sweeps preserve count conservation") {
  const auto planted = testing::generate_planted({.vocab_size = 70,
                                                  .documents = 14,
                                                  .doc_length = 12,
                                                  .seed = 47});
  Hyperparameters hyper;
  hyper.topics = 3;
  hyper.seed = 9;
  Rng rng(hyper.seed);
  auto state = init_state(planted.corpus, hyper, ModelVariant::cclda, nullptr,
                          rng);
  for (int sweep = 0; sweep < 5; ++sweep) {
    gibbs_sweep_cclda(state, planted.corpus, rng);
    audit_counts(state, planted.corpus);
  }
}

TEST_CASE("gibbs_sweep_cclda: empirical (z,x) posterior matches enumeration") {
  std::vector<TokenizedRecord> records = {
      {"d0", "c0", {"w0", "w2", "w1"}},
      {"d1", "c1", {"w3", "w1", "w2"}},
  };
  const Corpus corpus = build_corpus(records);
  Hyperparameters hyper;
  hyper.topics = 2;
  hyper.background_topic = -1;
  hyper.alpha = 0.7;
  hyper.beta = 0.1;
  hyper.delta = 0.1;
  hyper.seed = 2025;

  const auto exact = testing::enumerate_cclda_posterior(corpus, hyper);
  REQUIRE(exact.size() == 4096);

  Rng rng(hyper.seed);
  auto state = init_state(corpus, hyper, ModelVariant::cclda, nullptr, rng);
  for (int sweep = 0; sweep < 2000; ++sweep) {
    gibbs_sweep_cclda(state, corpus, rng);
  }
  // 64 cells need ~50k draws for L1 << 0.05; 4096 cells need ~2M. The L1
  // halves per 4x sweeps (measured), so this sits at roughly 0.03.
  const int kSweeps = 2000000;
  std::vector<double> empirical(exact.size(), 0.0);
  for (int sweep = 0; sweep < kSweeps; ++sweep) {
    gibbs_sweep_cclda(state, corpus, rng);
    empirical[testing::encode_assignment(state, 2 * hyper.topics)] += 1.0;
  }
  for (double& p : empirical) p /= kSweeps;

  double l1 = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    l1 += std::abs(empirical[i] - exact[i]);
  }
  INFO("L1 distance: ", l1);
  CHECK(l1 < 0.05);
}

TEST_CASE("train_cclda: schedule and reproducibility") {
  const auto planted = testing::generate_planted({.vocab_size = 60,
                                                  .documents = 12,
                                                  .doc_length = 10,
                                                  .seed = 53});
  SUBCASE("defaults run 300 sweeps") {
    Hyperparameters hyper;
    hyper.topics = 2;
    hyper.seed = 11;
    const auto result = train_cclda(planted.corpus, hyper);
    CHECK(result.trace.size() == 300);
  }
  SUBCASE("same seed, same model") {
    Hyperparameters hyper;
    hyper.topics = 2;
    hyper.burn_in = 12;
    hyper.samples = 2;
    hyper.lag = 2;
    hyper.seed = 12;
    const auto a = train_cclda(planted.corpus, hyper);
    const auto b = train_cclda(planted.corpus, hyper);
    CHECK(a.state.z_assign == b.state.z_assign);
    CHECK(a.state.x_assign == b.state.x_assign);
    CHECK(a.state.averaged->phi == b.state.averaged->phi);
    CHECK(a.state.averaged->psi == b.state.averaged->psi);
  }
}

TEST_CASE("train_cclda: a word may hold mass in both phi and sigma") {
  // The asymmetry against the entropy variant: with per-occurrence x there
  // is no support disjointness.
  testing::PlantedConfig config;
  config.vocab_size = 100;
  config.documents = 60;
  config.doc_length = 40;
  config.gamma = 0.5;
  config.seed = 59;
  const auto planted = testing::generate_planted(config);
  Hyperparameters hyper;
  hyper.topics = 3;
  hyper.burn_in = 30;
  hyper.samples = 3;
  hyper.lag = 2;
  hyper.seed = 13;
  const auto result = train_cclda(planted.corpus, hyper);

  std::size_t both = 0;
  for (std::size_t w = 0; w < planted.corpus.vocabulary_size(); ++w) {
    std::int64_t phi_mass = 0, sigma_mass = 0;
    for (int z = 0; z < hyper.topics; ++z) {
      phi_mass += result.state.n_zw_phi(z, w);
      for (std::size_t c = 0; c < 2; ++c) {
        sigma_mass += result.state.n_zcw_sigma(z, c, w);
      }
    }
    if (phi_mass > 0 && sigma_mass > 0) ++both;
  }
  INFO("words with mass in both tables: ", both);
  CHECK(both > 0);
}

TEST_CASE("train_cclda: no collection signal pushes x toward phi") {
  // Both collections draw from identical distributions; pooled phi counts
  // explain the data better than split sigma counts, so the posterior
  // Bernoulli means sit below one half on average.
  testing::PlantedConfig config;
  config.vocab_size = 120;
  config.documents = 80;
  config.doc_length = 50;
  config.gamma = 0.4;
  config.home_bias = 0.5;  // no per-collection skew at all
  config.seed = 61;
  const auto planted = testing::generate_planted(config);
  Hyperparameters hyper;
  hyper.topics = 3;
  hyper.burn_in = 40;
  hyper.samples = 4;
  hyper.lag = 2;
  hyper.seed = 14;
  const auto result = train_cclda(planted.corpus, hyper);

  const auto& psi = result.state.averaged->psi;
  double mean = 0.0;
  for (double v : psi.data()) mean += v;
  mean /= static_cast<double>(psi.data().size());
  INFO("mean posterior P(x=1): ", mean);
  CHECK(mean < 0.5);
}
