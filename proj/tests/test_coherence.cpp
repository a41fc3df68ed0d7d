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

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "cctopics/errors.hpp"
#include "cctopics/eval.hpp"
#include "cctopics/rng.hpp"
#include "cctopics/sampler_cclda.hpp"
#include "cctopics/sampler_entropy.hpp"
#include "support/coherence_oracle.hpp"
#include "support/synthetic.hpp"

using namespace cctopics;

namespace {

Corpus words_corpus(const std::vector<std::vector<std::string>>& docs) {
  std::vector<TokenizedRecord> records;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    records.push_back({"d" + std::to_string(d),
                       d % 2 == 0 ? "c0" : "c1", docs[d]});
  }
  return build_corpus(records);
}

}  // namespace

TEST_CASE("coherence_cv: words that always co-occur score near 1") {
  std::vector<std::vector<std::string>> docs;
  for (int d = 0; d < 20; ++d) {
    if (d % 2 == 0) {
      docs.push_back({"pair_a", "pair_b", "filler1", "filler2"});
    } else {
      docs.push_back({"filler3", "filler4", "filler5"});
    }
  }
  const Corpus reference = words_corpus(docs);
  const auto score = coherence_cv({"pair_a", "pair_b"}, reference);
  CHECK(score.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(score.missing_words == 0);
}

TEST_CASE("coherence_cv: words that never co-occur score near the floor") {
  std::vector<std::vector<std::string>> docs;
  for (int d = 0; d < 20; ++d) {
    if (d % 2 == 0) {
      docs.push_back({"only_a", "filler1", "filler2"});
    } else {
      docs.push_back({"only_b", "filler3", "filler4"});
    }
  }
  const Corpus reference = words_corpus(docs);
  const auto score = coherence_cv({"only_a", "only_b"}, reference);
  CHECK(std::abs(score.value) < 0.05);
}

TEST_CASE("coherence_cv: agrees with the brute-force oracle to 1e-9") {
  // 100 synthetic documents with overlapping word patterns and lengths that
  // both straddle and exceed the window width.
  Rng rng(314);
  std::vector<std::vector<std::string>> docs;
  const std::vector<std::string> pool = {"red",  "green", "blue", "cyan",
                                         "umbra", "noise1", "noise2",
                                         "noise3", "noise4", "noise5"};
  for (int d = 0; d < 100; ++d) {
    std::vector<std::string> tokens;
    const int len = 3 + static_cast<int>(rng.uniform_int(12));
    for (int t = 0; t < len; ++t) {
      tokens.push_back(pool[rng.uniform_int(pool.size())]);
    }
    docs.push_back(tokens);
  }
  const Corpus reference = words_corpus(docs);

  for (int window : {5, 110}) {
    CoherenceOptions options;
    options.window = window;
    const std::vector<std::string> words{"red", "green", "blue"};
    const auto fast = coherence_cv(words, reference, options);
    const double slow =
        testing::brute_force_cv(words, reference, window, options.epsilon);
    INFO("window ", window);
    CHECK(fast.value == doctest::Approx(slow).epsilon(1e-9));
  }
}

TEST_CASE("coherence_cv: missing words contribute zero vectors, counted") {
  std::vector<std::vector<std::string>> docs(
      10, std::vector<std::string>{"real_a", "real_b", "pad"});
  const Corpus reference = words_corpus(docs);
  const auto with_ghost =
      coherence_cv({"real_a", "real_b", "ghost"}, reference);
  CHECK(with_ghost.missing_words == 1);
  const double slow =
      testing::brute_force_cv({"real_a", "real_b", "ghost"}, reference, 110, 1e-12);
  CHECK(with_ghost.value == doctest::Approx(slow).epsilon(1e-9));
  CHECK_THROWS_AS(coherence_cv({"solo"}, reference), ConfigError);
}

TEST_CASE("mixed_top_words: entropy unions hit the k*(C+1) ceiling") {
  // Train on data with distinct per-collection specific words so the sigma
  // top lists do not collide across collections.
  testing::PlantedConfig config;
  config.vocab_size = 200;
  config.topics = 2;
  config.documents = 80;
  config.doc_length = 40;
  config.gamma = 0.5;
  config.home_bias = 0.98;
  config.seed = 89;
  const auto planted = testing::generate_planted(config);
  const auto partition = partition_vocabulary(planted.corpus);
  Hyperparameters hyper;
  hyper.topics = 2;
  hyper.burn_in = 20;
  hyper.samples = 2;
  hyper.lag = 2;
  hyper.seed = 35;
  const auto trained = train_entropy(planted.corpus, hyper, partition);

  const int k = 5;
  for (int z = 0; z < hyper.topics; ++z) {
    const auto words = mixed_top_words(trained.state, z, k);
    CHECK(words.size() <= static_cast<std::size_t>(k * 3));
    // phi and sigma supports are disjoint, so at least the phi words plus
    // one sigma list are distinct
    CHECK(words.size() >= static_cast<std::size_t>(2 * k));
  }

  // ccLDA has no disjointness, so unions may shrink below the ceiling
  const auto cclda = train_cclda(planted.corpus, hyper);
  for (int z = 0; z < hyper.topics; ++z) {
    const auto words = mixed_top_words(cclda.state, z, k);
    CHECK(words.size() <= static_cast<std::size_t>(k * 3));
  }
}

TEST_CASE("mixed coherence degrades when specific words never co-occur") {
  // Same topical structure, two reference variants: one where specific words
  // of both collections co-occur inside documents, one where documents are
  // monolingual-style and they never do.
  const std::vector<std::string> shared{"core_a", "core_b", "core_c"};
  const std::vector<std::string> spec0{"l0_x", "l0_y"};
  const std::vector<std::string> spec1{"l1_x", "l1_y"};

  std::vector<std::vector<std::string>> mixed_docs, split_docs;
  for (int d = 0; d < 30; ++d) {
    std::vector<std::string> both = shared;
    both.insert(both.end(), spec0.begin(), spec0.end());
    both.insert(both.end(), spec1.begin(), spec1.end());
    mixed_docs.push_back(both);

    std::vector<std::string> mono = shared;
    const auto& spec = d % 2 == 0 ? spec0 : spec1;
    mono.insert(mono.end(), spec.begin(), spec.end());
    split_docs.push_back(mono);
  }
  const Corpus mixed_ref = words_corpus(mixed_docs);
  const Corpus split_ref = words_corpus(split_docs);

  std::vector<std::string> representation = shared;
  representation.insert(representation.end(), spec0.begin(), spec0.end());
  representation.insert(representation.end(), spec1.begin(), spec1.end());

  const auto aligned = coherence_cv(representation, mixed_ref);
  const auto degraded = coherence_cv(representation, split_ref);
  INFO("aligned ", aligned.value, " vs split ", degraded.value);
  CHECK(degraded.value < aligned.value);
}
