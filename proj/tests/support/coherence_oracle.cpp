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

#include "coherence_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cctopics::testing {

// Brute-force reimplementation: materialize every window as a token set,
// count marginals and pairs by scanning, then NPMI vectors and cosines. Kept
// deliberately naive and separate from the library code path.
double brute_force_cv(const std::vector<std::string>& words,
                      const Corpus& reference, int window, double epsilon) {
  const std::size_t n = words.size();
  std::vector<std::set<std::string>> window_sets;
  for (const Document& doc : reference.documents()) {
    std::vector<std::string> tokens;
    for (TokenId w : doc.tokens) {
      tokens.push_back(reference.vocabulary().token(w));
    }
    const std::size_t len = tokens.size();
    const auto width = static_cast<std::size_t>(window);
    const std::size_t count = len <= width ? 1 : len - width + 1;
    for (std::size_t p = 0; p < count; ++p) {
      std::set<std::string> contents;
      for (std::size_t t = p; t < std::min(p + width, len); ++t) {
        contents.insert(tokens[t]);
      }
      window_sets.push_back(std::move(contents));
    }
  }
  const double total = static_cast<double>(window_sets.size());

  const auto p_word = [&](const std::string& word) {
    double count = 0.0;
    for (const auto& contents : window_sets) {
      if (contents.contains(word)) count += 1.0;
    }
    return count / total;
  };
  const auto p_pair = [&](const std::string& a, const std::string& b) {
    double count = 0.0;
    for (const auto& contents : window_sets) {
      if (contents.contains(a) && contents.contains(b)) count += 1.0;
    }
    return count / total;
  };
  const auto npmi = [&](double pi, double pj, double pij) {
    if (pi <= 0.0 || pj <= 0.0) return 0.0;
    const double joint = pij + epsilon;
    if (joint >= 1.0) return 1.0;
    return std::log(joint / (pi * pj)) / -std::log(joint);
  };

  std::vector<double> marginal(n);
  for (std::size_t i = 0; i < n; ++i) marginal[i] = p_word(words[i]);

  std::vector<std::vector<double>> vectors(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (marginal[i] <= 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double pij =
          i == j ? marginal[i] : p_pair(words[i], words[j]);
      vectors[i][j] = npmi(marginal[i], marginal[j], pij);
    }
  }
  std::vector<double> sum_vector(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sum_vector[j] += vectors[i][j];
  }
  double score = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0, ni = 0.0, ns = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      dot += vectors[i][j] * sum_vector[j];
      ni += vectors[i][j] * vectors[i][j];
      ns += sum_vector[j] * sum_vector[j];
    }
    score += (ni == 0.0 || ns == 0.0)
                 ? 0.0
                 : dot / (std::sqrt(ni) * std::sqrt(ns));
  }
  return score / static_cast<double>(n);
}

}  // namespace cctopics::testing
