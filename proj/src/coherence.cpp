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

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "cctopics/errors.hpp"
#include "cctopics/eval.hpp"
#include "cctopics/tables.hpp"

namespace cctopics {

namespace {

struct WindowStats {
  std::int64_t total_windows = 0;
  std::vector<std::int64_t> word_windows;  // windows containing word i
  Table2<std::int64_t> pair_windows;       // windows containing words i and j
};

// Boolean sliding-window counts: each document contributes
// max(1, len - window + 1) virtual documents of `window` consecutive tokens.
WindowStats count_windows(const std::vector<TokenId>& ref_ids,
                          const Corpus& reference, int window) {
  const std::size_t n = ref_ids.size();
  WindowStats stats;
  stats.word_windows.assign(n, 0);
  stats.pair_windows = Table2<std::int64_t>(n, n);

  std::unordered_map<TokenId, std::vector<int>> index_of;
  for (std::size_t i = 0; i < n; ++i) {
    if (ref_ids[i] >= 0) index_of[ref_ids[i]].push_back(static_cast<int>(i));
  }

  std::vector<int> in_window(n, 0);
  std::vector<int> present;
  const auto record = [&] {
    for (std::size_t a = 0; a < present.size(); ++a) {
      const int i = present[a];
      ++stats.word_windows[i];
      for (std::size_t b = a + 1; b < present.size(); ++b) {
        const int j = present[b];
        ++stats.pair_windows(std::min(i, j), std::max(i, j));
      }
    }
  };
  const auto add_token = [&](TokenId w) {
    const auto it = index_of.find(w);
    if (it == index_of.end()) return;
    for (int i : it->second) {
      if (in_window[i]++ == 0) present.push_back(i);
    }
  };
  const auto remove_token = [&](TokenId w) {
    const auto it = index_of.find(w);
    if (it == index_of.end()) return;
    for (int i : it->second) {
      if (--in_window[i] == 0) {
        present.erase(std::find(present.begin(), present.end(), i));
      }
    }
  };

  for (const Document& doc : reference.documents()) {
    const auto len = doc.tokens.size();
    const auto width = static_cast<std::size_t>(window);
    std::fill(in_window.begin(), in_window.end(), 0);
    present.clear();

    if (len <= width) {
      for (TokenId w : doc.tokens) add_token(w);
      record();
      ++stats.total_windows;
      continue;
    }
    for (std::size_t t = 0; t < width; ++t) add_token(doc.tokens[t]);
    record();
    ++stats.total_windows;
    for (std::size_t p = 1; p + width <= len; ++p) {
      remove_token(doc.tokens[p - 1]);
      add_token(doc.tokens[p + width - 1]);
      record();
      ++stats.total_windows;
    }
  }
  return stats;
}

double npmi(double p_i, double p_j, double p_ij, double epsilon) {
  if (p_i <= 0.0 || p_j <= 0.0) return 0.0;
  const double joint = p_ij + epsilon;
  if (joint >= 1.0) return 1.0;  // co-occur in every window
  return std::log(joint / (p_i * p_j)) / -std::log(joint);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

CoherenceScore coherence_cv(const std::vector<std::string>& top_words,
                            const Corpus& reference,
                            const CoherenceOptions& options) {
  if (top_words.size() < 2) {
    throw ConfigError("coherence needs at least 2 top words");
  }
  if (options.window < 1) throw ConfigError("window width must be positive");

  const std::size_t n = top_words.size();
  std::vector<TokenId> ref_ids(n, -1);
  CoherenceScore score;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto id = reference.vocabulary().find(top_words[i])) {
      ref_ids[i] = *id;
    } else {
      ++score.missing_words;
    }
  }

  const WindowStats stats = count_windows(ref_ids, reference, options.window);
  const auto total = static_cast<double>(stats.total_windows);

  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = static_cast<double>(stats.word_windows[i]) / total;
  }

  // One-all segmentation: each word's NPMI vector against the whole set; a
  // window containing w contains the pair (w, w), so the diagonal uses p[i].
  std::vector<std::vector<double>> vectors(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double p_ij;
      if (i == j) {
        p_ij = p[i];
      } else {
        p_ij = static_cast<double>(
                   stats.pair_windows(std::min(i, j), std::max(i, j))) /
               total;
      }
      vectors[i][j] = npmi(p[i], p[j], p_ij, options.epsilon);
    }
    if (ref_ids[i] < 0) {
      std::fill(vectors[i].begin(), vectors[i].end(), 0.0);
    }
  }

  std::vector<double> set_vector(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) set_vector[j] += vectors[i][j];
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += cosine(vectors[i], set_vector);
  score.value = sum / static_cast<double>(n);
  return score;
}

}  // namespace cctopics
