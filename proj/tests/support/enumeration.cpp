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

#include "enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cctopics::testing {

namespace {

struct FlatToken {
  std::size_t doc = 0;
  std::size_t collection = 0;
  TokenId word = 0;
};

std::vector<FlatToken> flatten(const Corpus& corpus) {
  std::vector<FlatToken> tokens;
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const Document& doc = corpus.documents()[d];
    for (TokenId w : doc.tokens) {
      tokens.push_back(FlatToken{
          d, static_cast<std::size_t>(doc.collection), w});
    }
  }
  return tokens;
}

std::vector<double> normalize_logs(std::vector<double> logs) {
  const double max_log = *std::max_element(logs.begin(), logs.end());
  double total = 0.0;
  for (double& v : logs) {
    v = std::exp(v - max_log);
    total += v;
  }
  for (double& v : logs) v /= total;
  return logs;
}

}  // namespace

std::vector<double> enumerate_entropy_posterior(
    const Corpus& corpus, const Hyperparameters& hyper,
    const VocabularyPartition& partition) {
  const auto tokens = flatten(corpus);
  const auto n = tokens.size();
  const auto T = static_cast<std::size_t>(hyper.topics);
  const std::size_t V = corpus.vocabulary_size();
  const std::size_t C = corpus.num_collections();
  const std::size_t D = corpus.num_documents();
  const auto alpha = hyper.alpha_vector();
  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);

  std::size_t v_phi = 0, v_sigma = 0;
  for (std::size_t w = 0; w < V; ++w) {
    if (partition.specific(static_cast<TokenId>(w))) {
      ++v_sigma;
    } else {
      ++v_phi;
    }
  }

  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) outcomes *= T;

  std::vector<double> logs(outcomes);
  std::vector<std::size_t> digits(n);
  for (std::size_t index = 0; index < outcomes; ++index) {
    std::size_t rest = index;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = rest % T;
      rest /= T;
    }

    std::vector<int> n_dz(D * T, 0), doc_pos(D, 0);
    std::vector<int> n_zw(T * V, 0), n_z(T, 0);
    std::vector<int> n_zcw(T * C * V, 0), n_zc(T * C, 0);
    double log_joint = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const FlatToken& token = tokens[i];
      const std::size_t z = digits[i];
      const double doc_part = (n_dz[token.doc * T + z] + alpha[z]) /
                              (doc_pos[token.doc] + alpha_sum);
      double word_part;
      if (partition.specific(token.word)) {
        word_part =
            (n_zcw[(z * C + token.collection) * V + token.word] + hyper.delta) /
            (n_zc[z * C + token.collection] + v_sigma * hyper.delta);
        ++n_zcw[(z * C + token.collection) * V + token.word];
        ++n_zc[z * C + token.collection];
      } else {
        word_part = (n_zw[z * V + token.word] + hyper.beta) /
                    (n_z[z] + v_phi * hyper.beta);
        ++n_zw[z * V + token.word];
        ++n_z[z];
      }
      log_joint += std::log(doc_part * word_part);
      ++n_dz[token.doc * T + z];
      ++doc_pos[token.doc];
    }
    logs[index] = log_joint;
  }
  return normalize_logs(std::move(logs));
}

std::vector<double> enumerate_cclda_posterior(const Corpus& corpus,
                                              const Hyperparameters& hyper) {
  const auto tokens = flatten(corpus);
  const auto n = tokens.size();
  const auto T = static_cast<std::size_t>(hyper.topics);
  const std::size_t base = 2 * T;
  const std::size_t V = corpus.vocabulary_size();
  const std::size_t C = corpus.num_collections();
  const std::size_t D = corpus.num_documents();
  const auto alpha = hyper.alpha_vector();
  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);

  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) outcomes *= base;

  std::vector<double> logs(outcomes);
  std::vector<std::size_t> digits(n);
  for (std::size_t index = 0; index < outcomes; ++index) {
    std::size_t rest = index;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = rest % base;
      rest /= base;
    }

    std::vector<int> n_dz(D * T, 0), doc_pos(D, 0);
    std::vector<int> n_zw(T * V, 0), n_z(T, 0);
    std::vector<int> n_zcw(T * C * V, 0), n_zc(T * C, 0);
    std::vector<int> n_x(T * C, 0), n_notx(T * C, 0);
    double log_joint = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const FlatToken& token = tokens[i];
      const std::size_t z = digits[i] / 2;
      const bool x = (digits[i] & 1) != 0;
      const std::size_t zc = z * C + token.collection;
      const double doc_part = (n_dz[token.doc * T + z] + alpha[z]) /
                              (doc_pos[token.doc] + alpha_sum);
      const double x_total =
          n_x[zc] + n_notx[zc] + hyper.gamma0 + hyper.gamma1;
      double word_part;
      if (x) {
        word_part = ((n_x[zc] + hyper.gamma1) / x_total) *
                    (n_zcw[zc * V + token.word] + hyper.delta) /
                    (n_zc[zc] + V * hyper.delta);
        ++n_x[zc];
        ++n_zcw[zc * V + token.word];
        ++n_zc[zc];
      } else {
        word_part = ((n_notx[zc] + hyper.gamma0) / x_total) *
                    (n_zw[z * V + token.word] + hyper.beta) /
                    (n_z[z] + V * hyper.beta);
        ++n_notx[zc];
        ++n_zw[z * V + token.word];
        ++n_z[z];
      }
      log_joint += std::log(doc_part * word_part);
      ++n_dz[token.doc * T + z];
      ++doc_pos[token.doc];
    }
    logs[index] = log_joint;
  }
  return normalize_logs(std::move(logs));
}

std::size_t encode_assignment(const ModelState& state, int base) {
  std::size_t index = 0;
  for (std::size_t d = 0; d < state.z_assign.size(); ++d) {
    for (std::size_t i = 0; i < state.z_assign[d].size(); ++i) {
      std::size_t digit = static_cast<std::size_t>(state.z_assign[d][i]);
      if (!state.x_assign.empty()) {
        digit = 2 * digit + state.x_assign[d][i];
      }
      index = index * static_cast<std::size_t>(base) + digit;
    }
  }
  return index;
}

std::vector<double> enumerate_foldin_theta_mean(
    const Table2<double>& p_wz, const std::vector<double>& alpha) {
  const std::size_t n = p_wz.rows();
  const std::size_t T = alpha.size();
  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);

  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) outcomes *= T;

  std::vector<std::size_t> assignment(n);
  std::vector<double> theta_mean(T, 0.0);
  double total_weight = 0.0;
  for (std::size_t index = 0; index < outcomes; ++index) {
    std::size_t rest = index;
    for (std::size_t i = n; i-- > 0;) {
      assignment[i] = rest % T;
      rest /= T;
    }
    std::vector<int> counts(T, 0);
    double weight = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t z = assignment[i];
      weight *= (counts[z] + alpha[z]) / (static_cast<double>(i) + alpha_sum);
      weight *= p_wz(i, z);
      ++counts[z];
    }
    total_weight += weight;
    const double denom = static_cast<double>(n) + alpha_sum;
    for (std::size_t z = 0; z < T; ++z) {
      theta_mean[z] += weight * (counts[z] + alpha[z]) / denom;
    }
  }
  for (double& v : theta_mean) v /= total_weight;
  return theta_mean;
}

}  // namespace cctopics::testing
