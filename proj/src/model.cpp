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

#include "cctopics/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "cctopics/errors.hpp"

namespace cctopics {

std::string variant_name(ModelVariant variant) {
  return variant == ModelVariant::entropy_based ? "entropy" : "cclda";
}

ModelVariant parse_variant(const std::string& name) {
  if (name == "entropy") return ModelVariant::entropy_based;
  if (name == "cclda") return ModelVariant::cclda;
  throw ConfigError("unknown model variant '" + name +
                    "' (expected 'entropy' or 'cclda')");
}

std::vector<double> Hyperparameters::alpha_vector() const {
  std::vector<double> v(topics, alpha);
  if (background_topic >= 0 && background_topic < topics) {
    v[background_topic] = alpha_background;
  }
  return v;
}

double Hyperparameters::alpha_sum() const {
  const auto v = alpha_vector();
  return std::accumulate(v.begin(), v.end(), 0.0);
}

void Hyperparameters::validate() const {
  if (topics < 1) throw ConfigError("topic count must be at least 1");
  if (alpha <= 0.0 || beta <= 0.0 || delta <= 0.0 || gamma0 <= 0.0 ||
      gamma1 <= 0.0) {
    throw ConfigError("all priors must be positive");
  }
  if (background_topic >= 0 && alpha_background <= 0.0) {
    throw ConfigError("background alpha must be positive");
  }
  if (background_topic >= topics) {
    throw ConfigError("background topic index out of range");
  }
  if (burn_in < 1 || samples < 1 || lag < 1) {
    throw ConfigError("burn_in, samples and lag must be at least 1");
  }
}

ModelState init_state(const Corpus& corpus, const Hyperparameters& hyper,
                      ModelVariant variant,
                      const VocabularyPartition* partition, Rng& rng) {
  hyper.validate();
  const auto T = static_cast<std::size_t>(hyper.topics);
  const std::size_t V = corpus.vocabulary_size();
  const std::size_t C = corpus.num_collections();
  const std::size_t D = corpus.num_documents();

  ModelState state;
  state.variant = variant;
  state.hyper = hyper;
  state.alpha = hyper.alpha_vector();
  state.vocab = corpus.vocabulary();
  state.collections = corpus.collections();

  if (variant == ModelVariant::entropy_based) {
    if (partition == nullptr) {
      throw ConfigError("the entropy variant requires a vocabulary partition");
    }
    if (partition->is_specific.size() != V) {
      throw DataError("partition vocabulary mismatch: partition covers " +
                      std::to_string(partition->is_specific.size()) +
                      " words, corpus has " + std::to_string(V));
    }
    state.partition = *partition;
    state.gamma = partition->gamma;
    state.phi_vocab_size =
        static_cast<std::int64_t>(partition->independent_count);
    state.sigma_vocab_size =
        static_cast<std::int64_t>(partition->specific_count);
  } else {
    state.phi_vocab_size = static_cast<std::int64_t>(V);
    state.sigma_vocab_size = static_cast<std::int64_t>(V);
  }

  state.n_dz = Table2<std::int32_t>(D, T);
  state.n_zw_phi = Table2<std::int32_t>(T, V);
  state.n_z_phi.assign(T, 0);
  state.n_zcw_sigma = Table3<std::int32_t>(T, C, V);
  state.n_zc_sigma = Table2<std::int32_t>(T, C);
  if (variant == ModelVariant::cclda) {
    state.n_zc_x = Table2<std::int32_t>(T, C);
    state.n_zc_notx = Table2<std::int32_t>(T, C);
    state.x_assign.resize(D);
  }
  state.z_assign.resize(D);
  state.doc_len.resize(D);

  for (std::size_t d = 0; d < D; ++d) {
    const Document& doc = corpus.documents()[d];
    const auto c = static_cast<std::size_t>(doc.collection);
    state.doc_len[d] = static_cast<std::int32_t>(doc.tokens.size());
    state.z_assign[d].resize(doc.tokens.size());
    if (variant == ModelVariant::cclda) {
      state.x_assign[d].resize(doc.tokens.size());
    }
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const TokenId w = doc.tokens[i];
      const auto z =
          static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(T)));
      state.z_assign[d][i] = static_cast<std::int32_t>(z);
      ++state.n_dz(d, z);
      bool specific;
      if (variant == ModelVariant::cclda) {
        specific = rng.uniform_int(2) == 1;
        state.x_assign[d][i] = specific ? 1 : 0;
        if (specific) {
          ++state.n_zc_x(z, c);
        } else {
          ++state.n_zc_notx(z, c);
        }
      } else {
        specific = state.partition.specific(w);
      }
      if (specific) {
        ++state.n_zcw_sigma(z, c, w);
        ++state.n_zc_sigma(z, c);
      } else {
        ++state.n_zw_phi(z, w);
        ++state.n_z_phi[z];
      }
    }
  }
  return state;
}

PointEstimates point_estimates(const ModelState& state) {
  const auto T = static_cast<std::size_t>(state.num_topics());
  const std::size_t V = state.vocab_size();
  const std::size_t C = state.num_collections();
  const std::size_t D = state.num_documents();
  const double alpha_sum =
      std::accumulate(state.alpha.begin(), state.alpha.end(), 0.0);

  PointEstimates est;
  est.theta = Table2<double>(D, T);
  for (std::size_t d = 0; d < D; ++d) {
    const double denom = state.doc_len[d] + alpha_sum;
    for (std::size_t z = 0; z < T; ++z) {
      est.theta(d, z) = (state.n_dz(d, z) + state.alpha[z]) / denom;
    }
  }

  const bool entropy = state.variant == ModelVariant::entropy_based;
  est.phi = Table2<double>(T, V);
  const double v_phi = static_cast<double>(state.phi_vocab_size);
  for (std::size_t z = 0; z < T; ++z) {
    const double denom = state.n_z_phi[z] + v_phi * state.hyper.beta;
    for (std::size_t w = 0; w < V; ++w) {
      if (entropy && state.partition.specific(static_cast<TokenId>(w))) {
        continue;  // outside the phi support
      }
      est.phi(z, w) = (state.n_zw_phi(z, w) + state.hyper.beta) / denom;
    }
  }

  est.sigma = Table3<double>(T, C, V);
  const double v_sigma = static_cast<double>(state.sigma_vocab_size);
  for (std::size_t z = 0; z < T; ++z) {
    for (std::size_t c = 0; c < C; ++c) {
      const double denom = state.n_zc_sigma(z, c) + v_sigma * state.hyper.delta;
      for (std::size_t w = 0; w < V; ++w) {
        if (entropy && !state.partition.specific(static_cast<TokenId>(w))) {
          continue;
        }
        est.sigma(z, c, w) =
            (state.n_zcw_sigma(z, c, w) + state.hyper.delta) / denom;
      }
    }
  }

  if (state.variant == ModelVariant::cclda) {
    est.psi = Table2<double>(T, C);
    for (std::size_t z = 0; z < T; ++z) {
      for (std::size_t c = 0; c < C; ++c) {
        est.psi(z, c) =
            (state.n_zc_x(z, c) + state.hyper.gamma1) /
            (state.n_zc_x(z, c) + state.n_zc_notx(z, c) + state.hyper.gamma0 +
             state.hyper.gamma1);
      }
    }
  }
  return est;
}

void audit_counts(const ModelState& state, const Corpus& corpus) {
  const auto fail = [](const std::string& what) {
    throw DataError("count audit failed: " + what);
  };
  const auto T = static_cast<std::size_t>(state.num_topics());
  const std::size_t V = state.vocab_size();
  const std::size_t C = state.num_collections();
  const std::size_t D = state.num_documents();
  if (corpus.num_documents() != D) fail("document count mismatch");

  std::int64_t mass = 0;
  for (std::size_t d = 0; d < D; ++d) {
    std::int64_t row = 0;
    for (std::size_t z = 0; z < T; ++z) row += state.n_dz(d, z);
    if (row != static_cast<std::int64_t>(corpus.documents()[d].tokens.size())) {
      fail("n_dz row " + std::to_string(d) + " != document length");
    }
    mass += row;
  }

  std::int64_t phi_mass = 0;
  for (std::size_t z = 0; z < T; ++z) {
    std::int64_t row = 0;
    for (std::size_t w = 0; w < V; ++w) {
      const auto count = state.n_zw_phi(z, w);
      if (count < 0) fail("negative phi count");
      if (count > 0 && state.variant == ModelVariant::entropy_based &&
          state.partition.specific(static_cast<TokenId>(w))) {
        fail("phi count on a collection-specific word");
      }
      row += count;
    }
    if (row != state.n_z_phi[z]) fail("n_z_phi[z] != sum of n_zw_phi[z,·]");
    phi_mass += row;
  }

  std::int64_t sigma_mass = 0;
  for (std::size_t z = 0; z < T; ++z) {
    for (std::size_t c = 0; c < C; ++c) {
      std::int64_t cell = 0;
      for (std::size_t w = 0; w < V; ++w) {
        const auto count = state.n_zcw_sigma(z, c, w);
        if (count < 0) fail("negative sigma count");
        if (count > 0 && state.variant == ModelVariant::entropy_based &&
            !state.partition.specific(static_cast<TokenId>(w))) {
          fail("sigma count on a collection-independent word");
        }
        cell += count;
      }
      if (cell != state.n_zc_sigma(z, c)) {
        fail("n_zc_sigma[z,c] != sum of n_zcw_sigma[z,c,·]");
      }
      sigma_mass += cell;
    }
  }

  if (phi_mass + sigma_mass != mass || mass != corpus.total_tokens()) {
    fail("phi and sigma table mass does not add up to the corpus token count");
  }

  if (state.variant == ModelVariant::cclda) {
    for (std::size_t z = 0; z < T; ++z) {
      std::int64_t notx = 0;
      for (std::size_t c = 0; c < C; ++c) {
        if (state.n_zc_x(z, c) != state.n_zc_sigma(z, c)) {
          fail("n_zc_x[z,c] != n_zc_sigma[z,c]");
        }
        notx += state.n_zc_notx(z, c);
      }
      if (notx != state.n_z_phi[z]) fail("sum_c n_zc_notx != n_z_phi");
    }
  }
}

// L(w | theta, c) under the given estimates. For the entropy variant the
// disjoint supports make exactly one of the two bracket terms nonzero.
double word_likelihood_under(const ModelState& state,
                             const PointEstimates& est,
                             std::span<const double> theta, TokenId w,
                             CollectionId c) {
  const auto T = static_cast<std::size_t>(state.num_topics());
  double likelihood = 0.0;
  if (state.variant == ModelVariant::entropy_based) {
    if (state.partition.specific(w)) {
      for (std::size_t z = 0; z < T; ++z) {
        likelihood += theta[z] * est.sigma(z, c, w);
      }
      likelihood *= state.gamma;
    } else {
      for (std::size_t z = 0; z < T; ++z) {
        likelihood += theta[z] * est.phi(z, w);
      }
      likelihood *= 1.0 - state.gamma;
    }
  } else {
    for (std::size_t z = 0; z < T; ++z) {
      const double p_x = est.psi(z, c);
      likelihood += theta[z] * ((1.0 - p_x) * est.phi(z, w) +
                                p_x * est.sigma(z, c, w));
    }
  }
  return likelihood;
}

double training_log_likelihood(const ModelState& state, const Corpus& corpus) {
  const PointEstimates est = point_estimates(state);
  const auto T = static_cast<std::size_t>(state.num_topics());
  std::vector<double> theta(T);
  double total = 0.0;
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    const Document& doc = corpus.documents()[d];
    for (std::size_t z = 0; z < T; ++z) theta[z] = est.theta(d, z);
    for (TokenId w : doc.tokens) {
      total += std::log(
          word_likelihood_under(state, est, theta, w, doc.collection));
    }
  }
  return total;
}

namespace {

std::vector<WeightedWord> top_of(const std::vector<WeightedWord>& candidates,
                                 int k) {
  std::vector<WeightedWord> sorted = candidates;
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedWord& a, const WeightedWord& b) {
              if (a.probability != b.probability) {
                return a.probability > b.probability;
              }
              return a.word < b.word;
            });
  if (sorted.size() > static_cast<std::size_t>(k)) sorted.resize(k);
  return sorted;
}

}  // namespace

TopicReport top_words(const ModelState& state, int k) {
  if (k < 1) throw ConfigError("top-word count must be at least 1");
  PointEstimates computed;
  const PointEstimates& est =
      state.averaged ? *state.averaged : (computed = point_estimates(state));

  const auto T = static_cast<std::size_t>(state.num_topics());
  const std::size_t V = state.vocab_size();
  const std::size_t C = state.num_collections();
  const bool entropy = state.variant == ModelVariant::entropy_based;

  TopicReport report;
  report.top_k = k;
  report.independent.resize(T);
  report.specific.assign(T, std::vector<std::vector<WeightedWord>>(C));

  std::vector<WeightedWord> candidates;
  for (std::size_t z = 0; z < T; ++z) {
    candidates.clear();
    for (std::size_t w = 0; w < V; ++w) {
      if (entropy && state.partition.specific(static_cast<TokenId>(w))) {
        continue;
      }
      candidates.push_back(
          WeightedWord{static_cast<TokenId>(w), est.phi(z, w)});
    }
    report.independent[z] = top_of(candidates, k);

    for (std::size_t c = 0; c < C; ++c) {
      candidates.clear();
      for (std::size_t w = 0; w < V; ++w) {
        if (entropy && !state.partition.specific(static_cast<TokenId>(w))) {
          continue;
        }
        candidates.push_back(
            WeightedWord{static_cast<TokenId>(w), est.sigma(z, c, w)});
      }
      report.specific[z][c] = top_of(candidates, k);
    }
  }
  return report;
}

std::vector<WeightedWord> export_domain_terms(const ModelState& state,
                                              CollectionId collection, int k) {
  if (state.variant != ModelVariant::entropy_based) {
    throw ConfigError(
        "domain terms require the entropy variant; ccLDA word distributions "
        "have no clear-cut specific support");
  }
  if (collection < 0 ||
      static_cast<std::size_t>(collection) >= state.num_collections()) {
    throw ConfigError("collection id out of range");
  }
  if (k < 1) throw ConfigError("term count must be at least 1");

  PointEstimates computed;
  const PointEstimates& est =
      state.averaged ? *state.averaged : (computed = point_estimates(state));

  // P(z): token-mass share of each topic under theta.
  const auto T = static_cast<std::size_t>(state.num_topics());
  std::vector<double> p_z(T, 0.0);
  double mass = 0.0;
  for (std::size_t d = 0; d < state.num_documents(); ++d) {
    for (std::size_t z = 0; z < T; ++z) {
      p_z[z] += state.doc_len[d] * est.theta(d, z);
    }
    mass += state.doc_len[d];
  }
  for (double& p : p_z) p /= mass;

  std::vector<WeightedWord> candidates;
  for (std::size_t w = 0; w < state.vocab_size(); ++w) {
    if (!state.partition.specific(static_cast<TokenId>(w))) continue;
    double marginal = 0.0;
    for (std::size_t z = 0; z < T; ++z) {
      marginal += p_z[z] * est.sigma(z, collection, w);
    }
    candidates.push_back(WeightedWord{static_cast<TokenId>(w), marginal});
  }
  return top_of(candidates, k);
}

// ---------------------------------------------------------------------------
// Serialization: "CCTM" magic, u32 format version, JSON header, raw
// little-endian sections, trailing FNV-1a 64 checksum over everything before
// it.

namespace {

constexpr std::uint32_t kFormatVersion = 1;
constexpr char kMagic[4] = {'C', 'C', 'T', 'M'};

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= data[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void raw(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), bytes, bytes + size);
  }
  void u8(std::uint8_t v) { raw(&v, 1); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void u64(std::uint64_t v) { raw(&v, 8); }
  void i64(std::int64_t v) { raw(&v, 8); }
  void f64(double v) { raw(&v, 8); }
  void string(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  template <typename T>
  void array(const std::vector<T>& v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(T));
  }
  void table2_i32(const Table2<std::int32_t>& t) {
    u64(t.rows());
    u64(t.cols());
    raw(t.data().data(), t.data().size() * sizeof(std::int32_t));
  }
  void table2_f64(const Table2<double>& t) {
    u64(t.rows());
    u64(t.cols());
    raw(t.data().data(), t.data().size() * sizeof(double));
  }
  void table3_i32(const Table3<std::int32_t>& t) {
    u64(t.dim0());
    u64(t.dim1());
    u64(t.dim2());
    raw(t.data().data(), t.data().size() * sizeof(std::int32_t));
  }
  void table3_f64(const Table3<double>& t) {
    u64(t.dim0());
    u64(t.dim1());
    u64(t.dim2());
    raw(t.data().data(), t.data().size() * sizeof(double));
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  void raw(void* out, std::size_t size) {
    if (pos_ + size > size_) throw DataError("truncated model file");
    std::memcpy(out, data_ + pos_, size);
    pos_ += size;
  }
  std::uint8_t u8() {
    std::uint8_t v;
    raw(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    raw(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    raw(&v, 8);
    return v;
  }
  std::int64_t i64() {
    std::int64_t v;
    raw(&v, 8);
    return v;
  }
  double f64() {
    double v;
    raw(&v, 8);
    return v;
  }
  std::string string() {
    const std::uint32_t size = u32();
    std::string s(size, '\0');
    raw(s.data(), size);
    return s;
  }
  template <typename T>
  std::vector<T> array() {
    const std::uint64_t count = u64();
    check_count(count, sizeof(T));
    std::vector<T> v(count);
    raw(v.data(), count * sizeof(T));
    return v;
  }
  Table2<std::int32_t> table2_i32() {
    const auto rows = u64();
    const auto cols = u64();
    check_count(rows * cols, sizeof(std::int32_t));
    Table2<std::int32_t> t(rows, cols);
    raw(t.data().data(), t.data().size() * sizeof(std::int32_t));
    return t;
  }
  Table2<double> table2_f64() {
    const auto rows = u64();
    const auto cols = u64();
    check_count(rows * cols, sizeof(double));
    Table2<double> t(rows, cols);
    raw(t.data().data(), t.data().size() * sizeof(double));
    return t;
  }
  Table3<std::int32_t> table3_i32() {
    const auto d0 = u64();
    const auto d1 = u64();
    const auto d2 = u64();
    check_count(d0 * d1 * d2, sizeof(std::int32_t));
    Table3<std::int32_t> t(d0, d1, d2);
    raw(t.data().data(), t.data().size() * sizeof(std::int32_t));
    return t;
  }
  Table3<double> table3_f64() {
    const auto d0 = u64();
    const auto d1 = u64();
    const auto d2 = u64();
    check_count(d0 * d1 * d2, sizeof(double));
    Table3<double> t(d0, d1, d2);
    raw(t.data().data(), t.data().size() * sizeof(double));
    return t;
  }

 private:
  void check_count(std::uint64_t count, std::size_t elem) {
    if (count * elem > size_ - pos_) throw DataError("truncated model file");
  }
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

nlohmann::json hyper_to_json(const Hyperparameters& hyper) {
  return nlohmann::json{{"topics", hyper.topics},
                        {"alpha", hyper.alpha},
                        {"alpha_background", hyper.alpha_background},
                        {"background_topic", hyper.background_topic},
                        {"beta", hyper.beta},
                        {"delta", hyper.delta},
                        {"gamma0", hyper.gamma0},
                        {"gamma1", hyper.gamma1},
                        {"burn_in", hyper.burn_in},
                        {"samples", hyper.samples},
                        {"lag", hyper.lag},
                        {"seed", hyper.seed}};
}

Hyperparameters hyper_from_json(const nlohmann::json& j) {
  Hyperparameters hyper;
  hyper.topics = j.at("topics").get<int>();
  hyper.alpha = j.at("alpha").get<double>();
  hyper.alpha_background = j.at("alpha_background").get<double>();
  hyper.background_topic = j.at("background_topic").get<int>();
  hyper.beta = j.at("beta").get<double>();
  hyper.delta = j.at("delta").get<double>();
  hyper.gamma0 = j.at("gamma0").get<double>();
  hyper.gamma1 = j.at("gamma1").get<double>();
  hyper.burn_in = j.at("burn_in").get<int>();
  hyper.samples = j.at("samples").get<int>();
  hyper.lag = j.at("lag").get<int>();
  hyper.seed = j.at("seed").get<std::uint64_t>();
  return hyper;
}

}  // namespace

std::vector<std::uint8_t> encode_model(const ModelState& state) {
  std::vector<std::uint8_t> bytes;
  Writer w(bytes);
  w.raw(kMagic, 4);
  w.u32(kFormatVersion);

  nlohmann::json header{
      {"format_version", kFormatVersion},
      {"variant", variant_name(state.variant)},
      {"hyper", hyper_to_json(state.hyper)},
      {"vocab_size", state.vocab_size()},
      {"collections", state.num_collections()},
      {"documents", state.num_documents()},
  };
  w.string(header.dump());

  w.u64(state.vocab.size());
  for (const auto& token : state.vocab.tokens()) w.string(token);
  w.u64(state.collections.size());
  for (const auto& name : state.collections) w.string(name);
  w.array(state.alpha);

  const bool has_partition = state.variant == ModelVariant::entropy_based;
  w.u8(has_partition ? 1 : 0);
  if (has_partition) {
    w.f64(state.partition.threshold);
    w.f64(state.partition.gamma);
    w.array(state.partition.is_specific);
    w.array(state.partition.entropies);
  }
  w.f64(state.gamma);

  w.u64(state.z_assign.size());
  for (const auto& doc : state.z_assign) w.array(doc);
  w.u8(state.x_assign.empty() ? 0 : 1);
  if (!state.x_assign.empty()) {
    w.u64(state.x_assign.size());
    for (const auto& doc : state.x_assign) w.array(doc);
  }

  w.table2_i32(state.n_dz);
  w.table2_i32(state.n_zw_phi);
  w.array(state.n_z_phi);
  w.table3_i32(state.n_zcw_sigma);
  w.table2_i32(state.n_zc_sigma);
  w.u8(state.variant == ModelVariant::cclda ? 1 : 0);
  if (state.variant == ModelVariant::cclda) {
    w.table2_i32(state.n_zc_x);
    w.table2_i32(state.n_zc_notx);
  }
  w.array(state.doc_len);
  w.i64(state.phi_vocab_size);
  w.i64(state.sigma_vocab_size);

  w.u8(state.averaged ? 1 : 0);
  if (state.averaged) {
    w.table2_f64(state.averaged->theta);
    w.table2_f64(state.averaged->phi);
    w.table3_f64(state.averaged->sigma);
    w.table2_f64(state.averaged->psi);
  }
  w.string(state.config_echo);

  w.u64(fnv1a64(bytes.data(), bytes.size()));
  return bytes;
}

ModelState decode_model(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 + 4 + 8) throw DataError("truncated model file");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DataError("not a cctopics model file (bad magic)");
  }
  std::uint32_t version;
  std::memcpy(&version, bytes.data() + 4, 4);
  if (version != kFormatVersion) {
    throw DataError("model file format version " + std::to_string(version) +
                    " not supported (expected " +
                    std::to_string(kFormatVersion) + ")");
  }
  std::uint64_t stored_checksum;
  std::memcpy(&stored_checksum, bytes.data() + bytes.size() - 8, 8);
  if (fnv1a64(bytes.data(), bytes.size() - 8) != stored_checksum) {
    throw DataError("model file checksum mismatch (corrupted file)");
  }

  Reader r(bytes.data() + 8, bytes.size() - 16);
  ModelState state;
  const auto header = nlohmann::json::parse(r.string());
  state.variant = parse_variant(header.at("variant").get<std::string>());
  state.hyper = hyper_from_json(header.at("hyper"));

  const auto vocab_count = r.u64();
  for (std::uint64_t i = 0; i < vocab_count; ++i) {
    state.vocab.intern(r.string());
  }
  const auto collection_count = r.u64();
  for (std::uint64_t i = 0; i < collection_count; ++i) {
    state.collections.push_back(r.string());
  }
  state.alpha = r.array<double>();

  if (r.u8() != 0) {
    state.partition.threshold = r.f64();
    state.partition.gamma = r.f64();
    state.partition.is_specific = r.array<std::uint8_t>();
    state.partition.entropies = r.array<double>();
    state.partition.specific_count = static_cast<std::size_t>(
        std::count(state.partition.is_specific.begin(),
                   state.partition.is_specific.end(), 1));
    state.partition.independent_count =
        state.partition.is_specific.size() - state.partition.specific_count;
  }
  state.gamma = r.f64();

  state.z_assign.resize(r.u64());
  for (auto& doc : state.z_assign) doc = r.array<std::int32_t>();
  if (r.u8() != 0) {
    state.x_assign.resize(r.u64());
    for (auto& doc : state.x_assign) doc = r.array<std::uint8_t>();
  }

  state.n_dz = r.table2_i32();
  state.n_zw_phi = r.table2_i32();
  state.n_z_phi = r.array<std::int32_t>();
  state.n_zcw_sigma = r.table3_i32();
  state.n_zc_sigma = r.table2_i32();
  if (r.u8() != 0) {
    state.n_zc_x = r.table2_i32();
    state.n_zc_notx = r.table2_i32();
  }
  state.doc_len = r.array<std::int32_t>();
  state.phi_vocab_size = r.i64();
  state.sigma_vocab_size = r.i64();

  if (r.u8() != 0) {
    PointEstimates est;
    est.theta = r.table2_f64();
    est.phi = r.table2_f64();
    est.sigma = r.table3_f64();
    est.psi = r.table2_f64();
    state.averaged = std::move(est);
  }
  state.config_echo = r.string();
  return state;
}

void save_model(const ModelState& state, const std::filesystem::path& path) {
  const auto bytes = encode_model(state);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing model file: " + path.string());
}

ModelState load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_model(bytes);
}

}  // namespace cctopics
