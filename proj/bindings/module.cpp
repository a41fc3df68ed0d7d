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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "cctopics/errors.hpp"
#include "cctopics/eval.hpp"
#include "cctopics/model.hpp"
#include "cctopics/sampler_cclda.hpp"
#include "cctopics/sampler_entropy.hpp"
#include "cctopics/termhood.hpp"

namespace py = pybind11;
using namespace cctopics;

namespace {

// Model handle for python: trained state plus the training trace.
struct PyModel {
  ModelState state;
  std::vector<double> log_likelihood_trace;
};

Hyperparameters hyper_from_kwargs(int topics, double alpha,
                                  double alpha_background, int background_topic,
                                  double beta, double delta, double gamma0,
                                  double gamma1, int burn_in, int samples,
                                  int lag, std::uint64_t seed) {
  Hyperparameters hyper;
  hyper.topics = topics;
  hyper.alpha = alpha;
  hyper.alpha_background = alpha_background;
  hyper.background_topic = background_topic;
  hyper.beta = beta;
  hyper.delta = delta;
  hyper.gamma0 = gamma0;
  hyper.gamma1 = gamma1;
  hyper.burn_in = burn_in;
  hyper.samples = samples;
  hyper.lag = lag;
  hyper.seed = seed;
  return hyper;
}

py::list report_to_python(const ModelState& state, const TopicReport& report) {
  py::list topics;
  for (std::size_t z = 0; z < report.independent.size(); ++z) {
    py::dict topic;
    py::list independent;
    for (const auto& entry : report.independent[z]) {
      independent.append(py::make_tuple(state.vocab.token(entry.word),
                                        entry.probability));
    }
    topic["independent"] = independent;
    py::dict specific;
    for (std::size_t c = 0; c < state.num_collections(); ++c) {
      py::list words;
      for (const auto& entry : report.specific[z][c]) {
        words.append(py::make_tuple(state.vocab.token(entry.word),
                                    entry.probability));
      }
      specific[py::str(state.collections[c])] = words;
    }
    topic["specific"] = specific;
    topics.append(topic);
  }
  return topics;
}

CollectionId collection_id_of(const ModelState& state,
                              const std::string& name) {
  for (std::size_t c = 0; c < state.collections.size(); ++c) {
    if (state.collections[c] == name) return static_cast<CollectionId>(c);
  }
  throw ConfigError("unknown collection '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "cross-collection topic modeling with entropy-based vocabulary "
            "partitioning";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

  py::class_<Corpus>(m, "Corpus")
      .def_property_readonly("num_documents", &Corpus::num_documents)
      .def_property_readonly("num_collections", &Corpus::num_collections)
      .def_property_readonly("vocabulary_size", &Corpus::vocabulary_size)
      .def_property_readonly("total_tokens", &Corpus::total_tokens)
      .def_property_readonly("collections", &Corpus::collections)
      .def("token_count",
           [](const Corpus& corpus, const std::string& token) {
             const auto id = corpus.vocabulary().find(token);
             return id ? corpus.token_count(*id) : 0;
           },
           py::arg("token"))
      .def("__repr__", [](const Corpus& corpus) {
        return "<cctopics.Corpus documents=" +
               std::to_string(corpus.num_documents()) + " collections=" +
               std::to_string(corpus.num_collections()) + " vocabulary=" +
               std::to_string(corpus.vocabulary_size()) + ">";
      });

  m.def(
      "load_corpus",
      [](const std::string& path, std::optional<std::string> stopwords,
         int min_token_len) {
        LoadOptions options;
        if (stopwords) options.stopwords = *stopwords;
        options.min_token_len = min_token_len;
        return load_corpus(path, options);
      },
      py::arg("path"), py::arg("stopwords") = std::nullopt,
      py::arg("min_token_len") = 1,
      "Load a line-delimited corpus file (one JSON record per document).");

  m.def(
      "corpus_from_documents",
      [](const std::vector<
          std::tuple<std::string, std::string, std::vector<std::string>>>&
             documents) {
        std::vector<TokenizedRecord> records;
        records.reserve(documents.size());
        for (const auto& [id, collection, tokens] : documents) {
          records.push_back({id, collection, tokens});
        }
        return build_corpus(records);
      },
      py::arg("documents"),
      "Build a corpus from (id, collection, tokens) tuples.");

  m.def(
      "split_folds",
      [](const Corpus& corpus, int k, std::uint64_t seed) {
        std::vector<std::pair<Corpus, Corpus>> folds;
        for (auto& fold : split_folds(corpus, k, seed)) {
          folds.emplace_back(std::move(fold.train), std::move(fold.test));
        }
        return folds;
      },
      py::arg("corpus"), py::arg("k"), py::arg("seed") = 42,
      "Stratified k-fold split; returns (train, test) corpus pairs.");

  m.def("normalized_entropy",
        [](const std::vector<double>& posterior, int collections) {
          return normalized_entropy(posterior, collections);
        },
        py::arg("posterior"), py::arg("collections"));
  m.def("hapax_threshold", &hapax_threshold, py::arg("collections"));

  m.def(
      "entropy_rank",
      [](const Corpus& corpus, std::optional<double> threshold) {
        const auto stats = estimate_posteriors(corpus);
        const auto partition = partition_vocabulary(corpus, threshold);
        std::vector<std::size_t> order(stats.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                    if (stats[a].termhood != stats[b].termhood) {
                      return stats[a].termhood > stats[b].termhood;
                    }
                    return a < b;
                  });
        py::list rows;
        for (std::size_t i : order) {
          py::dict row;
          row["word"] =
              corpus.vocabulary().token(static_cast<TokenId>(i));
          py::list counts;
          for (std::size_t c = 0; c < corpus.num_collections(); ++c) {
            counts.append(corpus.token_count(static_cast<TokenId>(i),
                                             static_cast<CollectionId>(c)));
          }
          row["counts"] = counts;
          row["entropy"] = stats[i].entropy;
          row["termhood"] = stats[i].termhood;
          row["specific"] = partition.specific(static_cast<TokenId>(i));
          rows.append(row);
        }
        return rows;
      },
      py::arg("corpus"), py::arg("threshold") = std::nullopt,
      "Vocabulary ranked by termhood descending.");

  py::class_<VocabularyPartition>(m, "VocabularyPartition")
      .def_readonly("threshold", &VocabularyPartition::threshold)
      .def_readonly("gamma", &VocabularyPartition::gamma)
      .def_property_readonly("specific_count",
                             [](const VocabularyPartition& partition) {
                               return partition.specific_count;
                             })
      .def_property_readonly("independent_count",
                             [](const VocabularyPartition& partition) {
                               return partition.independent_count;
                             });

  m.def(
      "partition_vocabulary",
      [](const Corpus& corpus, std::optional<double> threshold) {
        return partition_vocabulary(corpus, threshold);
      },
      py::arg("corpus"), py::arg("threshold") = std::nullopt,
      "Entropy split of the vocabulary; default threshold is the hapax "
      "value.");

  py::class_<PyModel>(m, "Model")
      .def_property_readonly(
          "variant",
          [](const PyModel& model) { return variant_name(model.state.variant); })
      .def_property_readonly(
          "topics", [](const PyModel& model) { return model.state.num_topics(); })
      .def_property_readonly(
          "collections",
          [](const PyModel& model) { return model.state.collections; })
      .def_property_readonly(
          "gamma", [](const PyModel& model) { return model.state.gamma; })
      .def_property_readonly("threshold",
                             [](const PyModel& model) {
                               return model.state.partition.threshold;
                             })
      .def_property_readonly("log_likelihood_trace",
                             [](const PyModel& model) {
                               return model.log_likelihood_trace;
                             })
      .def(
          "top_words",
          [](const PyModel& model, int k) {
            return report_to_python(model.state, top_words(model.state, k));
          },
          py::arg("k") = 10)
      .def(
          "domain_terms",
          [](const PyModel& model, const std::string& collection, int k) {
            const auto terms = export_domain_terms(
                model.state, collection_id_of(model.state, collection), k);
            py::list result;
            for (const auto& term : terms) {
              result.append(py::make_tuple(model.state.vocab.token(term.word),
                                           term.probability));
            }
            return result;
          },
          py::arg("collection"), py::arg("k") = 10)
      .def(
          "save",
          [](const PyModel& model, const std::string& path) {
            save_model(model.state, path);
          },
          py::arg("path"))
      .def("__repr__", [](const PyModel& model) {
        return "<cctopics.Model variant=" + variant_name(model.state.variant) +
               " topics=" + std::to_string(model.state.num_topics()) + ">";
      });

  m.def(
      "train",
      [](const Corpus& corpus, const std::string& variant, int topics,
         double alpha, double alpha_background, int background_topic,
         double beta, double delta, double gamma0, double gamma1, int burn_in,
         int samples, int lag, std::uint64_t seed,
         std::optional<double> threshold) {
        const auto hyper = hyper_from_kwargs(
            topics, alpha, alpha_background, background_topic, beta, delta,
            gamma0, gamma1, burn_in, samples, lag, seed);
        TrainResult result;
        if (parse_variant(variant) == ModelVariant::entropy_based) {
          const auto partition = partition_vocabulary(corpus, threshold);
          result = train_entropy(corpus, hyper, partition);
        } else {
          result = train_cclda(corpus, hyper);
        }
        PyModel model;
        model.state = std::move(result.state);
        model.log_likelihood_trace.reserve(result.trace.size());
        for (const auto& record : result.trace) {
          model.log_likelihood_trace.push_back(record.log_likelihood);
        }
        return model;
      },
      py::arg("corpus"), py::arg("variant") = "entropy",
      py::arg("topics") = 25, py::arg("alpha") = 1.0,
      py::arg("alpha_background") = 5.0, py::arg("background_topic") = 0,
      py::arg("beta") = 0.01, py::arg("delta") = 0.01,
      py::arg("gamma0") = 1.0, py::arg("gamma1") = 1.0,
      py::arg("burn_in") = 200, py::arg("samples") = 10, py::arg("lag") = 10,
      py::arg("seed") = 42, py::arg("threshold") = std::nullopt,
      py::call_guard<py::gil_scoped_release>(),
      "Train the entropy-based model or the ccLDA baseline.");

  m.def(
      "load_model",
      [](const std::string& path) {
        PyModel model;
        model.state = load_model(path);
        return model;
      },
      py::arg("path"));

  m.def(
      "evaluate",
      [](const PyModel& model, const Corpus& test,
         const std::optional<Corpus>& reference, int fold_in_iterations,
         int top_k, int window, double epsilon, std::uint64_t seed,
         int threads) {
        EvalOptions options;
        options.fold_in.iterations = fold_in_iterations;
        options.top_k = top_k;
        options.coherence.window = window;
        options.coherence.epsilon = epsilon;
        options.seed = seed;
        options.threads = threads;
        options.with_coherence = reference.has_value();
        const auto eval = evaluate_model(
            model.state, test, reference ? &*reference : nullptr, options);
        py::dict result;
        result["accuracy"] = eval.accuracy;
        result["perplexity"] = eval.perplexity;
        if (reference) {
          result["coherence"] = eval.coherence;
          result["per_topic_coherence"] = eval.per_topic_coherence;
        }
        result["test_documents"] = eval.test_documents;
        result["evaluated_documents"] = eval.evaluated_documents;
        result["skipped_empty_documents"] = eval.skipped_empty_documents;
        result["evaluated_tokens"] = eval.evaluated_tokens;
        result["oov_tokens_removed"] = eval.oov_tokens_removed;
        return result;
      },
      py::arg("model"), py::arg("test"), py::arg("reference") = std::nullopt,
      py::arg("fold_in_iterations") = 50, py::arg("top_k") = 10,
      py::arg("window") = 110, py::arg("epsilon") = 1e-12,
      py::arg("seed") = 42, py::arg("threads") = 0,
      "Classification accuracy, perplexity and (with a reference corpus) "
      "mixed topic coherence on held-out documents.");

  m.def(
      "coherence_cv",
      [](const std::vector<std::string>& words, const Corpus& reference,
         int window, double epsilon) {
        CoherenceOptions options;
        options.window = window;
        options.epsilon = epsilon;
        const auto score = coherence_cv(words, reference, options);
        return py::make_tuple(score.value, score.missing_words);
      },
      py::arg("words"), py::arg("reference"), py::arg("window") = 110,
      py::arg("epsilon") = 1e-12,
      "C_V coherence of a word set; returns (score, missing_words).");
}
