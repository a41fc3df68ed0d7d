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

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cctopics/errors.hpp"
#include "cctopics/eval.hpp"
#include "cctopics/model.hpp"
#include "cctopics/sampler_cclda.hpp"
#include "cctopics/sampler_entropy.hpp"
#include "cctopics/termhood.hpp"

namespace {

using nlohmann::json;

// One flat configuration for every subcommand. A JSON config file seeds the
// values, explicit command-line flags override individual keys, and the
// effective configuration is echoed into every output artifact.
struct Config {
  std::string corpus;
  std::string stopwords;
  int min_token_len = 1;
  std::string variant = "entropy";
  int topics = 25;
  double alpha = 1.0;
  double alpha_background = 5.0;
  int background_topic = 0;
  double beta = 0.01;
  double delta = 0.01;
  double gamma0 = 1.0;
  double gamma1 = 1.0;
  int burn_in = 200;
  int samples = 10;
  int lag = 10;
  std::uint64_t seed = 42;
  double threshold = -1.0;  // < 0 means the hapax default
  int folds = 10;
  int top_k = 10;
  int fold_in_iterations = 50;
  int window = 110;
  double epsilon = 1e-12;
  int threads = 0;
  std::string sweep_mode = "fast";
  int sweep_points = 25;
};

json config_to_json(const Config& c) {
  return json{{"corpus", c.corpus},
              {"stopwords", c.stopwords},
              {"min_token_len", c.min_token_len},
              {"variant", c.variant},
              {"topics", c.topics},
              {"alpha", c.alpha},
              {"alpha_background", c.alpha_background},
              {"background_topic", c.background_topic},
              {"beta", c.beta},
              {"delta", c.delta},
              {"gamma0", c.gamma0},
              {"gamma1", c.gamma1},
              {"burn_in", c.burn_in},
              {"samples", c.samples},
              {"lag", c.lag},
              {"seed", c.seed},
              {"threshold", c.threshold},
              {"folds", c.folds},
              {"top_k", c.top_k},
              {"fold_in_iterations", c.fold_in_iterations},
              {"window", c.window},
              {"epsilon", c.epsilon},
              {"threads", c.threads},
              {"sweep_mode", c.sweep_mode},
              {"sweep_points", c.sweep_points}};
}

void apply_config_file(const std::string& path, Config& c, CLI::App* cmd) {
  std::ifstream in(path);
  if (!in) throw cctopics::ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw cctopics::ConfigError("invalid config file " + path + ": " +
                                e.what());
  }
  // A key from the file applies unless the matching flag was given.
  const auto flag_given = [cmd](const std::string& flag) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  const auto set = [&](const char* key, const std::string& flag, auto& field) {
    if (j.contains(key) && !j[key].is_null() && !flag_given(flag)) {
      field = j[key].get<std::decay_t<decltype(field)>>();
    }
  };
  set("corpus", "--corpus", c.corpus);
  set("stopwords", "--stopwords", c.stopwords);
  set("min_token_len", "--min-token-len", c.min_token_len);
  set("variant", "--variant", c.variant);
  set("topics", "--topics", c.topics);
  set("alpha", "--alpha", c.alpha);
  set("alpha_background", "--alpha-background", c.alpha_background);
  set("background_topic", "--background-topic", c.background_topic);
  set("beta", "--beta", c.beta);
  set("delta", "--delta", c.delta);
  set("gamma0", "--gamma0", c.gamma0);
  set("gamma1", "--gamma1", c.gamma1);
  set("burn_in", "--burn-in", c.burn_in);
  set("samples", "--samples", c.samples);
  set("lag", "--lag", c.lag);
  set("seed", "--seed", c.seed);
  set("threshold", "--threshold", c.threshold);
  set("folds", "--folds", c.folds);
  set("top_k", "--top-k", c.top_k);
  set("fold_in_iterations", "--fold-in-iterations", c.fold_in_iterations);
  set("window", "--window", c.window);
  set("epsilon", "--epsilon", c.epsilon);
  set("threads", "--threads", c.threads);
  set("sweep_mode", "--sweep-mode", c.sweep_mode);
  set("sweep_points", "--sweep-points", c.sweep_points);
}

cctopics::Hyperparameters hyper_of(const Config& c) {
  cctopics::Hyperparameters hyper;
  hyper.topics = c.topics;
  hyper.alpha = c.alpha;
  hyper.alpha_background = c.alpha_background;
  hyper.background_topic = c.background_topic;
  hyper.beta = c.beta;
  hyper.delta = c.delta;
  hyper.gamma0 = c.gamma0;
  hyper.gamma1 = c.gamma1;
  hyper.burn_in = c.burn_in;
  hyper.samples = c.samples;
  hyper.lag = c.lag;
  hyper.seed = c.seed;
  return hyper;
}

cctopics::LoadOptions load_options_of(const Config& c) {
  cctopics::LoadOptions options;
  if (!c.stopwords.empty()) options.stopwords = c.stopwords;
  options.min_token_len = c.min_token_len;
  return options;
}

cctopics::EvalOptions eval_options_of(const Config& c) {
  cctopics::EvalOptions options;
  options.fold_in.iterations = c.fold_in_iterations;
  options.coherence.window = c.window;
  options.coherence.epsilon = c.epsilon;
  options.top_k = c.top_k;
  options.seed = c.seed;
  options.threads = c.threads;
  return options;
}

std::optional<double> threshold_of(const Config& c) {
  if (c.threshold < 0.0) return std::nullopt;
  return c.threshold;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw cctopics::DataError("cannot write output file: " + path);
  return out;
}

// All numeric artifact output goes through one formatter so repeated runs
// stay byte-identical.
std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_config_line(std::ostream& out, const Config& c,
                       const std::string& command) {
  json j = config_to_json(c);
  j["command"] = command;
  out << "# config: " << j.dump() << "\n";
}

cctopics::Corpus load_corpus_checked(const Config& c) {
  if (c.corpus.empty()) {
    throw cctopics::ConfigError("no corpus path given (--corpus or config)");
  }
  cctopics::LoadStats stats;
  auto corpus = cctopics::load_corpus(c.corpus, load_options_of(c), &stats);
  if (stats.documents_dropped_empty > 0) {
    std::cerr << "warning: dropped " << stats.documents_dropped_empty
              << " documents emptied by filtering\n";
  }
  return corpus;
}

// --- train ------------------------------------------------------------

int cmd_train(const Config& c, const std::string& out_path,
              const std::string& log_path) {
  const auto corpus = load_corpus_checked(c);
  const auto variant = cctopics::parse_variant(c.variant);
  const auto hyper = hyper_of(c);
  hyper.validate();

  std::ofstream log;
  if (!log_path.empty()) log = open_output(log_path);
  const int total = hyper.burn_in + hyper.samples * hyper.lag;
  cctopics::ProgressFn progress =
      [&](const cctopics::IterationRecord& record) {
        if (log.is_open()) {
          log << json{{"iteration", record.iteration},
                      {"elapsed_seconds", record.elapsed_seconds},
                      {"log_likelihood", record.log_likelihood}}
                     .dump()
              << "\n";
        }
        if (record.iteration % 50 == 0 || record.iteration == total) {
          std::cerr << "iteration " << record.iteration << "/" << total
                    << " log_likelihood=" << record.log_likelihood << "\n";
        }
      };

  cctopics::TrainResult result;
  if (variant == cctopics::ModelVariant::entropy_based) {
    const auto partition =
        cctopics::partition_vocabulary(corpus, threshold_of(c));
    result = cctopics::train_entropy(corpus, hyper, partition, progress);
    std::cout << "variant=entropy"
              << " collections=" << corpus.num_collections()
              << " documents=" << corpus.num_documents()
              << " vocabulary=" << corpus.vocabulary_size()
              << " topics=" << hyper.topics
              << " threshold=" << fmt(partition.threshold)
              << " gamma=" << fmt(partition.gamma) << " seed=" << hyper.seed
              << "\n";
  } else {
    result = cctopics::train_cclda(corpus, hyper, progress);
    std::cout << "variant=cclda"
              << " collections=" << corpus.num_collections()
              << " documents=" << corpus.num_documents()
              << " vocabulary=" << corpus.vocabulary_size()
              << " topics=" << hyper.topics << " seed=" << hyper.seed << "\n";
  }

  json echo = config_to_json(c);
  echo["command"] = "train";
  result.state.config_echo = echo.dump();
  cctopics::save_model(result.state, out_path);
  std::cout << "model written to " << out_path << "\n";
  return 0;
}

// --- eval -------------------------------------------------------------

void write_fold_record(std::ostream& out, const std::string& label,
                       const cctopics::FoldEval& fold) {
  out << json{{"fold", label},
              {"accuracy", fold.accuracy},
              {"perplexity", fold.perplexity},
              {"coherence", fold.coherence},
              {"test_documents", fold.test_documents},
              {"evaluated_documents", fold.evaluated_documents},
              {"skipped_empty_documents", fold.skipped_empty_documents},
              {"evaluated_tokens", fold.evaluated_tokens},
              {"oov_tokens_removed", fold.oov_tokens_removed}}
             .dump()
      << "\n";
}

void write_eval_summary(std::ostream& out, const Config& c,
                        const std::string& variant,
                        const cctopics::FoldEval& aggregate,
                        bool with_coherence) {
  write_config_line(out, c, "eval");
  out << "variant\taccuracy\tcoherence\tperplexity\n";
  out << variant << "\t" << fmt(aggregate.accuracy) << "\t"
      << (with_coherence ? fmt(aggregate.coherence) : std::string("-")) << "\t"
      << fmt(aggregate.perplexity) << "\n";
}

int cmd_eval(const Config& c, const std::string& model_path,
             const std::string& test_path, const std::string& reference_path,
             bool cv, bool no_coherence, const std::string& out_path,
             const std::string& records_path) {
  auto options = eval_options_of(c);
  options.with_coherence = !no_coherence;

  cctopics::EvalReport report;
  std::string variant_label;
  if (cv) {
    const auto corpus = load_corpus_checked(c);
    const auto variant = cctopics::parse_variant(c.variant);
    variant_label = c.variant;
    report = cctopics::cross_validate(corpus, hyper_of(c), variant, c.folds,
                                      threshold_of(c), options);
  } else {
    if (model_path.empty() || test_path.empty()) {
      throw cctopics::ConfigError("eval needs --model and --test (or --cv)");
    }
    const auto state = cctopics::load_model(model_path);
    variant_label = cctopics::variant_name(state.variant);
    Config test_config = c;
    test_config.corpus = test_path;
    const auto test = load_corpus_checked(test_config);

    std::optional<cctopics::Corpus> reference;
    if (options.with_coherence) {
      // The reference defaults to the training corpus recorded in the model.
      std::string ref_path = reference_path;
      if (ref_path.empty() && !state.config_echo.empty()) {
        const auto echo = json::parse(state.config_echo);
        if (echo.contains("corpus")) ref_path = echo["corpus"];
      }
      if (ref_path.empty()) {
        throw cctopics::ConfigError(
            "no coherence reference: give --reference or --no-coherence");
      }
      Config ref_config = c;
      ref_config.corpus = ref_path;
      reference = load_corpus_checked(ref_config);
    }
    report.folds.push_back(cctopics::evaluate_model(
        state, test, reference ? &*reference : nullptr, options));
    report.aggregate = report.folds[0];
  }

  if (!records_path.empty()) {
    auto records = open_output(records_path);
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
      write_fold_record(records, std::to_string(f), report.folds[f]);
    }
    write_fold_record(records, "mean", report.aggregate);
  }
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    write_eval_summary(out, c, variant_label, report.aggregate,
                       options.with_coherence);
  }
  write_eval_summary(std::cout, c, variant_label, report.aggregate,
                     options.with_coherence);
  return 0;
}

// --- report -----------------------------------------------------------

int cmd_report(const Config& c, const std::string& model_path,
               const std::string& format, const std::string& out_path,
               bool domain_terms, const std::string& collection_name) {
  const auto state = cctopics::load_model(model_path);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }

  if (domain_terms) {
    const auto it = std::find(state.collections.begin(),
                              state.collections.end(), collection_name);
    if (it == state.collections.end()) {
      throw cctopics::ConfigError("unknown collection '" + collection_name +
                                  "'");
    }
    const auto collection =
        static_cast<cctopics::CollectionId>(it - state.collections.begin());
    const auto terms =
        cctopics::export_domain_terms(state, collection, c.top_k);
    write_config_line(*out, c, "report");
    *out << "rank\tterm\tprobability\n";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      *out << (i + 1) << "\t" << state.vocab.token(terms[i].word) << "\t"
           << fmt(terms[i].probability) << "\n";
    }
    return 0;
  }

  const auto report = cctopics::top_words(state, c.top_k);
  const std::size_t C = state.num_collections();

  if (format == "tsv") {
    write_config_line(*out, c, "report");
    *out << "topic\tdistribution\tcollection\trank\tword\tprobability\n";
    for (std::size_t z = 0; z < report.independent.size(); ++z) {
      for (std::size_t i = 0; i < report.independent[z].size(); ++i) {
        const auto& entry = report.independent[z][i];
        *out << z << "\tindependent\t-\t" << (i + 1) << "\t"
             << state.vocab.token(entry.word) << "\t"
             << fmt(entry.probability) << "\n";
      }
      for (std::size_t col = 0; col < C; ++col) {
        for (std::size_t i = 0; i < report.specific[z][col].size(); ++i) {
          const auto& entry = report.specific[z][col][i];
          *out << z << "\tspecific\t" << state.collections[col] << "\t"
               << (i + 1) << "\t" << state.vocab.token(entry.word) << "\t"
               << fmt(entry.probability) << "\n";
        }
      }
    }
    return 0;
  }

  // Human-readable table; for two collections the independent column sits in
  // the middle, mirroring the usual specific | independent | specific layout.
  const auto words_of = [&](const std::vector<cctopics::WeightedWord>& list) {
    std::string joined;
    for (const auto& entry : list) {
      if (!joined.empty()) joined += ' ';
      joined += state.vocab.token(entry.word);
    }
    return joined;
  };
  write_config_line(*out, c, "report");
  if (C == 2) {
    *out << "ID | " << state.collections[0] << "-specific | "
         << "collection-independent | " << state.collections[1]
         << "-specific\n";
    for (std::size_t z = 0; z < report.independent.size(); ++z) {
      *out << z << " | " << words_of(report.specific[z][0]) << " | "
           << words_of(report.independent[z]) << " | "
           << words_of(report.specific[z][1]) << "\n";
    }
  } else {
    *out << "ID | collection-independent";
    for (std::size_t col = 0; col < C; ++col) {
      *out << " | " << state.collections[col] << "-specific";
    }
    *out << "\n";
    for (std::size_t z = 0; z < report.independent.size(); ++z) {
      *out << z << " | " << words_of(report.independent[z]);
      for (std::size_t col = 0; col < C; ++col) {
        *out << " | " << words_of(report.specific[z][col]);
      }
      *out << "\n";
    }
  }
  return 0;
}

// --- rank -------------------------------------------------------------

int cmd_rank(const Config& c, const std::string& out_path) {
  const auto corpus = load_corpus_checked(c);
  const auto stats = cctopics::estimate_posteriors(corpus);
  const auto partition =
      cctopics::partition_vocabulary(corpus, threshold_of(c));

  std::vector<std::size_t> order(stats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (stats[a].termhood != stats[b].termhood) {
      return stats[a].termhood > stats[b].termhood;
    }
    return a < b;
  });

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  write_config_line(*out, c, "rank");
  *out << "word";
  for (const auto& name : corpus.collections()) *out << "\tcount_" << name;
  *out << "\tentropy\ttermhood\tlabel\n";
  for (std::size_t i : order) {
    const auto w = static_cast<cctopics::TokenId>(i);
    *out << corpus.vocabulary().token(w);
    for (std::size_t col = 0; col < corpus.num_collections(); ++col) {
      *out << "\t" << corpus.token_count(w, static_cast<int>(col));
    }
    *out << "\t" << fmt(stats[i].entropy) << "\t" << fmt(stats[i].termhood)
         << "\t" << (partition.specific(w) ? "specific" : "independent")
         << "\n";
  }
  return 0;
}

// --- sweep ------------------------------------------------------------

int cmd_sweep(const Config& c, const std::string& out_path) {
  const auto corpus = load_corpus_checked(c);
  cctopics::SweepOptions sweep;
  if (c.sweep_mode == "exact") {
    sweep.mode = cctopics::SweepOptions::Mode::exact;
  } else if (c.sweep_mode == "fast") {
    sweep.mode = cctopics::SweepOptions::Mode::fast;
  } else {
    throw cctopics::ConfigError("sweep mode must be 'exact' or 'fast'");
  }
  sweep.points = c.sweep_points;
  sweep.holdout_folds = c.folds;
  const auto rows =
      cctopics::sweep_thresholds(corpus, hyper_of(c), sweep, eval_options_of(c));

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  write_config_line(*out, c, "sweep");
  *out << "threshold,gamma,accuracy\n";
  for (const auto& row : rows) {
    *out << fmt(row.threshold) << "," << fmt(row.gamma) << ","
         << fmt(row.accuracy) << "\n";
  }
  return 0;
}

// --- histogram ---------------------------------------------------------

int cmd_histogram(const Config& c, int bins, const std::string& out_path) {
  const auto corpus = load_corpus_checked(c);
  const auto histogram = cctopics::entropy_histogram(corpus, bins);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  write_config_line(*out, c, "histogram");
  *out << "# hapax_threshold=" << fmt(histogram.hapax_entropy) << "\n";
  *out << "# words_at_threshold=" << histogram.words_at_hapax_entropy << "\n";
  *out << "bin_low\tbin_high\tcount\n";
  const auto n = static_cast<double>(histogram.bins.size());
  for (std::size_t b = 0; b < histogram.bins.size(); ++b) {
    *out << fmt(b / n) << "\t" << fmt((b + 1) / n) << "\t" << histogram.bins[b]
         << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-collection topic modeling with entropy-based "
               "vocabulary partitioning"};
  app.require_subcommand(1);

  Config c;
  std::string config_path;
  std::string model_path, test_path, reference_path, out_path, records_path,
      log_path;
  std::string format = "tsv";
  std::string collection_name;
  bool cv = false, no_coherence = false, domain_terms = false;
  int bins = 50;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--seed", c.seed, "PRNG seed");
    cmd->add_option("--threads", c.threads, "worker threads (0 = auto)");
    return cmd;
  };
  const auto add_corpus_opts = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", c.corpus, "line-delimited corpus file");
    cmd->add_option("--stopwords", c.stopwords, "stop-word list file");
    cmd->add_option("--min-token-len", c.min_token_len,
                    "minimum token length in codepoints");
  };
  const auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--variant", c.variant, "entropy or cclda");
    cmd->add_option("--topics", c.topics, "topic count T");
    cmd->add_option("--alpha", c.alpha, "uniform topic prior");
    cmd->add_option("--alpha-background", c.alpha_background,
                    "background topic prior");
    cmd->add_option("--background-topic", c.background_topic,
                    "background topic index (-1 disables)");
    cmd->add_option("--beta", c.beta, "phi prior");
    cmd->add_option("--delta", c.delta, "sigma prior");
    cmd->add_option("--gamma0", c.gamma0, "ccLDA x=0 pseudocount");
    cmd->add_option("--gamma1", c.gamma1, "ccLDA x=1 pseudocount");
    cmd->add_option("--burn-in", c.burn_in, "burn-in sweeps");
    cmd->add_option("--samples", c.samples, "retained samples");
    cmd->add_option("--lag", c.lag, "sweeps between retained samples");
    cmd->add_option("--threshold", c.threshold,
                    "entropy threshold override (default: hapax value)");
  };
  const auto add_eval_opts = [&](CLI::App* cmd) {
    cmd->add_option("--top-k", c.top_k, "words per distribution");
    cmd->add_option("--fold-in-iterations", c.fold_in_iterations,
                    "fold-in sweeps per document");
    cmd->add_option("--window", c.window, "coherence window width");
    cmd->add_option("--epsilon", c.epsilon, "coherence smoothing");
  };

  CLI::App* train = add_common(app.add_subcommand("train", "train a model"));
  add_corpus_opts(train);
  add_model_opts(train);
  train->add_option("--out", out_path, "model output path")->required();
  train->add_option("--log", log_path, "progress log (NDJSON)");

  CLI::App* eval = add_common(
      app.add_subcommand("eval", "evaluate a model or run cross-validation"));
  add_corpus_opts(eval);
  add_model_opts(eval);
  add_eval_opts(eval);
  eval->add_option("--model", model_path, "trained model file");
  eval->add_option("--test", test_path, "test corpus file");
  eval->add_option("--reference", reference_path,
                   "coherence reference corpus (default: training corpus)");
  eval->add_flag("--cv", cv, "k-fold cross-validation over --corpus");
  eval->add_option("--folds", c.folds, "fold count for --cv");
  eval->add_flag("--no-coherence", no_coherence, "skip coherence");
  eval->add_option("--out", out_path, "summary TSV path");
  eval->add_option("--records", records_path, "per-fold NDJSON path");

  CLI::App* report =
      add_common(app.add_subcommand("report", "top words of a trained model"));
  report->add_option("--model", model_path, "trained model file")->required();
  report->add_option("--top-k", c.top_k, "words per distribution");
  report->add_option("--format", format, "tsv or table")
      ->check(CLI::IsMember({"tsv", "table"}));
  report->add_option("--out", out_path, "output path (default stdout)");
  report->add_flag("--domain-terms", domain_terms,
                   "rank domain terms of one collection instead");
  report->add_option("--collection", collection_name,
                     "collection name for --domain-terms");

  CLI::App* rank = add_common(
      app.add_subcommand("rank", "entropy/termhood ranking of the vocabulary"));
  add_corpus_opts(rank);
  rank->add_option("--threshold", c.threshold, "partition threshold override");
  rank->add_option("--out", out_path, "output TSV path (default stdout)");

  CLI::App* sweep = add_common(
      app.add_subcommand("sweep", "accuracy over the threshold grid"));
  add_corpus_opts(sweep);
  add_model_opts(sweep);
  add_eval_opts(sweep);
  sweep->add_option("--folds", c.folds, "held-out split denominator");
  sweep->add_option("--sweep-mode", c.sweep_mode, "exact or fast");
  sweep->add_option("--sweep-points", c.sweep_points, "fast-mode grid size");
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* histogram = add_common(
      app.add_subcommand("histogram", "entropy histogram of the vocabulary"));
  add_corpus_opts(histogram);
  histogram->add_option("--bins", bins, "bin count");
  histogram->add_option("--out", out_path, "output TSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, c, cmd);

    if (cmd == train) return cmd_train(c, out_path, log_path);
    if (cmd == eval) {
      return cmd_eval(c, model_path, test_path, reference_path, cv,
                      no_coherence, out_path, records_path);
    }
    if (cmd == report) {
      return cmd_report(c, model_path, format, out_path, domain_terms,
                        collection_name);
    }
    if (cmd == rank) return cmd_rank(c, out_path);
    if (cmd == sweep) return cmd_sweep(c, out_path);
    if (cmd == histogram) return cmd_histogram(c, bins, out_path);
    return 3;
  } catch (const cctopics::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const cctopics::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
