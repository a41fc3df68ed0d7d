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

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cctopics/rng.hpp"

#ifndef CCTOPICS_CLI_PATH
#error "CCTOPICS_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("cctopics_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

int run(const std::string& args, const fs::path& stdout_path = {}) {
  std::string command = std::string(CCTOPICS_CLI_PATH) + " " + args;
  if (!stdout_path.empty()) {
    command += " > " + stdout_path.string();
  } else {
    command += " > /dev/null";
  }
  command += " 2> /dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Small two-collection corpus with a clear specific/independent split.
void write_corpus(const fs::path& path, int docs = 60, std::uint64_t seed = 7) {
  cctopics::Rng rng(seed);
  std::ofstream out(path);
  for (int d = 0; d < docs; ++d) {
    const bool patents = d % 2 == 0;
    out << R"({"id":"d)" << d << R"(","collection":")"
        << (patents ? "patents" : "papers") << R"(","tokens":[)";
    for (int t = 0; t < 20; ++t) {
      if (t > 0) out << ",";
      if (t % 3 == 0) {
        out << '"' << (patents ? "apparatus" : "algorithm")
            << rng.uniform_int(8) << '"';
      } else {
        out << "\"common" << rng.uniform_int(15) << '"';
      }
    }
    out << "]}\n";
  }
}

const std::string kFastTrain =
    " --topics 2 --burn-in 8 --samples 2 --lag 2 --seed 11";

}  // namespace

TEST_CASE("cli: train prints a threshold summary and writes a model") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  const auto summary = ws / "train_stdout.txt";
  const int code =
      run("train --corpus " + (ws / "corpus.jsonl").string() +
              " --variant entropy" + kFastTrain + " --out " +
              (ws / "model.bin").string(),
          summary);
  CHECK(code == 0);
  const std::string text = slurp(summary);
  CHECK(text.find("variant=entropy") != std::string::npos);
  CHECK(text.find("threshold=0.918") != std::string::npos);
  CHECK(text.find("gamma=") != std::string::npos);
  CHECK(fs::exists(ws / "model.bin"));
}

TEST_CASE("cli: cclda summary omits threshold and gamma") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  const auto summary = ws / "train_stdout.txt";
  const int code =
      run("train --corpus " + (ws / "corpus.jsonl").string() +
              " --variant cclda" + kFastTrain + " --out " +
              (ws / "model.bin").string(),
          summary);
  CHECK(code == 0);
  const std::string text = slurp(summary);
  CHECK(text.find("variant=cclda") != std::string::npos);
  CHECK(text.find("threshold=") == std::string::npos);
  CHECK(text.find("gamma=") == std::string::npos);
}

TEST_CASE("cli: exit codes distinguish usage, data and success") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  // usage error: missing required --out
  CHECK(run("train --corpus " + (ws / "corpus.jsonl").string()) == 1);
  // usage error: no corpus given at all
  CHECK(run("train --out " + (ws / "m.bin").string()) == 1);
  // data error: corpus file does not exist
  CHECK(run("train --corpus " + (ws / "missing.jsonl").string() +
            " --out " + (ws / "m.bin").string()) == 2);
  // usage error: unknown subcommand
  CHECK(run("frobnicate") == 1);
  // data error: malformed corpus
  std::ofstream(ws / "bad.jsonl") << "{oops\n";
  CHECK(run("rank --corpus " + (ws / "bad.jsonl").string()) == 2);
}

TEST_CASE("cli: rank output is sorted by termhood descending") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  const auto out = ws / "rank.tsv";
  CHECK(run("rank --corpus " + (ws / "corpus.jsonl").string() + " --out " +
            out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // # config
  CHECK(line.rfind("# config:", 0) == 0);
  std::getline(in, line);  // header
  CHECK(line == "word\tcount_patents\tcount_papers\tentropy\ttermhood\tlabel");
  double previous = 2.0;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string word, c0, c1, entropy, termhood;
    std::getline(fields, word, '\t');
    std::getline(fields, c0, '\t');
    std::getline(fields, c1, '\t');
    std::getline(fields, entropy, '\t');
    std::getline(fields, termhood, '\t');
    const double value = std::stod(termhood);
    CHECK(value <= previous);
    previous = value;
    ++rows;
  }
  CHECK(rows > 10);
}

TEST_CASE("cli: report respects top-k in both formats") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  REQUIRE(run("train --corpus " + (ws / "corpus.jsonl").string() +
              kFastTrain + " --out " + (ws / "model.bin").string()) == 0);

  const auto tsv = ws / "report.tsv";
  CHECK(run("report --model " + (ws / "model.bin").string() +
            " --top-k 4 --format tsv --out " + tsv.string()) == 0);
  std::ifstream in(tsv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  // 2 topics x (1 independent + 2 specific) x 4 words
  CHECK(rows == 2 * 3 * 4);

  const auto table = ws / "report.txt";
  CHECK(run("report --model " + (ws / "model.bin").string() +
            " --top-k 4 --format table --out " + table.string()) == 0);
  const std::string text = slurp(table);
  CHECK(text.find("patents-specific | collection-independent | "
                  "papers-specific") != std::string::npos);

  const auto terms = ws / "terms.tsv";
  CHECK(run("report --model " + (ws / "model.bin").string() +
            " --domain-terms --collection patents --top-k 5 --out " +
            terms.string()) == 0);
  std::ifstream terms_in(terms);
  std::getline(terms_in, line);
  std::getline(terms_in, line);
  CHECK(line == "rank\tterm\tprobability");
  rows = 0;
  while (std::getline(terms_in, line)) {
    CHECK(line.find("apparatus") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("cli: eval produces a summary row") {
  Workspace ws;
  write_corpus(ws / "train.jsonl", 60, 7);
  write_corpus(ws / "test.jsonl", 10, 99);
  REQUIRE(run("train --corpus " + (ws / "train.jsonl").string() + kFastTrain +
              " --out " + (ws / "model.bin").string()) == 0);
  const auto out = ws / "eval.tsv";
  CHECK(run("eval --model " + (ws / "model.bin").string() + " --test " +
            (ws / "test.jsonl").string() +
            " --fold-in-iterations 10 --top-k 3 --out " + out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // config
  std::getline(in, line);
  CHECK(line == "variant\taccuracy\tcoherence\tperplexity");
  std::getline(in, line);
  std::istringstream fields(line);
  std::string variant, accuracy, coherence, perplexity;
  std::getline(fields, variant, '\t');
  std::getline(fields, accuracy, '\t');
  std::getline(fields, coherence, '\t');
  std::getline(fields, perplexity, '\t');
  CHECK(variant == "entropy");
  // the corpus plants a clear collection signal: better than chance (1/C)
  CHECK(std::stod(accuracy) > 0.5);
  CHECK(std::stod(accuracy) <= 1.0);
  CHECK(std::stod(perplexity) >= 1.0);
}

TEST_CASE("cli: cross-validation writes per-fold records") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl", 40);
  const auto records = ws / "folds.ndjson";
  CHECK(run("eval --cv --corpus " + (ws / "corpus.jsonl").string() +
            " --folds 3" + kFastTrain +
            " --fold-in-iterations 8 --top-k 3 --no-coherence --records " +
            records.string()) == 0);
  std::ifstream in(records);
  std::string line;
  int rows = 0;
  bool has_mean = false;
  while (std::getline(in, line)) {
    if (line.find("\"mean\"") != std::string::npos) has_mean = true;
    ++rows;
  }
  CHECK(rows == 4);  // 3 folds + mean
  CHECK(has_mean);
}

TEST_CASE("cli: sweep emits a gamma-sorted csv") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl", 40);
  const auto out = ws / "sweep.csv";
  CHECK(run("sweep --corpus " + (ws / "corpus.jsonl").string() + kFastTrain +
            " --folds 4 --sweep-points 4 --fold-in-iterations 6 --out " +
            out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // config
  std::getline(in, line);
  CHECK(line == "threshold,gamma,accuracy");
  double previous = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double gamma = std::stod(line.substr(comma + 1));
    CHECK(gamma >= previous);
    previous = gamma;
    ++rows;
  }
  CHECK(rows >= 4);
}

TEST_CASE("cli: histogram bins sum to the vocabulary size") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  const auto out = ws / "histogram.tsv";
  CHECK(run("histogram --corpus " + (ws / "corpus.jsonl").string() +
            " --bins 10 --out " + out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // config
  std::getline(in, line);  // hapax threshold comment
  CHECK(line.rfind("# hapax_threshold=0.918", 0) == 0);
  std::getline(in, line);  // words at threshold
  std::getline(in, line);  // header
  long total = 0;
  int rows = 0;
  while (std::getline(in, line)) {
    total += std::stol(line.substr(line.rfind('\t') + 1));
    ++rows;
  }
  CHECK(rows == 10);
  CHECK(total > 0);
}

TEST_CASE("cli: config file values apply and flags override them") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl");
  std::ofstream(ws / "config.json")
      << R"({"corpus":")" << (ws / "corpus.jsonl").string()
      << R"(","topics":2,"burn_in":8,"samples":2,"lag":2,"seed":5,)"
      << R"("variant":"entropy"})";
  const auto summary = ws / "out.txt";
  CHECK(run("train --config " + (ws / "config.json").string() + " --out " +
                (ws / "m1.bin").string(),
            summary) == 0);
  CHECK(slurp(summary).find("topics=2") != std::string::npos);
  // flag wins over the file
  CHECK(run("train --config " + (ws / "config.json").string() +
                " --topics 3 --out " + (ws / "m2.bin").string(),
            summary) == 0);
  CHECK(slurp(summary).find("topics=3") != std::string::npos);
}

TEST_CASE("cli: identical seeds give byte-identical artifacts") {
  Workspace ws;
  write_corpus(ws / "corpus.jsonl", 40);
  const std::string train_args =
      "train --corpus " + (ws / "corpus.jsonl").string() + kFastTrain;
  REQUIRE(run(train_args + " --out " + (ws / "a.bin").string()) == 0);
  REQUIRE(run(train_args + " --out " + (ws / "b.bin").string()) == 0);
  CHECK(slurp(ws / "a.bin") == slurp(ws / "b.bin"));

  write_corpus(ws / "test.jsonl", 10, 3);
  const std::string eval_args =
      "eval --model " + (ws / "a.bin").string() + " --test " +
      (ws / "test.jsonl").string() +
      " --fold-in-iterations 8 --no-coherence --seed 9";
  REQUIRE(run(eval_args + " --out " + (ws / "e1.tsv").string()) == 0);
  REQUIRE(run(eval_args + " --out " + (ws / "e2.tsv").string()) == 0);
  CHECK(slurp(ws / "e1.tsv") == slurp(ws / "e2.tsv"));

  const std::string sweep_args =
      "sweep --corpus " + (ws / "corpus.jsonl").string() + kFastTrain +
      " --folds 4 --sweep-points 3 --fold-in-iterations 6";
  REQUIRE(run(sweep_args + " --out " + (ws / "s1.csv").string()) == 0);
  REQUIRE(run(sweep_args + " --out " + (ws / "s2.csv").string()) == 0);
  CHECK(slurp(ws / "s1.csv") == slurp(ws / "s2.csv"));
}
