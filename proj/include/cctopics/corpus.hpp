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

#ifndef CCTOPICS_CORPUS_HPP_
#define CCTOPICS_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cctopics {

using TokenId = std::int32_t;
using CollectionId = std::int32_t;

// Bijection between kept surface tokens and dense ids, id order = first
// appearance order.
class Vocabulary {
 public:
  TokenId intern(std::string_view token);
  std::optional<TokenId> find(std::string_view token) const;
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
};

struct Document {
  std::string id;
  CollectionId collection = 0;
  std::vector<TokenId> tokens;
};

// A document before vocabulary interning: surface tokens plus its collection
// label. Produced by the loader and by synthetic generators.
struct TokenizedRecord {
  std::string id;
  std::string collection;
  std::vector<std::string> tokens;
};

// Immutable multi-collection corpus: documents, collection labels, the
// vocabulary, and per-word per-collection occurrence counts tf(w,c).
class Corpus {
 public:
  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<std::string>& collections() const { return collections_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }

  std::size_t num_collections() const { return collections_.size(); }
  std::size_t num_documents() const { return documents_.size(); }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  std::int64_t total_tokens() const { return total_tokens_; }

  // tf(w,c): occurrences of word w in documents of collection c.
  std::int64_t token_count(TokenId w, CollectionId c) const {
    return tf_[static_cast<std::size_t>(w) * collections_.size() + c];
  }
  // tf(w): total occurrences of word w.
  std::int64_t token_count(TokenId w) const;

  // Rebuild a corpus from a subset of documents: compact vocabulary and
  // fresh tf statistics, same collection labels and ids as the parent.
  Corpus subset(const std::vector<std::size_t>& doc_indices) const;

  friend Corpus build_corpus(const std::vector<TokenizedRecord>& records,
                             const std::vector<std::string>* collection_order);

 private:
  std::vector<Document> documents_;
  std::vector<std::string> collections_;
  Vocabulary vocabulary_;
  std::vector<std::int64_t> tf_;  // V x C, row-major by word
  std::int64_t total_tokens_ = 0;
};

// Assembles a corpus from tokenized records. Empty documents are skipped,
// collection ids follow first appearance order unless collection_order pins
// them. Throws DataError if fewer than 2 distinct collections remain.
Corpus build_corpus(const std::vector<TokenizedRecord>& records,
                    const std::vector<std::string>* collection_order = nullptr);

enum class CorpusFormat { jsonl };

struct LoadOptions {
  CorpusFormat format = CorpusFormat::jsonl;
  std::optional<std::filesystem::path> stopwords;
  int min_token_len = 1;  // in codepoints; 1 = no length filtering
};

struct LoadStats {
  std::size_t documents_dropped_empty = 0;
  std::size_t tokens_removed_stopword = 0;
  std::size_t tokens_removed_short = 0;
};

// Loads a line-delimited corpus file. Each line is a JSON object with fields
// `id` (string), `collection` (string) and exactly one of `text` (string) or
// `tokens` (array of strings). `text` is lowercased, split on whitespace and
// stripped of edge punctuation; `tokens` are taken as given apart from
// lowercasing. Tokens on the stop-word list or shorter than min_token_len
// are removed; documents emptied by filtering are dropped and counted.
Corpus load_corpus(const std::filesystem::path& path,
                   const LoadOptions& options = {},
                   LoadStats* stats = nullptr);

// One token per line, '#' starts a comment. Tokens are lowercased.
std::vector<std::string> load_stopwords(const std::filesystem::path& path);

// Tokenizer used for `text` records: lowercase, split on whitespace
// (ASCII and common Unicode spaces), strip leading/trailing ASCII
// punctuation except '_' joiners inside multi-word phrases.
std::vector<std::string> tokenize_text(std::string_view text);

struct FoldSplit {
  Corpus train;
  Corpus test;
};

// Stratified k-fold split: per collection, documents are shuffled with the
// seed and dealt round-robin, so every test fold preserves collection
// proportions within one document. Train/test corpora are rebuilt with their
// own vocabularies and tf statistics.
std::vector<FoldSplit> split_folds(const Corpus& corpus, int k,
                                   std::uint64_t seed);

struct OovFilterResult {
  Document document;  // tokens re-interned in the target vocabulary
  std::size_t removed = 0;
  bool empty() const { return document.tokens.empty(); }
};

// Drops tokens absent from the target (training) vocabulary and maps the
// rest to target ids. The input document is not modified.
OovFilterResult filter_oov(const Document& doc, const Vocabulary& source,
                           const Vocabulary& target);

}  // namespace cctopics

#endif  // CCTOPICS_CORPUS_HPP_
