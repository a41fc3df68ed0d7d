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

#include "cctopics/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "cctopics/errors.hpp"
#include "cctopics/rng.hpp"

namespace cctopics {

TokenId Vocabulary::intern(std::string_view token) {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::int64_t Corpus::token_count(TokenId w) const {
  const std::size_t c = collections_.size();
  const auto* row = &tf_[static_cast<std::size_t>(w) * c];
  return std::accumulate(row, row + c, std::int64_t{0});
}

namespace {

void recount(std::vector<std::int64_t>& tf, std::int64_t& total,
             const std::vector<Document>& docs, std::size_t vocab_size,
             std::size_t num_collections) {
  tf.assign(vocab_size * num_collections, 0);
  total = 0;
  for (const auto& doc : docs) {
    for (TokenId w : doc.tokens) {
      ++tf[static_cast<std::size_t>(w) * num_collections + doc.collection];
    }
    total += static_cast<std::int64_t>(doc.tokens.size());
  }
}

}  // namespace

Corpus build_corpus(const std::vector<TokenizedRecord>& records,
                    const std::vector<std::string>* collection_order) {
  Corpus corpus;
  std::unordered_map<std::string, CollectionId> collection_ids;
  if (collection_order != nullptr) {
    for (const auto& name : *collection_order) {
      collection_ids.emplace(name, static_cast<CollectionId>(
                                       corpus.collections_.size()));
      corpus.collections_.push_back(name);
    }
  }
  for (const auto& record : records) {
    if (record.tokens.empty()) continue;  // counted by the loader
    auto it = collection_ids.find(record.collection);
    if (it == collection_ids.end()) {
      if (collection_order != nullptr) {
        throw DataError("unknown collection label '" + record.collection +
                        "'");
      }
      it = collection_ids
               .emplace(record.collection,
                        static_cast<CollectionId>(corpus.collections_.size()))
               .first;
      corpus.collections_.push_back(record.collection);
    }
    Document doc;
    doc.id = record.id;
    doc.collection = it->second;
    doc.tokens.reserve(record.tokens.size());
    for (const auto& token : record.tokens) {
      doc.tokens.push_back(corpus.vocabulary_.intern(token));
    }
    corpus.documents_.push_back(std::move(doc));
  }
  if (corpus.collections_.size() < 2) {
    throw DataError("fewer than 2 collections in corpus (found " +
                    std::to_string(corpus.collections_.size()) + ")");
  }
  if (corpus.documents_.empty()) {
    throw DataError("empty corpus after filtering");
  }
  recount(corpus.tf_, corpus.total_tokens_, corpus.documents_,
          corpus.vocabulary_.size(), corpus.collections_.size());
  return corpus;
}

Corpus Corpus::subset(const std::vector<std::size_t>& doc_indices) const {
  std::vector<TokenizedRecord> records;
  records.reserve(doc_indices.size());
  for (std::size_t index : doc_indices) {
    const Document& doc = documents_.at(index);
    TokenizedRecord record;
    record.id = doc.id;
    record.collection = collections_[doc.collection];
    record.tokens.reserve(doc.tokens.size());
    for (TokenId w : doc.tokens) record.tokens.push_back(vocabulary_.token(w));
    records.push_back(std::move(record));
  }
  return build_corpus(records, &collections_);
}

namespace {

bool is_space_codepoint(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Decodes one UTF-8 codepoint at s[i]; on malformed input falls back to the
// raw byte so tokenization never fails.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = static_cast<unsigned char>(s[i]);
  std::size_t extra = 0;
  char32_t cp = byte;
  if (byte >= 0xF0) {
    extra = 3;
    cp = byte & 0x07U;
  } else if (byte >= 0xE0) {
    extra = 2;
    cp = byte & 0x0FU;
  } else if (byte >= 0xC0) {
    extra = 1;
    cp = byte & 0x1FU;
  }
  if (i + extra >= s.size()) {
    ++i;
    return byte;
  }
  for (std::size_t k = 1; k <= extra; ++k) {
    const auto cont = static_cast<unsigned char>(s[i + k]);
    if ((cont & 0xC0U) != 0x80U) {
      ++i;
      return byte;
    }
    cp = (cp << 6) | (cont & 0x3FU);
  }
  i += extra + 1;
  return cp;
}

bool is_ascii_punct(char ch) {
  return std::ispunct(static_cast<unsigned char>(ch)) != 0;
}

std::string trim_punctuation(std::string token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && is_ascii_punct(token[begin])) ++begin;
  while (end > begin && is_ascii_punct(token[end - 1])) --end;
  // keep a phrase joiner intact when the whole token is punctuation-framed,
  // e.g. strip "(state_machine)." to "state_machine"
  return token.substr(begin, end - begin);
}

std::string lowercase_ascii(std::string s) {
  for (char& ch : s) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return s;
}

std::size_t codepoint_length(std::string_view token) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < token.size();) {
    decode_utf8(token, i);
    ++count;
  }
  return count;
}

}  // namespace

std::vector<std::string> tokenize_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = decode_utf8(text, i);
    if (is_space_codepoint(cp)) {
      if (!current.empty()) {
        auto token = trim_punctuation(std::move(current));
        if (!token.empty()) tokens.push_back(std::move(token));
        current.clear();
      }
    } else {
      current.append(text.substr(start, i - start));
    }
  }
  if (!current.empty()) {
    auto token = trim_punctuation(std::move(current));
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  for (auto& token : tokens) token = lowercase_ascii(std::move(token));
  return tokens;
}

std::vector<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stop-word file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    auto tokens = tokenize_text(line);
    for (auto& token : tokens) words.push_back(std::move(token));
  }
  return words;
}

Corpus load_corpus(const std::filesystem::path& path,
                   const LoadOptions& options, LoadStats* stats) {
  if (options.format != CorpusFormat::jsonl) {
    throw ConfigError("unsupported corpus format");
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());

  std::unordered_set<std::string> stopwords;
  if (options.stopwords) {
    for (auto& word : load_stopwords(*options.stopwords)) {
      stopwords.insert(std::move(word));
    }
  }

  LoadStats local_stats;
  std::vector<TokenizedRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed record at line " +
                      std::to_string(line_number) + ": " + e.what());
    }
    const auto fail = [&](const std::string& what) -> DataError {
      return DataError("malformed record at line " +
                       std::to_string(line_number) + ": " + what);
    };
    if (!record.is_object()) throw fail("not a JSON object");
    if (!record.contains("id") || !record["id"].is_string()) {
      throw fail("missing string field 'id'");
    }
    if (!record.contains("collection") || !record["collection"].is_string()) {
      throw fail("missing string field 'collection'");
    }
    const bool has_text = record.contains("text");
    const bool has_tokens = record.contains("tokens");
    if (has_text == has_tokens) {
      throw fail("expected exactly one of 'text' or 'tokens'");
    }

    TokenizedRecord tokenized;
    tokenized.id = record["id"].get<std::string>();
    tokenized.collection = record["collection"].get<std::string>();
    if (has_text) {
      if (!record["text"].is_string()) throw fail("'text' must be a string");
      tokenized.tokens = tokenize_text(record["text"].get<std::string>());
    } else {
      if (!record["tokens"].is_array()) {
        throw fail("'tokens' must be an array of strings");
      }
      for (const auto& token : record["tokens"]) {
        if (!token.is_string()) throw fail("'tokens' must contain strings");
        tokenized.tokens.push_back(
            lowercase_ascii(token.get<std::string>()));
      }
    }

    std::vector<std::string> kept;
    kept.reserve(tokenized.tokens.size());
    for (auto& token : tokenized.tokens) {
      if (token.empty()) continue;
      if (stopwords.contains(token)) {
        ++local_stats.tokens_removed_stopword;
        continue;
      }
      if (options.min_token_len > 1 &&
          codepoint_length(token) <
              static_cast<std::size_t>(options.min_token_len)) {
        ++local_stats.tokens_removed_short;
        continue;
      }
      kept.push_back(std::move(token));
    }
    if (kept.empty()) {
      ++local_stats.documents_dropped_empty;
      continue;
    }
    tokenized.tokens = std::move(kept);
    records.push_back(std::move(tokenized));
  }
  if (stats != nullptr) *stats = local_stats;
  return build_corpus(records);
}

std::vector<FoldSplit> split_folds(const Corpus& corpus, int k,
                                   std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be at least 2");
  const std::size_t num_collections = corpus.num_collections();

  std::vector<std::vector<std::size_t>> by_collection(num_collections);
  for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
    by_collection[corpus.documents()[d].collection].push_back(d);
  }
  for (std::size_t c = 0; c < num_collections; ++c) {
    if (by_collection[c].size() < static_cast<std::size_t>(k)) {
      throw DataError("collection '" + corpus.collections()[c] + "' has " +
                      std::to_string(by_collection[c].size()) +
                      " documents, fewer than " + std::to_string(k) +
                      " folds");
    }
  }

  std::vector<std::vector<std::size_t>> test_sets(k);
  for (std::size_t c = 0; c < num_collections; ++c) {
    auto& docs = by_collection[c];
    Rng rng(mix_seed(seed, c));
    for (std::size_t i = docs.size(); i > 1; --i) {  // Fisher-Yates
      std::swap(docs[i - 1], docs[rng.uniform_int(static_cast<std::int64_t>(i))]);
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
      test_sets[i % k].push_back(docs[i]);
    }
  }

  std::vector<FoldSplit> folds;
  folds.reserve(k);
  for (int f = 0; f < k; ++f) {
    auto& test_indices = test_sets[f];
    std::sort(test_indices.begin(), test_indices.end());
    std::vector<std::size_t> train_indices;
    train_indices.reserve(corpus.num_documents() - test_indices.size());
    std::size_t next_test = 0;
    for (std::size_t d = 0; d < corpus.num_documents(); ++d) {
      if (next_test < test_indices.size() && test_indices[next_test] == d) {
        ++next_test;
      } else {
        train_indices.push_back(d);
      }
    }
    folds.push_back(
        FoldSplit{corpus.subset(train_indices), corpus.subset(test_indices)});
  }
  return folds;
}

OovFilterResult filter_oov(const Document& doc, const Vocabulary& source,
                           const Vocabulary& target) {
  OovFilterResult result;
  result.document.id = doc.id;
  result.document.collection = doc.collection;
  result.document.tokens.reserve(doc.tokens.size());
  for (TokenId w : doc.tokens) {
    if (auto mapped = target.find(source.token(w))) {
      result.document.tokens.push_back(*mapped);
    } else {
      ++result.removed;
    }
  }
  return result;
}

}  // namespace cctopics
