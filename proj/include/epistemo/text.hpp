#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace epistemo {

/// Unicode NFC, with CRLF and lone CR rewritten to LF.
std::string normalize_text(std::string_view text);

struct TokenSpan {
  std::string token;
  std::size_t begin = 0;  // byte offset of first code point
  std::size_t end = 0;    // one past the last byte
};

// A token is a maximal run of letters, combining marks and numbers, lowercased.
// Whitespace, punctuation (including apostrophes and dashes) and symbols separate
// tokens and never appear inside one.
std::vector<TokenSpan> tokenize_spans(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

class StopList {
 public:
  StopList() = default;
  /// Throws ValidationError on duplicates or entries that are not lowercase.
  StopList(std::vector<std::string> words, std::string version);

  /// The bundled English list, version "en-v1".
  static const StopList& english();

  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return words_.size(); }
  const std::string& version() const noexcept { return version_; }
  const std::vector<std::string>& words() const noexcept { return ordered_; }

 private:
  std::vector<std::string> ordered_;
  std::unordered_set<std::string> words_;
  std::string version_;
};

std::vector<std::string> filter_stopwords(std::span<const std::string> tokens,
                                          const StopList& stoplist);

}  // namespace epistemo
