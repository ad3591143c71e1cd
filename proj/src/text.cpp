#include "epistemo/text.hpp"

#include <algorithm>
#include <array>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "epistemo/errors.hpp"

namespace epistemo {
namespace {

bool is_token_char(UChar32 c) {
  if (c < 0) return false;
  const auto mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) != 0;
}

std::string to_lower(std::string_view utf8) {
  auto s = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

// NLTK English stopwords minus the apostrophe forms, which the tokenizer splits.
constexpr std::array<std::string_view, 153> kEnglishStopwords = {
    "i",          "me",       "my",      "myself",  "we",        "our",     "ours",
    "ourselves",  "you",      "your",    "yours",   "yourself",  "yourselves",
    "he",         "him",      "his",     "himself", "she",       "her",     "hers",
    "herself",    "it",       "its",     "itself",  "they",      "them",    "their",
    "theirs",     "themselves", "what",  "which",   "who",       "whom",    "this",
    "that",       "these",    "those",   "am",      "is",        "are",     "was",
    "were",       "be",       "been",    "being",   "have",      "has",     "had",
    "having",     "do",       "does",    "did",     "doing",     "a",       "an",
    "the",        "and",      "but",     "if",      "or",        "because", "as",
    "until",      "while",    "of",      "at",      "by",        "for",     "with",
    "about",      "against",  "between", "into",    "through",   "during",  "before",
    "after",      "above",    "below",   "to",      "from",      "up",      "down",
    "in",         "out",      "on",      "off",     "over",      "under",   "again",
    "further",    "then",     "once",    "here",    "there",     "when",    "where",
    "why",        "how",      "all",     "any",     "both",      "each",    "few",
    "more",       "most",     "other",   "some",    "such",      "no",      "nor",
    "not",        "only",     "own",     "same",    "so",        "than",    "too",
    "very",       "s",        "t",       "can",     "will",      "just",    "don",
    "should",     "now",      "d",       "ll",      "m",         "o",       "re",
    "ve",         "y",        "ain",     "aren",    "couldn",    "didn",    "doesn",
    "hadn",       "hasn",     "haven",   "isn",     "ma",        "mightn",  "mustn",
    "needn",      "shan",     "shouldn", "wasn",    "weren",     "won",     "wouldn",
};

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string unified;
  unified.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      unified.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      unified.push_back(text[i]);
    }
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  auto source = icu::UnicodeString::fromUTF8(unified);
  icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) throw ValidationError("text could not be NFC-normalized");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (is_token_char(c)) {
      if (start < 0) start = at;
    } else if (start >= 0) {
      out.push_back({to_lower(text.substr(start, at - start)), static_cast<std::size_t>(start),
                     static_cast<std::size_t>(at)});
      start = -1;
    }
  }
  if (start >= 0) {
    out.push_back({to_lower(text.substr(start)), static_cast<std::size_t>(start), text.size()});
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  auto spans = tokenize_spans(text);
  std::vector<std::string> out;
  out.reserve(spans.size());
  for (auto& s : spans) out.push_back(std::move(s.token));
  return out;
}

StopList::StopList(std::vector<std::string> words, std::string version)
    : version_(std::move(version)) {
  for (auto& w : words) {
    if (w.empty() || to_lower(w) != w) throw ValidationError("stoplist entry not lowercase: '" + w + "'");
    if (!words_.insert(w).second) throw ValidationError("duplicate stoplist entry: '" + w + "'");
    ordered_.push_back(std::move(w));
  }
}

const StopList& StopList::english() {
  static const StopList list = [] {
    std::vector<std::string> words(kEnglishStopwords.begin(), kEnglishStopwords.end());
    return StopList(std::move(words), "en-v1");
  }();
  return list;
}

bool StopList::contains(std::string_view token) const {
  return words_.find(std::string(token)) != words_.end();
}

std::vector<std::string> filter_stopwords(std::span<const std::string> tokens,
                                          const StopList& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
               [&](const std::string& t) { return !stoplist.contains(t); });
  return out;
}

}  // namespace epistemo
