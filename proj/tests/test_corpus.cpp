#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "epistemo/corpus.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/text.hpp"
#include "support/fixtures.hpp"

using namespace epistemo;

namespace {

Document numbered_document(std::size_t tokens) {
  Document d{"d", "p", "numbers", ""};
  for (std::size_t i = 0; i < tokens; ++i) d.text += "t" + std::to_string(i) + (i % 9 == 8 ? ". " : " ");
  return d;
}

// Character-class oracle: walks code points and cuts on anything outside L, M, N.
std::vector<std::string> class_oracle(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t i = 0;
  const auto len = static_cast<int32_t>(text.size());
  while (i < len) {
    UChar32 c;
    U8_NEXT(s, i, len, c);
    const bool word = (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) != 0;
    if (word) {
      char buf[4];
      int32_t n = 0;
      U8_APPEND_UNSAFE(buf, n, u_tolower(c));
      current.append(buf, static_cast<std::size_t>(n));
    } else if (!current.empty()) {
      out.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

void write(const std::filesystem::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST_CASE("tokenize examples") {
  CHECK(tokenize("The Gospels were read") == std::vector<std::string>{"the", "gospels", "were", "read"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("war—peace; war.") == std::vector<std::string>{"war", "peace", "war"});
  CHECK(tokenize("war—peace; war.") == class_oracle("war—peace; war."));
}

TEST_CASE("token spans are byte offsets into the text") {
  const std::string text = "Ἀρετή is—virtue.";
  for (const auto& span : tokenize_spans(text)) {
    const auto slice = text.substr(span.begin, span.end - span.begin);
    CHECK(tokenize(slice) == std::vector<std::string>{span.token});
  }
}

TEST_CASE("tokenize matches the character-class oracle on random strings") {
  const std::vector<std::string> alphabet{"a", "B", "z", "7", "é", "Ω", "ß", " ", "\n", ".", ",", "'", "—", "-", "!", "«", "9"};
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (std::size_t i = len(rng); i > 0; --i) s += alphabet[pick(rng)];
    REQUIRE(tokenize(s) == class_oracle(s));
  }
}

TEST_CASE("tokenize is idempotent on its own output") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ch('a', 'z');
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    for (int i = 0; i < 30; ++i) s += (i % 6 == 5) ? (i % 4 == 0 ? ", " : " ") : std::string(1, static_cast<char>(ch(rng)));
    const auto tokens = tokenize(s);
    std::string joined;
    for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
    CHECK(tokenize(joined) == tokens);
  }
}

TEST_CASE("normalize_text composes to NFC and unifies line endings") {
  CHECK(normalize_text("e\xCC\x81") == "\xC3\xA9");
  CHECK(normalize_text("a\r\nb\rc") == "a\nb\nc");
}

TEST_CASE("filter_stopwords") {
  const StopList two({"the", "of"}, "test");
  const std::vector<std::string> in{"the", "book", "of", "malice"};
  CHECK(filter_stopwords(in, two) == std::vector<std::string>{"book", "malice"});
  CHECK(filter_stopwords(std::vector<std::string>{}, two).empty());

  const auto& en = StopList::english();
  CHECK(en.version() == "en-v1");
  const auto tokens = tokenize(
      "Whoever fights monsters should see to it that he does not become a monster, and if you "
      "gaze long into an abyss the abyss also gazes into you.");
  const auto kept = filter_stopwords(tokens, en);
  std::vector<std::string> oracle;
  const std::set<std::string> stop(en.words().begin(), en.words().end());
  for (const auto& t : tokens) {
    if (!stop.count(t)) oracle.push_back(t);
  }
  CHECK(kept == oracle);
  for (const auto& t : kept) CHECK_FALSE(en.contains(t));
}

TEST_CASE("stoplist validation") {
  CHECK_THROWS_AS(StopList({"a", "a"}, "v"), ValidationError);
  CHECK_THROWS_AS(StopList({"The"}, "v"), ValidationError);
}

TEST_CASE("segment window counts") {
  const auto d1000 = numbered_document(1000);
  auto chunks = segment(d1000, 200, 0);
  REQUIRE(chunks.size() == 5);
  for (const auto& c : chunks) CHECK(c.tokens.size() == 200);

  chunks = segment(numbered_document(100), 200, 0);
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].tokens.size() == 100);

  // Enumerate windows by hand: starts 0, 150, ... until a window reaches the end.
  std::size_t windows = 0;
  for (std::size_t start = 0;; start += 150) {
    ++windows;
    if (start + 200 >= 1000) break;
  }
  CHECK(windows == 7);
  CHECK(segment(d1000, 200, 50).size() == windows);
}

TEST_CASE("segment reconstructs the document's tokens") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> length(1, 700), target(1, 120);
  for (int trial = 0; trial < 100; ++trial) {
    const auto doc = numbered_document(length(rng));
    const std::size_t t = target(rng);
    const std::size_t overlap = std::uniform_int_distribution<std::size_t>(0, t - 1)(rng);
    const auto chunks = segment(doc, t, overlap);
    const auto spans = tokenize_spans(doc.text);

    std::vector<std::string> rebuilt;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      const auto& c = chunks[i];
      CHECK(c.tokens.size() <= t);
      CHECK(c.span.begin < c.span.end);
      CHECK(doc.text.substr(c.span.begin, c.span.end - c.span.begin) == c.text);
      CHECK(tokenize(c.text) == c.tokens);
      if (i > 0 && i + 1 < chunks.size()) {
        CHECK(std::equal(c.tokens.begin(), c.tokens.begin() + static_cast<long>(overlap),
                         chunks[i - 1].tokens.end() - static_cast<long>(overlap)));
      }
      const auto first = std::find_if(spans.begin(), spans.end(),
                                      [&](const TokenSpan& s) { return s.begin == c.span.begin; });
      REQUIRE(first != spans.end());
      const auto start = static_cast<std::size_t>(first - spans.begin());
      const std::size_t covered = rebuilt.size();
      REQUIRE(start <= covered);
      rebuilt.insert(rebuilt.end(), c.tokens.begin() + static_cast<long>(covered - start), c.tokens.end());
    }
    REQUIRE(rebuilt == tokenize(doc.text));
  }
}

TEST_CASE("segment ids and errors") {
  const auto chunks = segment(numbered_document(10), 4, 0);
  CHECK(chunks[0].chunk_id == "d#000000");
  CHECK(chunks[2].chunk_id == "d#000002");
  CHECK_THROWS_AS(segment(Document{"e", "p", "t", " ... "}, 4, 0), ValidationError);
  CHECK_THROWS(segment(numbered_document(10), 4, 4));
}

TEST_CASE("load_corpus reads the bundled Aristotle manifest") {
  const auto manifest = std::filesystem::path(EPISTEMO_DATA_DIR) / "corpora/aristotle/manifest.json";
  const Corpus c = load_corpus(manifest);
  CHECK(c.philosopher_id() == "aristotle");
  CHECK(c.documents().size() == 4);
  CHECK(c.display_label() == "AI-clone of Aristotle");
  CHECK(load_corpus(manifest).chunks() == c.chunks());
  for (const auto& chunk : c.chunks()) CHECK(c.find_document(chunk.doc_ref) != nullptr);
}

TEST_CASE("load_corpus errors") {
  const auto dir = fixtures::scratch_dir("corpus");
  CHECK_THROWS_AS(load_corpus(dir / "missing.json"), LoadError);
  try {
    load_corpus(dir / "missing.json");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }

  write(dir / "none.json", R"({"philosopher_id": "x", "documents": []})");
  CHECK_THROWS_AS(load_corpus(dir / "none.json"), ValidationError);

  write(dir / "a.txt", "Some words here.");
  write(dir / "dup.json", R"({"philosopher_id": "x", "documents": [
      {"doc_id": "a", "title": "A", "path": "a.txt"}, {"doc_id": "a", "title": "B", "path": "a.txt"}]})");
  CHECK_THROWS_AS(load_corpus(dir / "dup.json"), ValidationError);

  write(dir / "empty.txt", "  \n\t ");
  write(dir / "empty.json", R"({"philosopher_id": "x", "documents": [{"doc_id": "e", "title": "E", "path": "empty.txt"}]})");
  CHECK_THROWS_AS(load_corpus(dir / "empty.json"), ValidationError);

  write(dir / "sun.json", R"({"philosopher_id": "sun-tzu", "documents": [{"doc_id": "a", "title": "A", "path": "a.txt"}]})");
  CHECK(load_corpus(dir / "sun.json").display_label() == "AI-clone of Sun Tzu");
}
