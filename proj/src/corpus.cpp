#include "epistemo/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "epistemo/errors.hpp"
#include "epistemo/text.hpp"

namespace epistemo {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool blank(std::string_view s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

std::string chunk_id(const std::string& doc_id, std::size_t n) {
  std::string digits = std::to_string(n);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return doc_id + "#" + digits;
}

}  // namespace

Corpus::Corpus(std::string philosopher_id, std::string display_label,
               std::vector<Document> documents, std::vector<Chunk> chunks)
    : philosopher_id_(std::move(philosopher_id)),
      display_label_(std::move(display_label)),
      documents_(std::move(documents)),
      chunks_(std::move(chunks)) {
  if (philosopher_id_.empty()) throw ValidationError("corpus has no philosopher_id");
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (!doc_lookup_.emplace(documents_[i].doc_id, i).second) {
      throw ValidationError("duplicate doc_id: " + documents_[i].doc_id);
    }
  }
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    const Chunk& c = chunks_[i];
    if (!chunk_lookup_.emplace(c.chunk_id, i).second) {
      throw ValidationError("duplicate chunk_id: " + c.chunk_id);
    }
    const Document* doc = find_document(c.doc_ref);
    if (doc == nullptr) throw ValidationError("chunk " + c.chunk_id + " references unknown document " + c.doc_ref);
    if (c.span.begin >= c.span.end || c.span.end > doc->text.size()) {
      throw ValidationError("chunk " + c.chunk_id + " has an invalid span");
    }
  }
}

const Chunk* Corpus::find_chunk(const std::string& id) const {
  auto it = chunk_lookup_.find(id);
  return it == chunk_lookup_.end() ? nullptr : &chunks_[it->second];
}

const Document* Corpus::find_document(const std::string& id) const {
  auto it = doc_lookup_.find(id);
  return it == doc_lookup_.end() ? nullptr : &documents_[it->second];
}

std::vector<Chunk> segment(const Document& document, std::size_t target_tokens,
                           std::size_t overlap_tokens) {
  if (target_tokens == 0) throw ValidationError("target_tokens must be positive");
  if (overlap_tokens >= target_tokens) throw ValidationError("overlap_tokens must be < target_tokens");
  const auto spans = tokenize_spans(document.text);
  if (spans.empty()) throw ValidationError("document has no tokens: " + document.doc_id);

  const std::size_t step = target_tokens - overlap_tokens;
  std::vector<Chunk> chunks;
  for (std::size_t first = 0;; first += step) {
    const std::size_t last = std::min(first + target_tokens, spans.size());
    Chunk c;
    c.chunk_id = chunk_id(document.doc_id, chunks.size());
    c.doc_ref = document.doc_id;
    c.span = {spans[first].begin, spans[last - 1].end};
    c.text = document.text.substr(c.span.begin, c.span.end - c.span.begin);
    c.tokens.reserve(last - first);
    for (std::size_t t = first; t < last; ++t) c.tokens.push_back(spans[t].token);
    chunks.push_back(std::move(c));
    if (last == spans.size()) break;
  }
  return chunks;
}

std::string default_display_label(const std::string& philosopher_id) {
  std::string name;
  bool word_start = true;
  for (char ch : philosopher_id) {
    if (ch == '-' || ch == '_') {
      name.push_back(' ');
      word_start = true;
    } else {
      name.push_back(word_start ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch);
      word_start = false;
    }
  }
  return "AI-clone of " + name;
}

Corpus load_corpus(const std::filesystem::path& manifest_path, SegmentOptions options) {
  if (!std::filesystem::exists(manifest_path)) {
    throw LoadError("manifest not found: " + manifest_path.string());
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(slurp(manifest_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
  }
  if (!manifest.is_object() || !manifest.contains("philosopher_id") ||
      !manifest["philosopher_id"].is_string()) {
    throw ValidationError("manifest " + manifest_path.string() + " lacks philosopher_id");
  }
  const std::string philosopher = manifest["philosopher_id"].get<std::string>();
  std::string label = manifest.value("display_label", std::string{});
  if (label.empty()) label = default_display_label(philosopher);

  if (!manifest.contains("documents") || !manifest["documents"].is_array() ||
      manifest["documents"].empty()) {
    throw ValidationError("manifest " + manifest_path.string() + " declares no documents");
  }

  const auto base = manifest_path.parent_path();
  std::vector<Document> documents;
  std::vector<Chunk> chunks;
  std::unordered_set<std::string> seen;
  for (const auto& entry : manifest["documents"]) {
    if (!entry.is_object() || !entry.contains("doc_id") || !entry.contains("path")) {
      throw ValidationError("manifest document entry needs doc_id and path");
    }
    Document doc;
    doc.doc_id = entry["doc_id"].get<std::string>();
    doc.philosopher_id = philosopher;
    doc.title = entry.value("title", doc.doc_id);
    if (!seen.insert(doc.doc_id).second) throw ValidationError("duplicate doc_id: " + doc.doc_id);

    std::filesystem::path path = entry["path"].get<std::string>();
    if (path.is_relative()) path = base / path;
    doc.text = normalize_text(slurp(path));
    if (blank(doc.text)) throw ValidationError("empty document: " + doc.doc_id);

    auto doc_chunks = segment(doc, options.target_tokens, options.overlap_tokens);
    chunks.insert(chunks.end(), std::make_move_iterator(doc_chunks.begin()),
                  std::make_move_iterator(doc_chunks.end()));
    documents.push_back(std::move(doc));
  }
  return Corpus(philosopher, std::move(label), std::move(documents), std::move(chunks));
}

}  // namespace epistemo
