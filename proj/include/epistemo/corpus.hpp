#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace epistemo {

struct Document {
  std::string doc_id;
  std::string philosopher_id;
  std::string title;
  std::string text;  // NFC, LF line endings
};

/// Byte offsets into Document::text, half open.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct Chunk {
  std::string chunk_id;
  std::string doc_ref;
  Span span;
  std::string text;
  std::vector<std::string> tokens;
  bool operator==(const Chunk&) const = default;
};

struct SegmentOptions {
  std::size_t target_tokens = 180;
  std::size_t overlap_tokens = 0;
};

class Corpus {
 public:
  Corpus() = default;
  /// Validates ids and chunk references; throws ValidationError.
  Corpus(std::string philosopher_id, std::string display_label,
         std::vector<Document> documents, std::vector<Chunk> chunks);

  const std::string& philosopher_id() const noexcept { return philosopher_id_; }
  const std::string& display_label() const noexcept { return display_label_; }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  const std::vector<Chunk>& chunks() const noexcept { return chunks_; }

  /// nullptr when the id is unknown.
  const Chunk* find_chunk(const std::string& chunk_id) const;
  const Document* find_document(const std::string& doc_id) const;

 private:
  std::string philosopher_id_;
  std::string display_label_;
  std::vector<Document> documents_;
  std::vector<Chunk> chunks_;
  std::unordered_map<std::string, std::size_t> chunk_lookup_;
  std::unordered_map<std::string, std::size_t> doc_lookup_;
};

/// Reads a JSON manifest {philosopher_id, display_label?, documents: [{doc_id, title, path}]}.
/// Document paths resolve relative to the manifest's directory.
/// Throws LoadError for unreadable files and ValidationError for bad content.
Corpus load_corpus(const std::filesystem::path& manifest_path, SegmentOptions options = {});

/// Splits a document into windows of at most `target_tokens` tokens advancing by
/// `target_tokens - overlap_tokens`; the last window ends at the final token.
std::vector<Chunk> segment(const Document& document, std::size_t target_tokens,
                           std::size_t overlap_tokens);

/// "AI-clone of Sun Tzu" for "sun-tzu".
std::string default_display_label(const std::string& philosopher_id);

}  // namespace epistemo
