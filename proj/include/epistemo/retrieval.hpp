#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "epistemo/corpus.hpp"
#include "epistemo/http_client.hpp"

namespace epistemo {

struct EmbeddingVector {
  std::vector<double> values;
  /// Zero vector that could not be normalized (empty or all-zero input).
  bool degenerate = false;

  std::size_t dimension() const noexcept { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

enum class EmbedderMode { DeterministicLexical, ExternalEndpoint };

std::string_view to_string(EmbedderMode mode);

struct EmbedderInfo {
  std::string name;
  std::size_t dimension = 0;
  EmbedderMode mode = EmbedderMode::DeterministicLexical;
  std::string fingerprint;  // identifies hash seed and fitted IDF table
  bool operator==(const EmbedderInfo&) const = default;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbedderInfo info() const = 0;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  /// Results are in input order.
  virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const;
};

/// Hashed TF-IDF: every token adds its IDF weight to bucket hash(token) mod D,
/// then the vector is L2-normalized.
class LexicalEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  static constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

  explicit LexicalEmbedder(std::size_t dimension = kDefaultDimension,
                           std::uint64_t seed = kDefaultSeed);

  /// Counts document frequencies; each element is one document's tokens.
  void fit(std::span<const std::vector<std::string>> documents);
  void fit(const Corpus& corpus);

  EmbedderInfo info() const override;
  EmbeddingVector embed(std::string_view text) const override;

  std::size_t bucket(std::string_view token) const;
  /// ln((1 + N) / (1 + df)) + 1
  double idf(const std::string& token) const;
  std::size_t fitted_documents() const noexcept { return documents_; }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::size_t> document_frequency_;
  std::string fingerprint_;
};

/// Posts {texts: [...]} and expects {vectors: [[...]]}; vectors are L2-normalized.
class EndpointEmbedder final : public Embedder {
 public:
  EndpointEmbedder(EndpointConfig config, std::size_t dimension, std::size_t batch_size = 32);

  EmbedderInfo info() const override;
  EmbeddingVector embed(std::string_view text) const override;
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

 private:
  EndpointConfig config_;
  std::size_t dimension_;
  std::size_t batch_size_;
  std::shared_ptr<std::counting_semaphore<>> in_flight_;
};

EmbeddingVector embed(std::string_view text, const Embedder& embedder);

/// In-place L2 normalization; a zero vector is left as is and flagged degenerate.
void normalize(EmbeddingVector& v);

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class RetrievalIndex {
 public:
  RetrievalIndex() = default;
  /// `matrix` is row-major, one row per chunk id. Throws ContractError on shape mismatch.
  RetrievalIndex(std::string philosopher_id, EmbedderInfo embedder,
                 std::vector<std::string> chunk_ids, std::vector<double> matrix);

  const std::string& philosopher_id() const noexcept { return philosopher_id_; }
  const EmbedderInfo& embedder() const noexcept { return embedder_; }
  std::size_t size() const noexcept { return chunk_ids_.size(); }
  bool empty() const noexcept { return chunk_ids_.empty(); }
  std::size_t dimension() const noexcept { return embedder_.dimension; }
  const std::vector<std::string>& chunk_ids() const noexcept { return chunk_ids_; }
  std::span<const double> matrix() const noexcept { return matrix_; }
  std::span<const double> row(std::size_t i) const;

  bool operator==(const RetrievalIndex&) const = default;

 private:
  std::string philosopher_id_;
  EmbedderInfo embedder_;
  std::vector<std::string> chunk_ids_;
  std::vector<double> matrix_;
};

/// One entry per chunk in corpus order. Throws IndexBuildError naming the failing chunk.
RetrievalIndex build_index(const Corpus& corpus, const Embedder& embedder);

struct ScoredChunk {
  std::string chunk_id;
  double raw_score = 0.0;
  double probability = 0.0;
};

struct RetrievalResult {
  std::vector<ScoredChunk> items;  // descending by probability, ties by chunk id
  std::size_t requested_k = 0;
  bool truncated = false;  // k exceeded the index size; all entries returned
};

/// Softmax over the k largest inner products, normalized over the selected k.
RetrievalResult score_distribution(const RetrievalIndex& index, const EmbeddingVector& query,
                                   std::size_t k);

struct MipsHit {
  std::string chunk_id;
  double raw_score = 0.0;
};

/// Exact maximum inner product; ties go to the lexicographically smallest chunk id.
MipsHit mips_max(const RetrievalIndex& index, const EmbeddingVector& probe);

}  // namespace epistemo
