#include "epistemo/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "epistemo/digest.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/kernels.hpp"
#include "epistemo/text.hpp"

namespace epistemo {
namespace {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_finite(const EmbeddingVector& v) {
  for (double x : v.values) {
    if (!std::isfinite(x)) throw ContractError("embedding has a non-finite entry");
  }
}

}  // namespace

std::string_view to_string(EmbedderMode mode) {
  return mode == EmbedderMode::DeterministicLexical ? "deterministic-lexical" : "external-endpoint";
}

std::vector<EmbeddingVector> Embedder::embed_batch(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

void normalize(EmbeddingVector& v) {
  const double norm = std::sqrt(kernels::dot(v.values, v.values));
  if (norm == 0.0) {
    v.degenerate = true;
    return;
  }
  for (double& x : v.values) x /= norm;
  v.degenerate = false;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) throw ContractError("cosine of vectors with different dimension");
  const double na = std::sqrt(kernels::dot(a.values, a.values));
  const double nb = std::sqrt(kernels::dot(b.values, b.values));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(kernels::dot(a.values, b.values) / (na * nb), -1.0, 1.0);
}

EmbeddingVector embed(std::string_view text, const Embedder& embedder) {
  return embedder.embed(text);
}

// --- LexicalEmbedder ---

LexicalEmbedder::LexicalEmbedder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension_ == 0) throw ContractError("embedding dimension must be positive");
  fit(std::span<const std::vector<std::string>>{});
}

void LexicalEmbedder::fit(std::span<const std::vector<std::string>> documents) {
  documents_ = documents.size();
  document_frequency_.clear();
  for (const auto& doc : documents) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& t : unique) ++document_frequency_[t];
  }
  std::map<std::string, std::size_t> ordered(document_frequency_.begin(), document_frequency_.end());
  std::string material = "lexical-fnv1a64|" + std::to_string(dimension_) + "|" +
                         std::to_string(seed_) + "|" + std::to_string(documents_);
  for (const auto& [token, df] : ordered) material += "|" + token + "=" + std::to_string(df);
  fingerprint_ = sha256_hex(material);
}

void LexicalEmbedder::fit(const Corpus& corpus) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.chunks().size());
  for (const auto& c : corpus.chunks()) docs.push_back(c.tokens);
  fit(docs);
}

EmbedderInfo LexicalEmbedder::info() const {
  return {"hashed-tfidf", dimension_, EmbedderMode::DeterministicLexical, fingerprint_};
}

std::size_t LexicalEmbedder::bucket(std::string_view token) const {
  return static_cast<std::size_t>(fnv1a64(token, seed_) % dimension_);
}

double LexicalEmbedder::idf(const std::string& token) const {
  auto it = document_frequency_.find(token);
  const double df = it == document_frequency_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(documents_)) / (1.0 + df)) + 1.0;
}

EmbeddingVector LexicalEmbedder::embed(std::string_view text) const {
  EmbeddingVector v;
  v.values.assign(dimension_, 0.0);
  for (const auto& token : tokenize(text)) v.values[bucket(token)] += idf(token);
  normalize(v);
  return v;
}

// --- EndpointEmbedder ---

EndpointEmbedder::EndpointEmbedder(EndpointConfig config, std::size_t dimension,
                                   std::size_t batch_size)
    : config_(std::move(config)),
      dimension_(dimension),
      batch_size_(std::max<std::size_t>(1, batch_size)),
      in_flight_(std::make_shared<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_in_flight)))) {
  if (dimension_ == 0) throw ContractError("embedding dimension must be positive");
}

EmbedderInfo EndpointEmbedder::info() const {
  return {"endpoint", dimension_, EmbedderMode::ExternalEndpoint, sha256_hex(config_.url)};
}

EmbeddingVector EndpointEmbedder::embed(std::string_view text) const {
  std::vector<std::string> one{std::string(text)};
  return embed_batch(one).front();
}

std::vector<EmbeddingVector> EndpointEmbedder::embed_batch(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
    const auto batch = texts.subspan(start, std::min(batch_size_, texts.size() - start));
    nlohmann::json body;
    body["texts"] = std::vector<std::string>(batch.begin(), batch.end());
    nlohmann::json reply;
    in_flight_->acquire();
    try {
      reply = post_json(config_, body);
    } catch (...) {
      in_flight_->release();
      throw;
    }
    in_flight_->release();

    if (!reply.contains("vectors") || !reply["vectors"].is_array() ||
        reply["vectors"].size() != batch.size()) {
      throw ContractError("embedding endpoint returned the wrong number of vectors");
    }
    for (const auto& row : reply["vectors"]) {
      EmbeddingVector v;
      try {
        v.values = row.get<std::vector<double>>();
      } catch (const nlohmann::json::exception&) {
        throw ContractError("embedding endpoint returned a non-numeric vector");
      }
      if (v.values.size() != dimension_) {
        throw ContractError("embedding endpoint returned dimension " + std::to_string(v.values.size()) +
                            ", expected " + std::to_string(dimension_));
      }
      check_finite(v);
      normalize(v);
      out.push_back(std::move(v));
    }
  }
  return out;
}

// --- RetrievalIndex ---

RetrievalIndex::RetrievalIndex(std::string philosopher_id, EmbedderInfo embedder,
                               std::vector<std::string> chunk_ids, std::vector<double> matrix)
    : philosopher_id_(std::move(philosopher_id)),
      embedder_(std::move(embedder)),
      chunk_ids_(std::move(chunk_ids)),
      matrix_(std::move(matrix)) {
  if (matrix_.size() != chunk_ids_.size() * embedder_.dimension) {
    throw ContractError("index matrix shape does not match chunk count x dimension");
  }
  for (double x : matrix_) {
    if (!std::isfinite(x)) throw ContractError("index contains a non-finite entry");
  }
}

std::span<const double> RetrievalIndex::row(std::size_t i) const {
  return std::span<const double>(matrix_).subspan(i * dimension(), dimension());
}

RetrievalIndex build_index(const Corpus& corpus, const Embedder& embedder) {
  const auto& chunks = corpus.chunks();
  if (chunks.empty()) throw ValidationError("corpus " + corpus.philosopher_id() + " has no chunks");
  const EmbedderInfo info = embedder.info();
  constexpr std::size_t kBlock = 32;

  std::vector<std::string> ids;
  std::vector<double> matrix;
  ids.reserve(chunks.size());
  matrix.reserve(chunks.size() * info.dimension);
  for (std::size_t start = 0; start < chunks.size(); start += kBlock) {
    const std::size_t end = std::min(chunks.size(), start + kBlock);
    std::vector<std::string> texts;
    for (std::size_t i = start; i < end; ++i) texts.push_back(chunks[i].text);
    std::vector<EmbeddingVector> vectors;
    try {
      vectors = embedder.embed_batch(texts);
    } catch (const Error& e) {
      throw IndexBuildError("embedding failed at chunk " + chunks[start].chunk_id + ": " + e.what(),
                            chunks[start].chunk_id);
    }
    for (std::size_t i = start; i < end; ++i) {
      const auto& v = vectors[i - start];
      if (v.dimension() != info.dimension) {
        throw IndexBuildError("embedding for chunk " + chunks[i].chunk_id + " has wrong dimension",
                              chunks[i].chunk_id);
      }
      ids.push_back(chunks[i].chunk_id);
      matrix.insert(matrix.end(), v.values.begin(), v.values.end());
    }
  }
  return RetrievalIndex(corpus.philosopher_id(), info, std::move(ids), std::move(matrix));
}

RetrievalResult score_distribution(const RetrievalIndex& index, const EmbeddingVector& query,
                                   std::size_t k) {
  if (k == 0) throw ContractError("k must be >= 1");
  if (index.empty()) throw ContractError("retrieval index is empty");
  if (query.dimension() != index.dimension()) {
    throw ContractError("query dimension " + std::to_string(query.dimension()) +
                        " does not match index dimension " + std::to_string(index.dimension()));
  }
  const std::size_t n = index.size();
  std::vector<double> scores(n);
  kernels::inner_products({index.matrix(), index.dimension()}, query.values, scores);

  const std::size_t m = std::min(k, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& ids = index.chunk_ids();
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] > scores[b] || (scores[a] == scores[b] && ids[a] < ids[b]);
                    });

  RetrievalResult result;
  result.requested_k = k;
  result.truncated = k > n;
  const double top = scores[order.front()];
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += std::exp(scores[order[i]] - top);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = order[i];
    result.items.push_back({ids[r], scores[r], std::exp(scores[r] - top) / total});
  }
  return result;
}

MipsHit mips_max(const RetrievalIndex& index, const EmbeddingVector& probe) {
  if (index.empty()) throw ContractError("mips_max on an empty index");
  if (probe.dimension() != index.dimension()) throw ContractError("probe dimension does not match index");
  const auto best = kernels::argmax_inner_product({index.matrix(), index.dimension()}, probe.values,
                                                  index.chunk_ids());
  return {index.chunk_ids()[best.row], best.score};
}

}  // namespace epistemo
