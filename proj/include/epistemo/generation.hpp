#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epistemo/http_client.hpp"

namespace epistemo {

enum class Task { Answer, Question };

std::string_view to_string(Task task);

struct RetrievedPassage {
  std::string chunk_id;
  double probability = 0.0;
  std::string text;
};

struct GenerationRequest {
  std::string persona_label;
  Task task = Task::Answer;
  std::string input_text;
  std::vector<RetrievedPassage> retrieved;
  std::size_t budget_tokens = 120;
  std::uint64_t seed = 0;
  double temperature = 0.0;
};

inline constexpr std::size_t kMinBudgetTokens = 16;

/// Throws ContractError when budget < 16, temperature < 0, or an answer request has no context.
void validate(const GenerationRequest& request);

/// SHA-256 over the canonical JSON encoding of every request field.
std::string request_digest(const GenerationRequest& request);

struct GeneratedText {
  std::string text;
  std::string backend_name;
  std::string request_digest;
};

/// True when `generated` was produced from exactly `request`.
bool verify_attribution(const GeneratedText& generated, const GenerationRequest& request);

enum class BackendMode { ExtractiveDeterministic, ExternalEndpoint };

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual BackendMode mode() const = 0;

  virtual GeneratedText generate_answer(const GenerationRequest& request) const = 0;

  /// std::nullopt means every keyword is exhausted and the maieutic chain should end.
  /// A returned question is non-empty and ends with '?'.
  virtual std::optional<std::string> formulate_question(
      std::span<const std::string> keywords, const std::set<std::string>& already_asked,
      std::uint64_t seed, std::string_view persona_label = {}) const = 0;
};

/// Pure, deterministic backend. Answers are built from whole sentences of the
/// retrieved chunks; questions come from a `{}` template. Temperature is ignored.
class ExtractiveBackend final : public Backend {
 public:
  explicit ExtractiveBackend(std::string question_template = "What do you think of {}?");

  std::string name() const override { return "extractive-v1"; }
  BackendMode mode() const override { return BackendMode::ExtractiveDeterministic; }
  GeneratedText generate_answer(const GenerationRequest& request) const override;
  std::optional<std::string> formulate_question(std::span<const std::string> keywords,
                                                const std::set<std::string>& already_asked,
                                                std::uint64_t seed,
                                                std::string_view persona_label = {}) const override;

  std::string question_for(std::string_view keyword) const;

 private:
  std::string template_;
};

/// HTTP adapter: POST {persona_label, task, input_text, context, max_tokens,
/// temperature, seed} -> {text}. At most `config.max_in_flight` concurrent requests.
class EndpointBackend final : public Backend {
 public:
  explicit EndpointBackend(EndpointConfig config);

  std::string name() const override { return "endpoint"; }
  BackendMode mode() const override { return BackendMode::ExternalEndpoint; }
  GeneratedText generate_answer(const GenerationRequest& request) const override;
  std::optional<std::string> formulate_question(std::span<const std::string> keywords,
                                                const std::set<std::string>& already_asked,
                                                std::uint64_t seed,
                                                std::string_view persona_label = {}) const override;

 private:
  std::string call(const GenerationRequest& request) const;

  EndpointConfig config_;
  std::shared_ptr<std::counting_semaphore<>> in_flight_;
};

/// Sentences end after '.', '!' or '?' followed by whitespace or end of text; trimmed, non-empty.
std::vector<std::string> split_sentences(std::string_view text);

/// Prefix of `text` holding at most `budget` tokens (cut after the last kept token).
std::string truncate_to_tokens(std::string_view text, std::size_t budget);

}  // namespace epistemo
