#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epistemo/corpus.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/generation.hpp"
#include "epistemo/retrieval.hpp"
#include "epistemo/text.hpp"

namespace epistemo {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kHumanSpeaker = "human";

struct AgentProfile {
  std::string agent_id;
  std::string display_label;  // must contain "AI-clone of" or "inspired by"
  std::string color;
  std::shared_ptr<const Corpus> corpus;
  std::shared_ptr<const RetrievalIndex> index;
};

/// Agent identity as recorded in transcripts.
struct AgentInfo {
  std::string agent_id;
  std::string display_label;
  std::string color;
  std::string philosopher_id;
  bool operator==(const AgentInfo&) const = default;
};

bool has_provenance_label(std::string_view display_label);

/// Export color per agent: aristotle blue, nietzsche red, machiavelli green, sun-tzu yellow.
std::string default_color(std::string_view agent_id);

enum class Condition { Maieutic, QuestionOff };
enum class TurnKind { SeedQuestion, Answer, MachineQuestion };

std::string_view to_string(Condition c);
std::string_view to_string(TurnKind k);
std::optional<Condition> parse_condition(std::string_view s);
std::optional<TurnKind> parse_turn_kind(std::string_view s);

struct RetrievedRef {
  std::string chunk_id;
  double probability = 0.0;
  bool operator==(const RetrievedRef&) const = default;
};

struct Turn {
  std::size_t index = 0;
  std::string speaker;
  TurnKind kind = TurnKind::Answer;
  std::string text;
  std::optional<std::string> addressed_to;
  std::optional<std::size_t> triggered_by;
  std::vector<RetrievedRef> retrieved;  // answer turns only
  std::vector<std::string> keywords;    // exactly 5 on answer turns, empty otherwise
  std::optional<std::string> backend;
  std::optional<std::string> request_digest;
  bool operator==(const Turn&) const = default;
};

struct Transcript {
  std::string schema_version{kSchemaVersion};
  std::string tool_version;
  std::string config_digest;
  Condition condition = Condition::Maieutic;
  std::uint64_t seed = 0;
  bool complete = true;
  std::string abort_reason;
  std::vector<AgentInfo> agents;
  std::vector<Turn> turns;

  std::size_t answer_count() const;
  bool operator==(const Transcript&) const = default;
};

struct DebateConfig {
  std::vector<AgentProfile> agents;  // >= 2, order breaks ties
  std::string initial_question;
  std::size_t max_turns = 1;  // answer turns
  Condition condition = Condition::Maieutic;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::size_t budget_tokens = 120;
  double temperature = 0.0;
  StopList stoplist = StopList::english();
};

/// Throws ValidationError.
void validate(const DebateConfig& config);

std::string config_digest(const DebateConfig& config, const Backend& backend,
                          const Embedder& embedder);

/// Thrown when a debate stops early; carries the transcript so far (complete=false).
/// backend_failure() is true for transport and generation errors.
class DebateAborted : public Error {
 public:
  DebateAborted(const std::string& what, Transcript partial, bool backend_failure)
      : Error(what), partial_(std::move(partial)), backend_failure_(backend_failure) {}
  const Transcript& partial() const noexcept { return partial_; }
  bool backend_failure() const noexcept { return backend_failure_; }

 private:
  Transcript partial_;
  bool backend_failure_;
};

struct SpeakerChoice {
  std::string agent_id;
  std::string chunk_id;
  double confidence = 0.0;
};

/// MIPS confidence per eligible agent; the largest wins, ties go to config order.
/// Throws ContractError when no agent is eligible.
SpeakerChoice select_next_speaker(std::span<const AgentProfile> agents,
                                  const EmbeddingVector& query,
                                  const std::optional<std::string>& exclude = std::nullopt);
std::string select_next_speaker(std::span<const AgentProfile> agents, std::string_view query_text,
                                const Embedder& embedder,
                                const std::optional<std::string>& exclude = std::nullopt);

Transcript run_debate(const DebateConfig& config, const Backend& backend,
                      const Embedder& embedder);

/// Checks every Turn/Transcript invariant; throws ParseError naming the turn and field.
void validate_transcript(const Transcript& transcript);

/// Reads and validates a transcript file.
Transcript replay(const std::filesystem::path& transcript_path);

}  // namespace epistemo
