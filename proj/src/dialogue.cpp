#include "epistemo/dialogue.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "epistemo/conceptnet.hpp"
#include "epistemo/digest.hpp"
#include "epistemo/io.hpp"

namespace epistemo {
namespace {

[[noreturn]] void turn_error(std::size_t turn, std::string_view field, const std::string& what) {
  throw ParseError("turn " + std::to_string(turn) + ": field '" + std::string(field) + "': " + what);
}

const AgentProfile& find_agent(std::span<const AgentProfile> agents, const std::string& id) {
  for (const auto& a : agents) {
    if (a.agent_id == id) return a;
  }
  throw ContractError("unknown agent: " + id);
}

}  // namespace

bool has_provenance_label(std::string_view label) {
  return label.find("AI-clone of") != std::string_view::npos ||
         label.find("inspired by") != std::string_view::npos;
}

std::string default_color(std::string_view agent_id) {
  if (agent_id == "aristotle") return "blue";
  if (agent_id == "nietzsche") return "red";
  if (agent_id == "machiavelli") return "green";
  if (agent_id == "sun-tzu") return "yellow";
  return "gray";
}

std::string_view to_string(Condition c) { return c == Condition::Maieutic ? "maieutic" : "question-off"; }

std::string_view to_string(TurnKind k) {
  switch (k) {
    case TurnKind::SeedQuestion: return "seed-question";
    case TurnKind::Answer: return "answer";
    case TurnKind::MachineQuestion: return "machine-question";
  }
  return "answer";
}

std::optional<Condition> parse_condition(std::string_view s) {
  if (s == "maieutic") return Condition::Maieutic;
  if (s == "question-off") return Condition::QuestionOff;
  return std::nullopt;
}

std::optional<TurnKind> parse_turn_kind(std::string_view s) {
  if (s == "seed-question") return TurnKind::SeedQuestion;
  if (s == "answer") return TurnKind::Answer;
  if (s == "machine-question") return TurnKind::MachineQuestion;
  return std::nullopt;
}

std::size_t Transcript::answer_count() const {
  return static_cast<std::size_t>(std::count_if(
      turns.begin(), turns.end(), [](const Turn& t) { return t.kind == TurnKind::Answer; }));
}

void validate(const DebateConfig& config) {
  if (config.agents.size() < 2) throw ValidationError("a debate needs at least two agents");
  std::unordered_set<std::string> ids;
  for (const auto& a : config.agents) {
    if (a.agent_id.empty() || a.agent_id == kHumanSpeaker) throw ValidationError("invalid agent id: '" + a.agent_id + "'");
    if (!ids.insert(a.agent_id).second) throw ValidationError("duplicate agent id: " + a.agent_id);
    if (!has_provenance_label(a.display_label)) {
      throw ValidationError("display label of " + a.agent_id + " must contain \"AI-clone of\" or \"inspired by\"");
    }
    if (!a.corpus || !a.index || a.index->empty()) throw ValidationError("agent " + a.agent_id + " has no built index");
    if (a.index->dimension() != config.agents.front().index->dimension()) {
      throw ValidationError("agent indices disagree on embedding dimension");
    }
  }
  if (tokenize(config.initial_question).empty()) throw ValidationError("initial question has no words");
  if (config.max_turns < 1) throw ValidationError("max_turns must be >= 1");
  if (config.k < 1) throw ValidationError("k must be >= 1");
  if (config.budget_tokens < kMinBudgetTokens) throw ValidationError("budget_tokens must be >= 16");
}

std::string config_digest(const DebateConfig& config, const Backend& backend, const Embedder& embedder) {
  nlohmann::ordered_json j;
  auto& agents = j["agents"] = nlohmann::ordered_json::array();
  for (const auto& a : config.agents) {
    agents.push_back({{"agent_id", a.agent_id},
                      {"display_label", a.display_label},
                      {"color", a.color},
                      {"philosopher_id", a.corpus ? a.corpus->philosopher_id() : std::string{}},
                      {"index_embedder", a.index ? a.index->embedder().fingerprint : std::string{}},
                      {"index_size", a.index ? a.index->size() : 0}});
  }
  j["initial_question"] = config.initial_question;
  j["max_turns"] = config.max_turns;
  j["condition"] = to_string(config.condition);
  j["k"] = config.k;
  j["seed"] = config.seed;
  j["budget_tokens"] = config.budget_tokens;
  j["temperature"] = config.temperature;
  j["stoplist"] = config.stoplist.version();
  j["backend"] = backend.name();
  const auto info = embedder.info();
  j["embedder"] = {{"name", info.name}, {"dimension", info.dimension}, {"fingerprint", info.fingerprint}};
  return sha256_hex(j.dump());
}

SpeakerChoice select_next_speaker(std::span<const AgentProfile> agents, const EmbeddingVector& query,
                                  const std::optional<std::string>& exclude) {
  std::optional<SpeakerChoice> best;
  for (const auto& a : agents) {
    if (exclude && a.agent_id == *exclude) continue;
    if (!a.index) throw ContractError("agent " + a.agent_id + " has no index");
    const auto hit = mips_max(*a.index, query);
    if (!best || hit.raw_score > best->confidence) best = SpeakerChoice{a.agent_id, hit.chunk_id, hit.raw_score};
  }
  if (!best) throw ContractError("no eligible speaker");
  return *best;
}

std::string select_next_speaker(std::span<const AgentProfile> agents, std::string_view query_text,
                                const Embedder& embedder, const std::optional<std::string>& exclude) {
  return select_next_speaker(agents, embedder.embed(query_text), exclude).agent_id;
}

Transcript run_debate(const DebateConfig& config, const Backend& backend, const Embedder& embedder) {
  validate(config);
  Transcript t;
  t.tool_version = std::string(tool_version());
  t.config_digest = config_digest(config, backend, embedder);
  t.condition = config.condition;
  t.seed = config.seed;
  for (const auto& a : config.agents) {
    t.agents.push_back({a.agent_id, a.display_label, a.color, a.corpus->philosopher_id()});
  }
  const bool multi = config.agents.size() > 1;

  try {
    Turn seed;
    seed.index = 0;
    seed.speaker = std::string(kHumanSpeaker);
    seed.kind = TurnKind::SeedQuestion;
    seed.text = config.initial_question;
    seed.addressed_to = select_next_speaker(config.agents, seed.text, embedder);
    t.turns.push_back(seed);

    std::string query = seed.text;
    std::size_t pending_turn = 0;
    std::string answerer = *seed.addressed_to;
    std::set<std::string> asked;
    std::size_t answers = 0;

    while (answers < config.max_turns) {
      const AgentProfile& speaker = find_agent(config.agents, answerer);
      const auto retrieval = score_distribution(*speaker.index, embedder.embed(query), config.k);

      GenerationRequest request;
      request.persona_label = speaker.display_label;
      request.task = Task::Answer;
      request.input_text = query;
      request.budget_tokens = config.budget_tokens;
      request.seed = config.seed + t.turns.size();
      request.temperature = config.temperature;
      for (const auto& item : retrieval.items) {
        const Chunk* chunk = speaker.corpus->find_chunk(item.chunk_id);
        if (chunk == nullptr) throw ContractError("index chunk " + item.chunk_id + " missing from corpus");
        request.retrieved.push_back({item.chunk_id, item.probability, chunk->text});
      }
      const auto generated = backend.generate_answer(request);

      Turn answer;
      answer.index = t.turns.size();
      answer.speaker = speaker.agent_id;
      answer.kind = TurnKind::Answer;
      answer.text = generated.text;
      answer.triggered_by = pending_turn;
      for (const auto& item : retrieval.items) answer.retrieved.push_back({item.chunk_id, item.probability});
      answer.keywords = extract_keywords(answer.text, config.stoplist);
      answer.backend = generated.backend_name;
      answer.request_digest = generated.request_digest;
      t.turns.push_back(answer);
      ++answers;
      if (answers == config.max_turns) break;

      if (config.condition == Condition::Maieutic) {
        auto question = backend.formulate_question(answer.keywords, asked, config.seed + t.turns.size(),
                                                   speaker.display_label);
        if (question) {
          Turn q;
          q.index = t.turns.size();
          q.speaker = speaker.agent_id;
          q.kind = TurnKind::MachineQuestion;
          q.text = *question;
          q.addressed_to = select_next_speaker(config.agents, q.text, embedder, speaker.agent_id);
          q.triggered_by = answer.index;
          q.backend = backend.name();
          t.turns.push_back(q);
          asked.insert(*question);
          query = q.text;
          pending_turn = q.index;
          answerer = *q.addressed_to;
          continue;
        }
      }
      query = answer.text;
      pending_turn = answer.index;
      answerer = select_next_speaker(config.agents, query, embedder,
                                     multi ? std::optional<std::string>(speaker.agent_id) : std::nullopt);
    }
  } catch (const TransportError& e) {
    t.complete = false;
    t.abort_reason = e.what();
    throw DebateAborted(std::string("debate aborted: ") + e.what(), std::move(t), true);
  } catch (const GenerationError& e) {
    t.complete = false;
    t.abort_reason = e.what();
    throw DebateAborted(std::string("debate aborted: ") + e.what(), std::move(t), true);
  } catch (const Error& e) {
    t.complete = false;
    t.abort_reason = e.what();
    throw DebateAborted(std::string("debate aborted: ") + e.what(), std::move(t), false);
  }
  return t;
}

void validate_transcript(const Transcript& t) {
  if (t.schema_version != kSchemaVersion) {
    throw ParseError("unsupported schema_version \"" + t.schema_version + "\"");
  }
  std::unordered_set<std::string> agents;
  for (const auto& a : t.agents) {
    if (!agents.insert(a.agent_id).second) throw ParseError("duplicate agent id in transcript: " + a.agent_id);
  }
  if (t.turns.empty()) throw ParseError("transcript has no turns");

  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const Turn& turn = t.turns[i];
    if (turn.index != i) turn_error(i, "index", "non-contiguous (found " + std::to_string(turn.index) + ")");
    if (turn.text.empty()) turn_error(i, "text", "empty");
    if (turn.triggered_by && *turn.triggered_by >= i) turn_error(i, "triggered_by", "must point to an earlier turn");
    if (turn.addressed_to && agents.count(*turn.addressed_to) == 0) turn_error(i, "addressed_to", "unknown agent");
    if (turn.kind != TurnKind::Answer && (!turn.keywords.empty() || !turn.retrieved.empty())) {
      turn_error(i, "keywords", "only answer turns carry keywords and retrieval");
    }

    switch (turn.kind) {
      case TurnKind::SeedQuestion:
        if (i != 0) turn_error(i, "kind", "seed-question only allowed at turn 0");
        if (turn.speaker != kHumanSpeaker) turn_error(i, "speaker", "seed question speaker must be \"human\"");
        break;
      case TurnKind::Answer: {
        if (i == 0) turn_error(i, "kind", "turn 0 must be the seed question");
        if (agents.count(turn.speaker) == 0) turn_error(i, "speaker", "unknown agent");
        if (!turn.triggered_by) turn_error(i, "triggered_by", "answer must point to what it answers");
        if (turn.retrieved.empty()) turn_error(i, "retrieved", "answer without retrieval provenance");
        if (turn.keywords.size() != kKeywordsPerChunk) turn_error(i, "keywords", "answer needs exactly 5 keywords");
        const Turn& cause = t.turns[*turn.triggered_by];
        if (cause.addressed_to && cause.kind != TurnKind::Answer && *cause.addressed_to != turn.speaker) {
          turn_error(i, "speaker", "answer not given by the addressed agent");
        }
        break;
      }
      case TurnKind::MachineQuestion:
        if (i == 0) turn_error(i, "kind", "turn 0 must be the seed question");
        if (t.condition == Condition::QuestionOff) {
          turn_error(i, "kind", "machine-question in a question-off transcript");
        }
        if (agents.count(turn.speaker) == 0) turn_error(i, "speaker", "unknown agent");
        if (!turn.addressed_to) turn_error(i, "addressed_to", "machine question must be addressed");
        if (*turn.addressed_to == turn.speaker) turn_error(i, "addressed_to", "agent asked itself");
        if (!turn.triggered_by || t.turns[*turn.triggered_by].kind != TurnKind::Answer) {
          turn_error(i, "triggered_by", "machine question must point to an answer");
        }
        break;
    }
  }
}

Transcript replay(const std::filesystem::path& transcript_path) { return read_transcript(transcript_path); }

}  // namespace epistemo
