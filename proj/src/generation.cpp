#include "epistemo/generation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "epistemo/digest.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/text.hpp"

namespace epistemo {
namespace {

nlohmann::ordered_json canonical(const GenerationRequest& r) {
  nlohmann::ordered_json j;
  j["persona_label"] = r.persona_label;
  j["task"] = to_string(r.task);
  j["input_text"] = r.input_text;
  auto& retrieved = j["retrieved"] = nlohmann::ordered_json::array();
  for (const auto& p : r.retrieved) {
    retrieved.push_back({{"chunk_id", p.chunk_id}, {"probability", p.probability}, {"text", p.text}});
  }
  j["budget_tokens"] = r.budget_tokens;
  j["seed"] = r.seed;
  j["temperature"] = r.temperature;
  return j;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Length of a closing quote or bracket at `s`, 0 if none.
std::size_t closer_length(std::string_view s) {
  if (s.empty()) return 0;
  const char c = s.front();
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (s.starts_with("”") || s.starts_with("’")) return 3;
  return 0;
}

}  // namespace

std::string_view to_string(Task task) { return task == Task::Answer ? "answer" : "question"; }

void validate(const GenerationRequest& request) {
  if (request.budget_tokens < kMinBudgetTokens) {
    throw ContractError("budget_tokens must be >= " + std::to_string(kMinBudgetTokens));
  }
  if (!(request.temperature >= 0.0) || !std::isfinite(request.temperature)) {
    throw ContractError("temperature must be a finite value >= 0");
  }
  if (request.task == Task::Answer && request.retrieved.empty()) {
    throw ContractError("answer request without retrieved chunks");
  }
}

std::string request_digest(const GenerationRequest& request) {
  return sha256_hex(canonical(request).dump());
}

bool verify_attribution(const GeneratedText& generated, const GenerationRequest& request) {
  return generated.request_digest == request_digest(request);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  auto emit = [&](std::size_t end) {
    auto s = trim(text.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = end;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t end = i + 1;
      while (end < text.size() && (text[end] == '.' || text[end] == '!' || text[end] == '?')) ++end;
      while (std::size_t len = closer_length(text.substr(end))) end += len;
      if (end == text.size() || is_space(text[end])) {
        emit(end);
        i = end;
        continue;
      }
      i = end;
      continue;
    }
    ++i;
  }
  if (start < text.size()) emit(text.size());
  return out;
}

std::string truncate_to_tokens(std::string_view text, std::size_t budget) {
  const auto spans = tokenize_spans(text);
  if (spans.size() <= budget) return std::string(text);
  if (budget == 0) return {};
  return std::string(text.substr(0, spans[budget - 1].end));
}

// --- ExtractiveBackend ---

ExtractiveBackend::ExtractiveBackend(std::string question_template)
    : template_(std::move(question_template)) {
  if (template_.find("{}") == std::string::npos) throw ContractError("question template needs a {} slot");
  if (template_.empty() || template_.back() != '?') throw ContractError("question template must end with '?'");
}

std::string ExtractiveBackend::question_for(std::string_view keyword) const {
  std::string q = template_;
  q.replace(q.find("{}"), 2, keyword);
  return q;
}

GeneratedText ExtractiveBackend::generate_answer(const GenerationRequest& request) const {
  validate(request);
  if (request.task != Task::Answer) throw ContractError("generate_answer needs task=answer");

  std::vector<const RetrievedPassage*> passages;
  for (const auto& p : request.retrieved) passages.push_back(&p);
  std::stable_sort(passages.begin(), passages.end(),
                   [](const auto* a, const auto* b) { return a->probability > b->probability; });

  std::vector<std::string> picked;
  std::unordered_set<std::string> seen;
  std::size_t used = 0;
  bool full = false;
  for (const auto* p : passages) {
    for (auto& sentence : split_sentences(p->text)) {
      const std::size_t n = tokenize(sentence).size();
      if (n == 0 || seen.count(sentence) != 0) continue;
      if (used + n > request.budget_tokens) {
        if (picked.empty()) picked.push_back(truncate_to_tokens(sentence, request.budget_tokens));
        full = true;
        break;
      }
      used += n;
      seen.insert(sentence);
      picked.push_back(std::move(sentence));
    }
    if (full) break;
  }
  if (picked.empty()) throw GenerationError("retrieved chunks contain no text to extract");

  std::string text;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    if (i) text.push_back(' ');
    text += picked[i];
  }
  return {std::move(text), name(), request_digest(request)};
}

std::optional<std::string> ExtractiveBackend::formulate_question(
    std::span<const std::string> keywords, const std::set<std::string>& already_asked,
    std::uint64_t /*seed*/, std::string_view /*persona_label*/) const {
  if (keywords.empty()) throw ContractError("formulate_question needs at least one keyword");
  for (const auto& k : keywords) {
    if (k.empty() || k.front() == '_') continue;  // padding sentinels
    auto q = question_for(k);
    if (already_asked.count(q) == 0) return q;
  }
  return std::nullopt;
}

// --- EndpointBackend ---

EndpointBackend::EndpointBackend(EndpointConfig config)
    : config_(std::move(config)),
      in_flight_(std::make_shared<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_in_flight)))) {}

std::string EndpointBackend::call(const GenerationRequest& request) const {
  nlohmann::json body;
  body["persona_label"] = request.persona_label;
  body["task"] = to_string(request.task);
  body["input_text"] = request.input_text;
  std::vector<std::string> context;
  for (const auto& p : request.retrieved) context.push_back(p.text);
  body["context"] = context;
  body["max_tokens"] = request.budget_tokens;
  body["temperature"] = request.temperature;
  body["seed"] = request.seed;

  in_flight_->acquire();
  nlohmann::json reply;
  try {
    reply = post_json(config_, body);
  } catch (...) {
    in_flight_->release();
    throw;
  }
  in_flight_->release();
  if (!reply.contains("text") || !reply["text"].is_string()) {
    throw GenerationError("generation endpoint reply lacks a text field");
  }
  return reply["text"].get<std::string>();
}

GeneratedText EndpointBackend::generate_answer(const GenerationRequest& request) const {
  validate(request);
  if (request.task != Task::Answer) throw ContractError("generate_answer needs task=answer");
  std::string text(trim(truncate_to_tokens(call(request), request.budget_tokens)));
  if (text.empty()) throw GenerationError("generation endpoint returned empty text");
  return {std::move(text), name(), request_digest(request)};
}

std::optional<std::string> EndpointBackend::formulate_question(
    std::span<const std::string> keywords, const std::set<std::string>& already_asked,
    std::uint64_t seed, std::string_view persona_label) const {
  if (keywords.empty()) throw ContractError("formulate_question needs at least one keyword");
  GenerationRequest request;
  request.persona_label = std::string(persona_label);
  request.task = Task::Question;
  for (const auto& k : keywords) {
    if (k.empty() || k.front() == '_') continue;
    if (!request.input_text.empty()) request.input_text += ", ";
    request.input_text += k;
  }
  if (request.input_text.empty()) return std::nullopt;
  request.budget_tokens = 32;
  request.seed = seed;
  std::string q(trim(call(request)));
  if (q.empty()) throw GenerationError("generation endpoint returned an empty question");
  if (q.back() != '?') q.push_back('?');
  if (already_asked.count(q) != 0) return std::nullopt;
  return q;
}

}  // namespace epistemo
