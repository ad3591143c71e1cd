#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epistemo/conceptnet.hpp"
#include "epistemo/dialogue.hpp"

namespace fixtures {

using namespace epistemo;

/// Assembles schema-valid transcripts turn by turn.
class TranscriptBuilder {
 public:
  explicit TranscriptBuilder(std::vector<std::string> agent_ids,
                             Condition condition = Condition::Maieutic) {
    t_.tool_version = "test";
    t_.config_digest = std::string(64, '0');
    t_.condition = condition;
    t_.seed = 7;
    for (const auto& id : agent_ids) {
      t_.agents.push_back({id, "AI-clone of " + id, default_color(id), id});
    }
    Turn seed;
    seed.index = 0;
    seed.speaker = std::string(kHumanSpeaker);
    seed.kind = TurnKind::SeedQuestion;
    seed.text = "What is knowledge?";
    t_.turns.push_back(seed);
  }

  /// Answers the previous turn unless `triggered_by` is given.
  std::size_t answer(const std::string& speaker, std::vector<std::string> keywords,
                     std::string text = {}, std::optional<std::size_t> triggered_by = {}) {
    Turn a;
    a.index = t_.turns.size();
    a.speaker = speaker;
    a.kind = TurnKind::Answer;
    if (text.empty()) {
      for (const auto& k : keywords) text += (text.empty() ? "" : " ") + k;
      text += ".";
    }
    a.text = std::move(text);
    a.triggered_by = triggered_by.value_or(a.index - 1);
    a.retrieved = {{speaker + "-doc#000000", 1.0}};
    a.keywords = std::move(keywords);
    a.backend = "extractive-v1";
    if (a.index == 1) t_.turns[0].addressed_to = speaker;
    t_.turns.push_back(std::move(a));
    return t_.turns.back().index;
  }

  std::size_t question(const std::string& speaker, const std::string& to, std::size_t about,
                       const std::string& keyword = "thing") {
    Turn q;
    q.index = t_.turns.size();
    q.speaker = speaker;
    q.kind = TurnKind::MachineQuestion;
    q.text = "What do you think of " + keyword + "?";
    q.addressed_to = to;
    q.triggered_by = about;
    q.backend = "extractive-v1";
    t_.turns.push_back(std::move(q));
    return t_.turns.back().index;
  }

  const Transcript& transcript() const { return t_; }

 private:
  Transcript t_;
};

inline const std::vector<std::string> kList2{"book", "read", "gospel", "fact", "possibility"};
inline const std::vector<std::string> kList3{"principle", "hostility", "amount", "friendship", "fact"};
inline const std::vector<std::string> kList4{"philosophy", "fact", "sit", "thing", "people"};
inline const std::vector<std::string> kList5{"master", "morality", "reality", "mean", "modernity"};
inline const std::vector<std::string> kListIv{"question", "need", "anything", "thing", "sure"};

/// Chunks (2), (3), (4), (5) by one agent, then a machine question about (2)
/// answered by a second agent with (iv). Returns turn indices via out-params.
inline Transcript keyword_list_fixture(std::size_t* turn2 = nullptr, std::size_t* turn_iv = nullptr) {
  TranscriptBuilder b({"nietzsche", "aristotle"});
  const auto t2 = b.answer("nietzsche", kList2);
  b.answer("nietzsche", kList3);
  b.answer("nietzsche", kList4);
  b.answer("nietzsche", kList5);
  const auto q = b.question("nietzsche", "aristotle", t2, "book");
  const auto tiv = b.answer("aristotle", kListIv);
  if (turn2) *turn2 = t2;
  if (turn_iv) *turn_iv = tiv;
  return b.transcript();
}

/// The (2)/(iv) fixture alone: two agents, one mediated question.
inline Transcript maieutic_pair_fixture() {
  TranscriptBuilder b({"nietzsche", "aristotle"});
  const auto t2 = b.answer("nietzsche", kList2);
  b.question("nietzsche", "aristotle", t2, "book");
  b.answer("aristotle", kListIv);
  return b.transcript();
}

/// Random schema-valid transcript: 2-4 agents, up to `max_answers` answers drawn
/// from a small vocabulary, machine questions inserted with probability `p_question`.
inline Transcript random_transcript(std::mt19937_64& rng, std::size_t max_answers = 30,
                                    double p_question = 0.4, std::size_t vocabulary = 25) {
  std::uniform_int_distribution<std::size_t> n_agents(2, 4);
  const std::vector<std::string> pool{"aristotle", "nietzsche", "machiavelli", "sun-tzu"};
  std::vector<std::string> ids(pool.begin(), pool.begin() + static_cast<long>(n_agents(rng)));
  TranscriptBuilder b(ids);
  std::uniform_int_distribution<std::size_t> n_answers(1, max_answers);
  std::uniform_int_distribution<std::size_t> pick_agent(0, ids.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_word(0, vocabulary - 1);
  std::bernoulli_distribution ask(p_question);

  auto keywords = [&] {
    std::set<std::string> set;
    while (set.size() < kKeywordsPerChunk) set.insert("w" + std::to_string(pick_word(rng)));
    std::vector<std::string> out(set.begin(), set.end());
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  };

  const std::size_t answers = n_answers(rng);
  std::string speaker = ids[pick_agent(rng)];
  std::size_t last = b.answer(speaker, keywords());
  for (std::size_t i = 1; i < answers; ++i) {
    std::string next = ids[pick_agent(rng)];
    if (next == speaker) next = ids[(pick_agent(rng) + 1) % ids.size()];
    if (next == speaker) next = ids[(std::find(ids.begin(), ids.end(), speaker) - ids.begin() + 1) % ids.size()];
    if (ask(rng)) {
      b.question(speaker, next, last);
    }
    last = b.answer(next, keywords());
    speaker = next;
  }
  return b.transcript();
}

/// Arbitrary undirected multigraph with random edge kinds and occasional self-loops.
inline Graph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 50, double max_density = 0.5) {
  std::uniform_int_distribution<std::size_t> n_dist(0, max_nodes);
  std::uniform_real_distribution<double> density(0.0, max_density);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Graph g;
  g.level = Level::Concept;
  const std::size_t n = n_dist(rng);
  const double p = density(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Node node;
    node.id = 3 * i + 1;
    node.ordinal = i;
    node.chunk_index = i + 1;
    node.agent_id = "a";
    g.nodes.push_back(node);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i == j && u01(rng) > 0.05) continue;
      if (u01(rng) >= p) continue;
      g.edges.push_back({i, j, static_cast<EdgeKind>(kind(rng)), std::nullopt, false});
      if (u01(rng) < 0.1) g.edges.push_back({j, i, static_cast<EdgeKind>(kind(rng)), std::nullopt, false});
    }
  }
  return g;
}

/// Fresh empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("epistemo-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
