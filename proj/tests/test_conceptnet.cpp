#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "epistemo/conceptnet.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/text.hpp"
#include "support/fixtures.hpp"

using namespace epistemo;

namespace {

using IdEdge = std::tuple<std::size_t, std::size_t, EdgeKind>;

std::set<IdEdge> id_edges(const Graph& g, std::optional<EdgeKind> only = std::nullopt) {
  std::set<IdEdge> out;
  for (const auto& e : g.edges) {
    if (only && e.kind != *only) continue;
    auto a = g.nodes[e.u].id, b = g.nodes[e.v].id;
    out.emplace(std::min(a, b), std::max(a, b), e.kind);
  }
  return out;
}

// Union-find census over node ids.
std::vector<std::vector<std::size_t>> union_find_components(const Graph& g) {
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.u)] = find(e.v);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) groups[find(i)].push_back(g.nodes[i].id);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    out.push_back(ids);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Transcript fact_fixture() {
  fixtures::TranscriptBuilder b({"nietzsche"});
  b.answer("nietzsche", fixtures::kList2);
  b.answer("nietzsche", fixtures::kList3);
  b.answer("nietzsche", fixtures::kList4);
  return b.transcript();
}

}  // namespace

TEST_CASE("extract_keywords ranks by frequency then first occurrence") {
  const std::string passage =
      "The book was read aloud, and the book was read again; the gospel in the book was a fact, "
      "and that fact opened a possibility.";
  const auto k = extract_keywords(passage, StopList::english());
  CHECK(k == std::vector<std::string>{"book", "read", "fact", "aloud", "gospel"});
  const auto tokens = tokenize(passage);
  for (const auto& w : k) CHECK(std::find(tokens.begin(), tokens.end(), w) != tokens.end());

  const auto short_text = extract_keywords("Virtue, virtue and habit.", StopList::english());
  CHECK(short_text == std::vector<std::string>{"virtue", "habit", "_pad1", "_pad2", "_pad3"});
  CHECK(is_pad_keyword(short_text[4]));
  CHECK_THROWS_AS(extract_keywords("...", StopList::english()), ValidationError);
}

TEST_CASE("keyword fixture: the shared keyword 'fact' links chunks (2), (3), (4)") {
  const auto net = build_network(fact_fixture());
  CHECK(id_edges(net.concept_view, EdgeKind::Lexical) ==
        std::set<IdEdge>{{0, 1, EdgeKind::Lexical}, {0, 2, EdgeKind::Lexical}, {1, 2, EdgeKind::Lexical}});

  // Keyword level: ranks of "fact" are 3, 4 and 1.
  CHECK(id_edges(net.keyword_view, EdgeKind::Lexical) ==
        std::set<IdEdge>{{3, 9, EdgeKind::Lexical}, {3, 11, EdgeKind::Lexical}, {9, 11, EdgeKind::Lexical}});
  CHECK(id_edges(net.keyword_view, EdgeKind::IntraChunk).size() == 30);

  const auto comps = connected_components(net.keyword_view);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == 15);
  CHECK(comps == union_find_components(net.keyword_view));
}

TEST_CASE("keyword-list fixture: (5) is isolated and (2)-(iv) is linked only by the question") {
  std::size_t t2 = 0, tiv = 0;
  const auto net = build_network(fixtures::keyword_list_fixture(&t2, &tiv));
  const auto& g = net.concept_view;
  REQUIRE(g.nodes.size() == 5);
  CHECK(g.nodes[4].chunk_index == tiv);
  CHECK(g.nodes[0].chunk_index == t2);

  const auto lexical = id_edges(g, EdgeKind::Lexical);
  std::set<IdEdge> among_first_four;
  for (const auto& e : lexical) {
    if (std::get<1>(e) < 4) among_first_four.insert(e);
  }
  CHECK(among_first_four ==
        std::set<IdEdge>{{0, 1, EdgeKind::Lexical}, {0, 2, EdgeKind::Lexical}, {1, 2, EdgeKind::Lexical}});
  CHECK(lexical.count({0, 4, EdgeKind::Lexical}) == 0);
  CHECK(std::none_of(lexical.begin(), lexical.end(), [](const IdEdge& e) {
    return std::get<0>(e) == 3 || std::get<1>(e) == 3;
  }));

  const auto maieutic = id_edges(g, EdgeKind::Maieutic);
  CHECK(maieutic == std::set<IdEdge>{{0, 4, EdgeKind::Maieutic}});
  const auto it = std::find_if(g.edges.begin(), g.edges.end(), [](const Edge& e) { return e.kind == EdgeKind::Maieutic; });
  CHECK(it->mediating_question == t2 + 4);

  const auto comps = connected_components(g);
  CHECK(std::find(comps.begin(), comps.end(), std::vector<std::size_t>{3}) != comps.end());

  const auto kcomps = connected_components(net.keyword_view);
  CHECK(std::find(kcomps.begin(), kcomps.end(), std::vector<std::size_t>{15, 16, 17, 18, 19}) != kcomps.end());
}

TEST_CASE("maieutic lift projects onto the top keywords") {
  const auto pair = fixtures::maieutic_pair_fixture();
  const auto lifted = build_network(pair);
  CHECK(id_edges(lifted.keyword_view, EdgeKind::Maieutic) == std::set<IdEdge>{{0, 5, EdgeKind::Maieutic}});
  for (const auto& e : lifted.keyword_view.edges) {
    if (e.kind == EdgeKind::Maieutic) CHECK(e.lift);
  }
  const auto plain = build_network(pair, {.maieutic_lift = false});
  CHECK(id_edges(plain.keyword_view, EdgeKind::Maieutic).empty());
  CHECK(id_edges(plain.concept_view, EdgeKind::Maieutic).size() == 1);
}

TEST_CASE("agent_subgraph pulls in the foreign endpoint of a maieutic edge") {
  const auto net = build_network(fixtures::maieutic_pair_fixture());
  const auto with = agent_subgraph(net, "nietzsche", true);
  REQUIRE(with.concept_view.nodes.size() == 2);
  CHECK(with.concept_view.edges.size() == 1);
  CHECK_FALSE(with.concept_view.nodes[0].boundary);
  CHECK(with.concept_view.nodes[1].boundary);
  CHECK(with.concept_view.nodes[1].agent_id == "aristotle");

  const auto without = agent_subgraph(net, "nietzsche", false);
  CHECK(without.concept_view.nodes.size() == 1);
  CHECK(without.concept_view.edges.empty());
  CHECK(with.agent_filter == "nietzsche");
  CHECK_THROWS_AS(agent_subgraph(net, "kant", true), ValidationError);
}

TEST_CASE("prefix_network equals the network of the truncated transcript") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = fixtures::random_transcript(rng, 15);
    const auto full = build_network(t);
    for (std::size_t k = 1; k <= full.answer_count; ++k) {
      Transcript cut = t;
      std::size_t answers = 0;
      std::size_t keep = 0;
      for (; keep < cut.turns.size(); ++keep) {
        if (cut.turns[keep].kind == TurnKind::Answer && ++answers > k) break;
      }
      cut.turns.resize(keep);
      const auto rebuilt = build_network(cut);
      const auto prefix = prefix_network(full, k);
      CHECK(prefix.concept_view == rebuilt.concept_view);
      CHECK(prefix.keyword_view == rebuilt.keyword_view);
    }
  }
}

TEST_CASE("components match a union-find census on random transcripts") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = build_network(fixtures::random_transcript(rng));
    for (auto level : {Level::Keyword, Level::Concept}) {
      const auto& g = net.view(level);
      CHECK(connected_components(g) == union_find_components(g));
      CHECK(std::is_sorted(g.edges.begin(), g.edges.end(), [&](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v, a.kind) < std::tie(b.u, b.v, b.kind);
      }));
    }
  }
}

TEST_CASE("empty network and level names") {
  fixtures::TranscriptBuilder b({"a", "b"});
  const auto net = build_network(b.transcript());
  CHECK(net.concept_view.nodes.empty());
  CHECK(connected_components(net.concept_view).empty());
  CHECK(parse_level("keyword") == Level::Keyword);
  CHECK(parse_edge_kind(to_string(EdgeKind::Maieutic)) == EdgeKind::Maieutic);
  CHECK_FALSE(parse_level("word").has_value());
}
