#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "epistemo/errors.hpp"
#include "epistemo/metrics.hpp"
#include "epistemo/retrieval.hpp"
#include "epistemo/text.hpp"
#include "support/fixtures.hpp"

using namespace epistemo;

namespace {

Graph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) {
    Node node;
    node.id = i;
    g.nodes.push_back(node);
  }
  for (auto [u, v] : edges) g.edges.push_back({u, v, EdgeKind::Lexical, std::nullopt, false});
  return g;
}

Graph clique(std::size_t offset, std::size_t size, Graph g = {}) {
  for (std::size_t i = 0; i < size; ++i) {
    Node node;
    node.id = offset + i;
    g.nodes.push_back(node);
  }
  const std::size_t base = g.nodes.size() - size;
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) g.edges.push_back({base + a, base + b, EdgeKind::IntraChunk, std::nullopt, false});
  }
  return g;
}

// Dense adjacency-matrix oracle for the mean normalized degree.
double matrix_centrality(const Graph& g, bool include_maieutic) {
  const std::size_t n = g.nodes.size();
  if (n <= 1) return 0.0;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges) {
    if (e.u == e.v || (!include_maieutic && e.kind == EdgeKind::Maieutic)) continue;
    adj[e.u][e.v] = adj[e.v][e.u] = 1;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto degree = std::count(adj[i].begin(), adj[i].end(), 1);
    sum += static_cast<double>(degree) / static_cast<double>(n - 1);
  }
  return sum / static_cast<double>(n);
}

std::size_t component_count(const Graph& g) {
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.u)] = find(e.v);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) roots += find(i) == i;
  return roots;
}

}  // namespace

TEST_CASE("average degree centrality closed forms") {
  CHECK(std::abs(average_degree_centrality(clique(0, 5)).c_d - 1.0) < 1e-12);
  CHECK(std::abs(average_degree_centrality(clique(5, 5, clique(0, 5))).c_d - 4.0 / 9.0) < 1e-12);
  CHECK(std::abs(average_degree_centrality(make_graph(3, {{0, 1}, {1, 2}})).c_d - 2.0 / 3.0) < 1e-12);
  CHECK(average_degree_centrality(make_graph(1, {})).c_d == 0.0);
  CHECK(average_degree_centrality(make_graph(0, {})).c_d == 0.0);

  // Parallel edges count once and self-loops are ignored.
  auto g = make_graph(2, {{0, 1}, {1, 0}, {0, 0}});
  g.edges[1].kind = EdgeKind::Maieutic;
  CHECK(average_degree_centrality(g).c_d == 1.0);
  CHECK(average_degree_centrality(g, false).c_d == 1.0);
}

TEST_CASE("centrality and components match dense oracles on random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    const Graph g = fixtures::random_graph(rng);
    for (bool include : {true, false}) {
      const auto r = average_degree_centrality(g, include);
      REQUIRE(r.c_d == matrix_centrality(g, include));
      CHECK(r.n == g.nodes.size());
    }
    CHECK(connected_components(g).size() == component_count(g));
  }
}

TEST_CASE("isolates on keyword-list fixtures") {
  const auto net = build_network(fixtures::keyword_list_fixture());
  CHECK(isolate_count(net.concept_view) == 1);
  CHECK(isolate_count(without_maieutic(net.concept_view)) == 1);
  CHECK(isolate_count(net.keyword_view) == 1);

  fixtures::TranscriptBuilder b({"nietzsche"});
  b.answer("nietzsche", fixtures::kList2);
  b.answer("nietzsche", fixtures::kList3);
  b.answer("nietzsche", fixtures::kList4);
  CHECK(isolate_count(build_network(b.transcript()).concept_view) == 0);
}

TEST_CASE("condition delta on the two-chunk maieutic fixture") {
  const auto net = build_network(fixtures::maieutic_pair_fixture());
  const auto d = condition_delta(net, Level::Concept);
  CHECK(d.without_maieutic == 0.0);
  CHECK(d.with_maieutic == 1.0);
  CHECK(d.delta == 1.0);
}

TEST_CASE("condition delta is never negative, at every prefix and both levels") {
  std::mt19937_64 rng(77);
  std::size_t checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto net = build_network(fixtures::random_transcript(rng));
    for (auto level : {Level::Keyword, Level::Concept}) {
      const auto with = serial::centrality_curve(net, level, true);
      const auto without = serial::centrality_curve(net, level, false);
      for (std::size_t i = 0; i < with.points.size(); ++i) {
        REQUIRE(with.points[i].c_d >= without.points[i].c_d);
        REQUIRE(with.points[i].isolates <= without.points[i].isolates);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("centrality curve: point k equals a rebuild of the first k answers") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = build_network(fixtures::random_transcript(rng, 20));
    for (auto level : {Level::Keyword, Level::Concept}) {
      const auto curve = centrality_curve(net, level, true);
      REQUIRE(curve.points.size() == net.answer_count);
      for (const auto& p : curve.points) {
        const auto prefix = prefix_network(net, p.k);
        CHECK(p.c_d == average_degree_centrality(prefix.view(level)).c_d);
        CHECK(p.n == prefix.view(level).nodes.size());
        CHECK(p.isolates == isolate_count(prefix.view(level)));
      }
    }
  }
}

TEST_CASE("centrality curve: serial and OpenMP agree, with and without agent filter") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const auto net = build_network(fixtures::random_transcript(rng, 40));
    for (auto level : {Level::Keyword, Level::Concept}) {
      for (bool include : {true, false}) {
        const auto s = serial::centrality_curve(net, level, include);
        const auto o = omp::centrality_curve(net, level, include);
        REQUIRE(s.points.size() == o.points.size());
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          CHECK(s.points[i].c_d == o.points[i].c_d);
          CHECK(s.points[i].isolates == o.points[i].isolates);
        }
        const std::optional<std::string> agent = net.agents.front().agent_id;
        const auto sa = serial::centrality_curve(net, level, include, agent);
        const auto oa = omp::centrality_curve(net, level, include, agent);
        for (std::size_t i = 0; i < sa.points.size(); ++i) CHECK(sa.points[i].c_d == oa.points[i].c_d);
      }
    }
  }
  CHECK_THROWS_AS(centrality_curve(ConceptNetwork{}, Level::Concept, true), ValidationError);
}

TEST_CASE("local coherence equals a direct cosine oracle") {
  std::mt19937_64 rng(13);
  const std::vector<std::string> words{"war", "peace", "virtue", "state", "law", "habit", "soul", "fortune"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(0, 12);
  for (int trial = 0; trial < 50; ++trial) {
    fixtures::TranscriptBuilder b({"a", "b"});
    std::vector<std::string> texts;
    for (int i = 0; i < 6; ++i) {
      std::string text;
      for (std::size_t w = len(rng); w > 0; --w) text += words[pick(rng)] + " ";
      if (text.empty()) text = "...";
      texts.push_back(text);
      b.answer(i % 2 ? "b" : "a", {"k1", "k2", "k3", "k4", "k5"}, text);
    }
    LexicalEmbedder e(16);
    std::vector<std::vector<std::string>> docs;
    for (const auto& t : texts) docs.push_back(tokenize(t));
    e.fit(docs);
    const auto r = local_coherence(b.transcript(), e);

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < texts.size(); ++i) {
      const auto x = e.embed(texts[i]).values, y = e.embed(texts[i + 1]).values;
      double dot = 0, nx = 0, ny = 0;
      for (std::size_t d = 0; d < x.size(); ++d) {
        dot += x[d] * y[d];
        nx += x[d] * x[d];
        ny += y[d] * y[d];
      }
      sum += (nx == 0 || ny == 0) ? 0.0 : dot / std::sqrt(nx * ny);
    }
    CHECK(std::abs(r.mean_adjacent_cosine - sum / 5.0) < 1e-9);
    CHECK(r.mean_adjacent_cosine >= 0.0);
    CHECK(r.mean_adjacent_cosine <= 1.0);
    CHECK(r.pair_count == 5);
  }
}

TEST_CASE("local coherence needs two answers") {
  fixtures::TranscriptBuilder b({"a", "b"});
  b.answer("a", {"k1", "k2", "k3", "k4", "k5"});
  CHECK_THROWS_AS(local_coherence(b.transcript(), LexicalEmbedder()), ValidationError);
}
