#include "epistemo/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "epistemo/errors.hpp"

namespace epistemo {
namespace {

CurvePoint curve_point(const ConceptNetwork& network, Level level, bool include_maieutic,
                       const std::optional<std::string>& agent, std::size_t k) {
  ConceptNetwork prefix = prefix_network(network, k);
  if (agent) prefix = agent_subgraph(prefix, *agent, include_maieutic);
  const Graph& view = prefix.view(level);
  const auto report = average_degree_centrality(view, include_maieutic);
  const std::size_t isolates = include_maieutic ? isolate_count(view) : isolate_count(without_maieutic(view));
  return {k, report.n, report.c_d, isolates};
}

void check_curve_input(const ConceptNetwork& network, const std::optional<std::string>& agent) {
  if (network.answer_count == 0) throw ValidationError("centrality curve needs at least one answer chunk");
  if (network.agent_filter) throw ValidationError("centrality curve expects the full network; pass the agent instead");
  if (agent && network.find_agent(*agent) == nullptr) throw ValidationError("unknown agent: " + *agent);
}

}  // namespace

CentralityReport average_degree_centrality(const Graph& graph, bool include_maieutic) {
  CentralityReport r;
  r.level = graph.level;
  r.include_maieutic = include_maieutic;
  r.n = graph.nodes.size();

  std::vector<std::vector<std::size_t>> neighbours(r.n);
  for (const auto& e : graph.edges) {
    if (e.u == e.v) continue;
    if (!include_maieutic && e.kind == EdgeKind::Maieutic) continue;
    neighbours[e.u].push_back(e.v);
    neighbours[e.v].push_back(e.u);
  }
  const double denominator = r.n >= 2 ? static_cast<double>(r.n - 1) : 0.0;
  double normalized_sum = 0.0;
  double raw_sum = 0.0;
  r.per_node.reserve(r.n);
  for (std::size_t p = 0; p < r.n; ++p) {
    auto& nb = neighbours[p];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    const double degree = static_cast<double>(nb.size());
    const double normalized = denominator > 0.0 ? degree / denominator : 0.0;
    r.per_node.emplace_back(graph.nodes[p].id, normalized);
    normalized_sum += normalized;
    raw_sum += degree;
  }
  if (r.n > 0) {
    r.c_d = normalized_sum / static_cast<double>(r.n);
    r.mean_raw_degree = raw_sum / static_cast<double>(r.n);
  }
  return r;
}

std::size_t isolate_count(const Graph& graph) {
  std::unordered_map<std::size_t, const Node*> by_id;
  for (const auto& n : graph.nodes) by_id[n.id] = &n;
  std::size_t isolates = 0;
  for (const auto& comp : connected_components(graph)) {
    if (graph.level == Level::Concept) {
      isolates += comp.size() == 1;
      continue;
    }
    if (comp.size() != kKeywordsPerChunk) continue;
    const std::size_t chunk = by_id[comp.front()]->chunk_index;
    isolates += std::all_of(comp.begin(), comp.end(),
                            [&](std::size_t id) { return by_id[id]->chunk_index == chunk; });
  }
  return isolates;
}

namespace serial {

CentralityCurve centrality_curve(const ConceptNetwork& network, Level level, bool include_maieutic,
                                 const std::optional<std::string>& agent) {
  check_curve_input(network, agent);
  CentralityCurve curve{level, include_maieutic, agent, {}};
  curve.points.reserve(network.answer_count);
  for (std::size_t k = 1; k <= network.answer_count; ++k) {
    curve.points.push_back(curve_point(network, level, include_maieutic, agent, k));
  }
  return curve;
}

}  // namespace serial

namespace omp {

CentralityCurve centrality_curve(const ConceptNetwork& network, Level level, bool include_maieutic,
                                 const std::optional<std::string>& agent) {
  check_curve_input(network, agent);
  CentralityCurve curve{level, include_maieutic, agent, {}};
  curve.points.resize(network.answer_count);
  const auto count = static_cast<std::ptrdiff_t>(network.answer_count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i) + 1;
    curve.points[k - 1] = curve_point(network, level, include_maieutic, agent, k);
  }
  return curve;
}

}  // namespace omp

CentralityCurve centrality_curve(const ConceptNetwork& network, Level level, bool include_maieutic,
                                 const std::optional<std::string>& agent) {
  if (network.answer_count < 8) return serial::centrality_curve(network, level, include_maieutic, agent);
  return omp::centrality_curve(network, level, include_maieutic, agent);
}

ConditionDelta condition_delta(const Graph& graph) {
  ConditionDelta d;
  d.with_maieutic = average_degree_centrality(graph, true).c_d;
  d.without_maieutic = average_degree_centrality(graph, false).c_d;
  d.delta = d.with_maieutic - d.without_maieutic;
  return d;
}

ConditionDelta condition_delta(const ConceptNetwork& network, Level level) {
  return condition_delta(network.view(level));
}

CoherenceReport local_coherence(const Transcript& transcript, const Embedder& embedder) {
  std::vector<std::string> texts;
  for (const auto& t : transcript.turns) {
    if (t.kind == TurnKind::Answer) texts.push_back(t.text);
  }
  if (texts.size() < 2) throw ValidationError("local coherence needs at least two answer chunks");
  const auto vectors = embedder.embed_batch(texts);

  CoherenceReport r;
  r.pair_count = texts.size() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < vectors.size(); ++i) {
    double c = 0.0;
    if (vectors[i].degenerate || vectors[i + 1].degenerate) {
      ++r.degenerate_pairs;
    } else {
      c = cosine(vectors[i], vectors[i + 1]);
    }
    r.pair_cosines.push_back(c);
    sum += c;
  }
  r.mean_adjacent_cosine = sum / static_cast<double>(r.pair_count);
  return r;
}

}  // namespace epistemo
