#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epistemo/conceptnet.hpp"
#include "epistemo/retrieval.hpp"

namespace epistemo {

struct CentralityReport {
  Level level = Level::Concept;
  bool include_maieutic = true;
  std::size_t n = 0;
  double c_d = 0.0;              // mean of normalized degrees; 0 for n <= 1
  double mean_raw_degree = 0.0;
  std::vector<std::pair<std::size_t, double>> per_node;  // (Node::id, deg / (n - 1))
};

/// Self-loops ignored; parallel edges of different kinds count once.
/// With include_maieutic = false maieutic edges are dropped first.
CentralityReport average_degree_centrality(const Graph& graph, bool include_maieutic = true);

/// Concept level: single-node components. Keyword level: components made of
/// exactly one chunk's five keyword nodes.
std::size_t isolate_count(const Graph& graph);

struct CurvePoint {
  std::size_t k = 0;  // answer chunks in the prefix
  std::size_t n = 0;
  double c_d = 0.0;
  std::size_t isolates = 0;
};

struct CentralityCurve {
  Level level = Level::Concept;
  bool include_maieutic = true;
  std::optional<std::string> agent;
  std::vector<CurvePoint> points;  // k = 1 .. answer_count
};

namespace serial {
CentralityCurve centrality_curve(const ConceptNetwork& network, Level level,
                                 bool include_maieutic,
                                 const std::optional<std::string>& agent = std::nullopt);
}
namespace omp {
CentralityCurve centrality_curve(const ConceptNetwork& network, Level level,
                                 bool include_maieutic,
                                 const std::optional<std::string>& agent = std::nullopt);
}

/// Point k is computed on the network restricted to the first k answer chunks
/// (and, with `agent`, that prefix's agent subgraph).
CentralityCurve centrality_curve(const ConceptNetwork& network, Level level,
                                 bool include_maieutic,
                                 const std::optional<std::string>& agent = std::nullopt);

struct ConditionDelta {
  double with_maieutic = 0.0;
  double without_maieutic = 0.0;
  double delta = 0.0;
};

/// Both values on the node set of `graph`; "without" drops maieutic edges only.
ConditionDelta condition_delta(const Graph& graph);
ConditionDelta condition_delta(const ConceptNetwork& network, Level level);

struct CoherenceReport {
  double mean_adjacent_cosine = 0.0;
  std::size_t pair_count = 0;
  std::size_t degenerate_pairs = 0;  // pairs with a zero vector, counted as 0
  std::vector<double> pair_cosines;
};

/// Mean cosine of consecutive answer texts. Throws ValidationError for < 2 answers.
CoherenceReport local_coherence(const Transcript& transcript, const Embedder& embedder);

}  // namespace epistemo
