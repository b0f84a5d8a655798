#include <vector>

#include "picod/constructors.hpp"

namespace picod {

Scheme grcov_greedy(const Instance& inst, FieldOrder field) {
  const std::uint32_t m = inst.message_count();
  std::vector<std::vector<std::size_t>> incidence(m + 1);
  for (std::size_t e = 0; e < inst.client_count(); ++e) {
    for (Vertex v : inst.request(e)) incidence[v].push_back(e);
  }

  std::vector<char> edge_alive(inst.client_count(), 1);
  std::size_t edges_left = inst.client_count();
  std::vector<VertexSet> supports;
  std::vector<std::uint32_t> hits(inst.client_count(), 0);

  while (edges_left > 0) {
    // Maximal independent set of the residual hypergraph, ascending scan.
    VertexSet chosen;
    for (Vertex v = 1; v <= m; ++v) {
      bool in_residual = false;
      bool blocked = false;
      for (std::size_t e : incidence[v]) {
        if (!edge_alive[e]) continue;
        in_residual = true;
        if (hits[e] != 0) {
          blocked = true;
          break;
        }
      }
      if (!in_residual || blocked) continue;
      chosen.push_back(v);
      for (std::size_t e : incidence[v]) {
        if (edge_alive[e]) ++hits[e];
      }
    }
    for (std::size_t e = 0; e < inst.client_count(); ++e) {
      if (edge_alive[e] && hits[e] != 0) {
        edge_alive[e] = 0;
        --edges_left;
      }
      hits[e] = 0;
    }
    supports.push_back(std::move(chosen));
  }
  return Scheme::from_supports(field, m, supports);
}

}  // namespace picod
