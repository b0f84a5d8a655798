#include "picod/constructors.hpp"

#include <algorithm>

namespace picod {

Algorithm1Result algorithm1(const Instance& inst, const Algorithm1Options& options) {
  const std::uint32_t m = inst.message_count();
  const DegreeProfile profile = degrees(inst);

  std::vector<std::vector<std::size_t>> incidence(m + 1);
  for (std::size_t e = 0; e < inst.client_count(); ++e) {
    for (Vertex v : inst.request(e)) incidence[v].push_back(e);
  }

  // Working copy H': current degrees, surviving vertices and edges.
  std::vector<std::uint32_t> degree = profile.degree;
  std::vector<char> vertex_alive(m + 1, 1);
  std::vector<char> edge_alive(inst.client_count(), 1);
  std::size_t edges_left = inst.client_count();

  Coloring coloring;
  coloring.color_of.assign(m + 1, 0);
  ConstructionTrace trace;

  std::vector<std::uint32_t> decrement(m + 1, 0);
  std::vector<Vertex> touched;
  std::uint32_t color = 1;

  std::uint32_t delta = profile.max_degree;
  while (delta >= 1 && edges_left > 0) {
    TraceRound round;
    round.delta = delta;
    for (Vertex v = 1; v <= m; ++v) {
      if (!vertex_alive[v] || degree[v] != delta) continue;
      coloring.color_of[v] = color;
      round.picked.push_back(v);
      vertex_alive[v] = 0;
      for (std::size_t e : incidence[v]) {
        if (!edge_alive[e]) continue;
        for (Vertex j : inst.request(e)) {
          if (j == v) continue;
          --degree[j];
          if (decrement[j]++ == 0) touched.push_back(j);
        }
        edge_alive[e] = 0;
        --edges_left;
        round.removed_clients.push_back(e);
      }
      degree[v] = 0;
    }

    std::sort(touched.begin(), touched.end());
    for (Vertex j : touched) {
      round.degree_decrements.emplace_back(j, decrement[j]);
      decrement[j] = 0;
    }
    touched.clear();
    std::sort(round.removed_clients.begin(), round.removed_clients.end());

    if (!round.picked.empty()) {
      round.color = color;
      coloring.rounds.push_back({delta, color, round.picked});
      trace.transmissions.push_back(round.picked);
      ++color;
    }
    trace.rounds.push_back(std::move(round));

    if (options.skip_to_max_degree) {
      std::uint32_t next = 0;
      for (Vertex v = 1; v <= m; ++v) {
        if (vertex_alive[v]) next = std::max(next, degree[v]);
      }
      delta = std::min(delta - 1, next);
    } else {
      --delta;
    }
  }

  Scheme scheme = Scheme::from_supports(options.field, m, trace.transmissions);
  return {std::move(scheme), std::move(coloring), std::move(trace)};
}

}  // namespace picod
