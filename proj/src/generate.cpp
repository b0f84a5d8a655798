#include "picod/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "picod/error.hpp"

namespace picod {

namespace {

using Rng = std::mt19937_64;

Vertex draw(Rng& rng, std::uint32_t m) {
  return std::uniform_int_distribution<Vertex>(1, m)(rng);
}

VertexSet random_subset(Rng& rng, std::uint32_t m, std::uint32_t k) {
  std::set<Vertex> chosen;
  while (chosen.size() < k) chosen.insert(draw(rng, m));
  return {chosen.begin(), chosen.end()};
}

// C(m, k) >= n without overflow.
bool enough_subsets(std::uint32_t m, std::uint32_t k, std::size_t n) {
  long double c = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    c = c * (m - i) / (i + 1);
    if (c >= static_cast<long double>(n)) return true;
  }
  return c >= static_cast<long double>(n);
}

Instance matching(const GeneratorParams& p, Rng& rng) {
  if (p.set_size == 0 || p.clients == 0 || p.clients * p.set_size > p.messages) {
    throw Error(ErrorCode::infeasible_params, "matching needs n*k <= m with n, k >= 1");
  }
  std::vector<Vertex> perm(p.messages);
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<VertexSet> sets(p.clients);
  for (std::size_t i = 0; i < p.clients; ++i) {
    sets[i].assign(perm.begin() + i * p.set_size, perm.begin() + (i + 1) * p.set_size);
  }
  return Instance::build(p.messages, std::move(sets));
}

Instance uniform_k(const GeneratorParams& p, Rng& rng) {
  if (p.set_size == 0 || p.clients == 0 || p.set_size > p.messages ||
      !enough_subsets(p.messages, p.set_size, p.clients)) {
    throw Error(ErrorCode::infeasible_params, "uniform-k needs 1 <= k <= m and C(m,k) >= n");
  }
  std::set<VertexSet> seen;
  std::vector<VertexSet> sets;
  sets.reserve(p.clients);
  while (sets.size() < p.clients) {
    VertexSet s = random_subset(rng, p.messages, p.set_size);
    if (seen.insert(s).second) sets.push_back(std::move(s));
  }
  return Instance::build(p.messages, std::move(sets));
}

// A complete binary tree of request-sets: every node owns one fresh vertex
// and contains its whole subtree, so sibling subtrees are disjoint.
void plant(std::size_t depth, Vertex& next, std::vector<VertexSet>& out, VertexSet& subtree) {
  const Vertex own = next++;
  VertexSet members{own};
  if (depth > 1) {
    VertexSet left, right;
    plant(depth - 1, next, out, left);
    plant(depth - 1, next, out, right);
    members.insert(members.end(), left.begin(), left.end());
    members.insert(members.end(), right.begin(), right.end());
  }
  out.push_back(members);
  subtree = std::move(members);
}

Instance nested_tree(const GeneratorParams& p, Rng& rng) {
  if (p.depth == 0 || p.depth > 20) throw Error(ErrorCode::infeasible_params, "nested-tree depth must be in [1..20]");
  const std::uint32_t tree_vertices = (1u << p.depth) - 1;
  const std::uint32_t m = std::max(p.messages, tree_vertices);
  std::vector<VertexSet> sets;
  Vertex next = 1;
  VertexSet root;
  plant(p.depth, next, sets, root);

  std::vector<Vertex> relabel(m + 1);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin() + 1, relabel.end(), rng);
  for (auto& s : sets) {
    for (auto& v : s) v = relabel[v];
  }
  const std::uint32_t k = std::max<std::uint32_t>(1, std::min(p.set_size, m));
  for (std::size_t i = 0; i < p.noise; ++i) sets.push_back(random_subset(rng, m, k));
  return Instance::build(m, std::move(sets));
}

}  // namespace

Instance generate(const GeneratorParams& params) {
  if (params.messages == 0) throw Error(ErrorCode::infeasible_params, "need at least one message");
  Rng rng(params.seed);
  switch (params.model) {
    case GeneratorModel::matching: return matching(params, rng);
    case GeneratorModel::uniform_k: return uniform_k(params, rng);
    case GeneratorModel::nested_tree: return nested_tree(params, rng);
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator model");
}

GeneratorModel parse_model(const std::string& name) {
  if (name == "matching") return GeneratorModel::matching;
  if (name == "uniform-k") return GeneratorModel::uniform_k;
  if (name == "nested-tree") return GeneratorModel::nested_tree;
  throw Error(ErrorCode::invalid_argument, "unknown model '" + name + "'");
}

const char* to_string(GeneratorModel model) noexcept {
  switch (model) {
    case GeneratorModel::matching: return "matching";
    case GeneratorModel::uniform_k: return "uniform-k";
    case GeneratorModel::nested_tree: return "nested-tree";
  }
  return "?";
}

}  // namespace picod
