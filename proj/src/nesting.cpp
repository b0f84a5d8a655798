#include <algorithm>
#include <numeric>
#include <string>

#include "picod/bounds.hpp"

namespace picod {

namespace {

bool disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

bool proper_subset(const VertexSet& inner, const VertexSet& outer) {
  return inner.size() < outer.size() &&
         std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

using Pair = std::pair<std::size_t, std::size_t>;

// Unordered pairs (a < b) of disjoint edges that are proper subsets of each edge.
std::vector<std::vector<Pair>> child_pairs(const Instance& inst) {
  const std::size_t n = inst.client_count();
  std::vector<std::vector<Pair>> pairs(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> subs;
    for (std::size_t a = 0; a < n; ++a) {
      if (proper_subset(inst.request(a), inst.request(r))) subs.push_back(a);
    }
    for (std::size_t x = 0; x < subs.size(); ++x) {
      for (std::size_t y = x + 1; y < subs.size(); ++y) {
        if (disjoint(inst.request(subs[x]), inst.request(subs[y]))) {
          pairs[r].emplace_back(subs[x], subs[y]);
        }
      }
    }
  }
  return pairs;
}

struct RelaxedTable {
  std::vector<std::size_t> depth;
  std::vector<std::optional<Pair>> best;
};

RelaxedTable relaxed_table(const Instance& inst) {
  const std::size_t n = inst.client_count();
  const auto pairs = child_pairs(inst);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.request(a).size() < inst.request(b).size();
  });

  // Children are strictly smaller, so ascending size is a valid evaluation order.
  RelaxedTable table{std::vector<std::size_t>(n, 1), std::vector<std::optional<Pair>>(n)};
  for (std::size_t r : order) {
    for (const auto& [a, b] : pairs[r]) {
      const std::size_t d = 1 + std::min(table.depth[a], table.depth[b]);
      if (d > table.depth[r]) {
        table.depth[r] = d;
        table.best[r] = Pair{a, b};
      }
    }
  }
  return table;
}

void grow_tree(const RelaxedTable& table, NestingTree& tree, std::size_t node,
               std::size_t remaining) {
  if (remaining <= 1) return;
  const auto [a, b] = *table.best[tree.nodes[node].client];
  const std::size_t first = tree.nodes.size();
  tree.nodes[node].first_child = first;
  tree.nodes.push_back({a, std::nullopt});
  tree.nodes.push_back({b, std::nullopt});
  grow_tree(table, tree, first, remaining - 1);
  grow_tree(table, tree, first + 1, remaining - 1);
}

// Level-synchronous search for a nested collection of a fixed length.
class StrictSearch {
 public:
  StrictSearch(const Instance& inst, std::uint64_t budget)
      : inst_(inst), pairs_(child_pairs(inst)), budget_(budget) {}

  // true: found (stored in levels()); false: none exists or budget ran out.
  bool find(std::size_t length) {
    length_ = length;
    for (std::size_t root = 0; root < inst_.client_count(); ++root) {
      if (!large_enough(root, 0)) continue;
      levels_.assign(1, {root});
      if (expand(0)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::vector<std::size_t>>& levels() const { return levels_; }

 private:
  // An edge at `level` needs 2^(L - 1 - level) disjoint non-empty leaves.
  bool large_enough(std::size_t client, std::size_t level) const {
    const std::size_t leaves = std::size_t{1} << (length_ - 1 - level);
    return inst_.request(client).size() >= leaves;
  }

  bool expand(std::size_t level) {
    if (level + 1 == length_) return true;
    std::vector<std::size_t> next;
    next.reserve(levels_[level].size() * 2);
    return assign(level, 0, next);
  }

  bool assign(std::size_t level, std::size_t k, std::vector<std::size_t>& next) {
    if (k == levels_[level].size()) {
      levels_.push_back(next);
      if (expand(level + 1)) return true;
      levels_.pop_back();
      return false;
    }
    for (const auto& [a, b] : pairs_[levels_[level][k]]) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (!large_enough(a, level + 1) || !large_enough(b, level + 1)) continue;
      if (std::find(next.begin(), next.end(), a) != next.end() ||
          std::find(next.begin(), next.end(), b) != next.end()) {
        continue;
      }
      next.push_back(a);
      next.push_back(b);
      if (assign(level, k + 1, next)) return true;
      next.pop_back();
      next.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const Instance& inst_;
  std::vector<std::vector<Pair>> pairs_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::size_t length_ = 0;
  std::vector<std::vector<std::size_t>> levels_;
};

NestingResult strict_nesting(const Instance& inst, std::uint64_t budget) {
  NestingResult result;
  result.mode = NestingMode::strict;
  if (inst.is_empty()) {
    result.collection = NestedCollection{};
    return result;
  }
  result.length = 1;
  result.collection = NestedCollection{{{0}}};

  StrictSearch search(inst, budget);
  for (std::size_t length = 2;; ++length) {
    // A collection of length L uses 2^L - 1 distinct edges.
    if ((std::size_t{1} << length) - 1 > inst.client_count()) break;
    if (!search.find(length)) {
      result.exact = !search.exhausted();
      break;
    }
    result.length = length;
    result.collection = NestedCollection{search.levels()};
  }
  result.nodes = search.nodes();
  return result;
}

}  // namespace

std::size_t NestingTree::depth() const {
  if (nodes.empty()) return 0;
  std::size_t d = 1;
  std::size_t node = 0;
  while (nodes[node].first_child) {
    node = *nodes[node].first_child;
    ++d;
  }
  return d;
}

std::vector<std::size_t> relaxed_depths(const Instance& inst) {
  return relaxed_table(inst).depth;
}

NestingResult nesting_number(const Instance& inst, NestingMode mode, std::uint64_t budget) {
  if (mode == NestingMode::strict) return strict_nesting(inst, budget);

  NestingResult result;
  result.mode = NestingMode::relaxed;
  if (inst.is_empty()) return result;
  const RelaxedTable table = relaxed_table(inst);
  const auto root = static_cast<std::size_t>(
      std::max_element(table.depth.begin(), table.depth.end()) - table.depth.begin());
  result.length = table.depth[root];
  NestingTree tree;
  tree.nodes.push_back({root, std::nullopt});
  grow_tree(table, tree, 0, result.length);
  result.tree = std::move(tree);
  result.nodes = inst.client_count();
  return result;
}

std::optional<std::string> check_nested_collection(const Instance& inst,
                                                   const NestedCollection& c) {
  const std::size_t n = inst.client_count();
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    const auto& level = c.levels[i];
    if (level.size() != (std::size_t{1} << i)) {
      return "level " + std::to_string(i + 1) + " has " + std::to_string(level.size()) +
             " edges, expected " + std::to_string(std::size_t{1} << i);
    }
    for (std::size_t k = 0; k < level.size(); ++k) {
      if (level[k] >= n) return "level " + std::to_string(i + 1) + " names an unknown client";
      for (std::size_t j = 0; j < k; ++j) {
        if (level[j] == level[k]) return "level " + std::to_string(i + 1) + " repeats an edge";
      }
    }
    if (i == 0) continue;
    const auto& parents = c.levels[i - 1];
    for (std::size_t k = 0; k < parents.size(); ++k) {
      const auto& parent = inst.request(parents[k]);
      const auto& left = inst.request(level[2 * k]);
      const auto& right = inst.request(level[2 * k + 1]);
      if (!proper_subset(left, parent) || !proper_subset(right, parent)) {
        return "level " + std::to_string(i + 1) + " child is not a proper subset of its parent";
      }
      if (!disjoint(left, right)) {
        return "level " + std::to_string(i + 1) + " children are not disjoint";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_nesting_tree(const Instance& inst, const NestingTree& tree) {
  if (tree.nodes.empty()) return "empty tree";
  const std::size_t expected = tree.depth();
  // Iterative walk with (node, depth).
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 1}};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const auto [node, d] = stack.back();
    stack.pop_back();
    if (++visited > tree.nodes.size()) return "tree contains a cycle";
    const auto& nd = tree.nodes[node];
    if (nd.client >= inst.client_count()) return "tree names an unknown client";
    if (!nd.first_child) {
      if (d != expected) return "leaves at different depths";
      continue;
    }
    const std::size_t first = *nd.first_child;
    if (first + 1 >= tree.nodes.size() || first <= node) return "child index out of range";
    const auto& parent = inst.request(nd.client);
    const auto& left = inst.request(tree.nodes[first].client);
    const auto& right = inst.request(tree.nodes[first + 1].client);
    if (!proper_subset(left, parent) || !proper_subset(right, parent)) {
      return "child is not a proper subset of its parent";
    }
    if (!disjoint(left, right)) return "children are not disjoint";
    stack.emplace_back(first, d + 1);
    stack.emplace_back(first + 1, d + 1);
  }
  return std::nullopt;
}

}  // namespace picod
