#include <algorithm>

#include "picod/bounds.hpp"

namespace picod {

namespace {

class HittingSearch {
 public:
  HittingSearch(const Instance& inst, std::uint64_t budget)
      : inst_(inst),
        incidence_(inst.message_count() + 1),
        members_(inst.client_count(), 0),
        budget_(budget) {
    for (std::size_t e = 0; e < inst.client_count(); ++e) {
      for (Vertex v : inst.request(e)) incidence_[v].push_back(e);
    }
  }

  Length1Decision run() {
    Length1Decision decision;
    const bool found = dfs();
    decision.nodes = nodes_;
    if (exhausted_) return decision;
    decision.solvable = found;
    if (found) {
      decision.witness = chosen_;
      std::sort(decision.witness.begin(), decision.witness.end());
    } else {
      decision.refutation = std::move(tree_);
    }
    return decision;
  }

 private:
  bool dfs() {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    auto open = std::find(members_.begin(), members_.end(), 0u);
    if (open == members_.end()) return true;
    const auto client = static_cast<std::size_t>(open - members_.begin());
    const std::size_t node = tree_.nodes.size();
    tree_.nodes.push_back({client, {}});
    for (Vertex v : inst_.request(client)) {
      // v may join only if no request-set through v already holds a member.
      auto taken = std::find_if(incidence_[v].begin(), incidence_[v].end(),
                                [&](std::size_t e) { return members_[e] != 0; });
      if (taken != incidence_[v].end()) {
        tree_.nodes[node].branches.push_back({v, *taken, std::nullopt});
        continue;
      }
      tree_.nodes[node].branches.push_back({v, std::nullopt, tree_.nodes.size()});
      for (std::size_t e : incidence_[v]) ++members_[e];
      chosen_.push_back(v);
      if (dfs()) return true;
      chosen_.pop_back();
      for (std::size_t e : incidence_[v]) --members_[e];
      if (exhausted_) return false;
    }
    return false;
  }

  const Instance& inst_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::uint32_t> members_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  VertexSet chosen_;
  Length1Refutation tree_;
};

std::optional<std::string> check_node(const Instance& inst, const Length1Refutation& tree,
                                      std::size_t index, VertexSet& chosen,
                                      std::vector<std::size_t>& visits) {
  if (index >= tree.nodes.size()) return "branch points past the last node";
  if (++visits[index] > 1) return "node " + std::to_string(index) + " is reached twice";
  const auto& node = tree.nodes[index];
  if (node.client >= inst.client_count()) return "unknown client";
  const auto& request = inst.request(node.client);
  if (node.branches.size() != request.size()) return "a node must branch on every member";
  for (Vertex v : chosen) {
    if (std::binary_search(request.begin(), request.end(), v)) return "branching client is already hit";
  }
  for (std::size_t k = 0; k < request.size(); ++k) {
    const auto& branch = node.branches[k];
    if (branch.vertex != request[k]) return "branches out of member order";
    if (branch.conflict.has_value() == branch.child.has_value()) {
      return "a branch needs exactly one of conflict and child";
    }
    chosen.push_back(branch.vertex);
    if (branch.conflict) {
      if (*branch.conflict >= inst.client_count()) return "unknown conflict client";
      const auto& r = inst.request(*branch.conflict);
      const auto hits = std::count_if(chosen.begin(), chosen.end(), [&](Vertex v) {
        return std::binary_search(r.begin(), r.end(), v);
      });
      if (hits < 2) return "claimed conflict does not occur";
    } else {
      if (*branch.child <= index) return "child must follow its parent";
      if (auto problem = check_node(inst, tree, *branch.child, chosen, visits)) return problem;
    }
    chosen.pop_back();
  }
  return std::nullopt;
}

}  // namespace

Length1Decision decide_length1(const Instance& inst, std::uint64_t budget) {
  return HittingSearch(inst, budget).run();
}

std::optional<std::string> check_length1_refutation(const Instance& inst,
                                                    const Length1Refutation& refutation) {
  if (refutation.nodes.empty()) return "empty refutation";
  VertexSet chosen;
  std::vector<std::size_t> visits(refutation.nodes.size(), 0);
  if (auto problem = check_node(inst, refutation, 0, chosen, visits)) return problem;
  if (std::count(visits.begin(), visits.end(), 0) != 0) return "unreachable nodes";
  return std::nullopt;
}

}  // namespace picod
