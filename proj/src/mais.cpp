#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "picod/bounds.hpp"
#include "picod/error.hpp"

namespace picod {

namespace {

struct StateHash {
  std::size_t operator()(const std::pair<Mask, Mask>& s) const noexcept {
    return std::hash<Mask>{}(s.first * 0x9E3779B97F4A7C15ull ^ s.second);
  }
};

// Longest chain c_1..c_L over `clients`: each next demand is unused and lies
// in every earlier request-set. State = (intersection of chosen request-sets,
// used demands inside that intersection).
class ChainSearch {
 public:
  ChainSearch(const std::vector<Mask>& requests, const DecodingChoice& demands,
              std::vector<std::size_t> clients)
      : requests_(requests), demands_(demands), clients_(std::move(clients)) {}

  ChainWitness run() {
    ChainWitness chain;
    Mask allowed = ~Mask{0};
    Mask used = 0;
    while (true) {
      const auto& [length, next] = best(allowed, used);
      if (length == 0) break;
      chain.clients.push_back(next);
      chain.demands.push_back(demands_[next]);
      allowed &= requests_[next];
      used = (used | demand_bit(next)) & allowed;
    }
    return chain;
  }

 private:
  Mask demand_bit(std::size_t c) const { return Mask{1} << (demands_[c] - 1); }

  const std::pair<std::size_t, std::size_t>& best(Mask allowed, Mask used) {
    const auto key = std::make_pair(allowed, used);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::pair<std::size_t, std::size_t> result{0, 0};
    for (std::size_t c : clients_) {
      const Mask d = demand_bit(c);
      if (!(allowed & d) || (used & d)) continue;
      const Mask next_allowed = allowed & requests_[c];
      const std::size_t length = 1 + best(next_allowed, (used | d) & next_allowed).first;
      if (length > result.first) result = {length, c};
    }
    return memo_.emplace(key, result).first->second;
  }

  const std::vector<Mask>& requests_;
  const DecodingChoice& demands_;
  std::vector<std::size_t> clients_;
  std::unordered_map<std::pair<Mask, Mask>, std::pair<std::size_t, std::size_t>, StateHash> memo_;
};

std::vector<Mask> request_masks(const Instance& inst) {
  std::vector<Mask> masks;
  masks.reserve(inst.client_count());
  for (const auto& r : inst.requests()) masks.push_back(to_mask(r));
  return masks;
}

void validate_choice(const Instance& inst, const DecodingChoice& choice) {
  if (choice.size() != inst.client_count()) {
    throw Error(ErrorCode::invalid_choice, "decoding choice needs one message per client");
  }
  for (std::size_t i = 0; i < choice.size(); ++i) {
    const auto& r = inst.request(i);
    if (!std::binary_search(r.begin(), r.end(), choice[i])) {
      throw Error(ErrorCode::invalid_choice,
                  "client " + std::to_string(i + 1) + " cannot decode message " +
                      std::to_string(choice[i]) + " outside its request-set");
    }
  }
}

// Branch and bound over decoding choices. The chain length over the clients
// assigned so far never decreases as more clients are assigned, so a partial
// assignment whose chain already reaches the incumbent is pruned.
class ChoiceSearch {
 public:
  explicit ChoiceSearch(const Instance& inst)
      : inst_(inst), requests_(request_masks(inst)), choice_(inst.client_count(), 0) {
    order_.resize(inst.client_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return inst.request(a).size() < inst.request(b).size();
    });
  }

  MaisMinResult run() {
    dfs(0);
    return best_;
  }

 private:
  void dfs(std::size_t depth) {
    if (best_.value == 1) return;  // every non-empty instance needs one transmission
    const std::vector<std::size_t> assigned(order_.begin(), order_.begin() + depth);
    ChainWitness chain = ChainSearch(requests_, choice_, assigned).run();
    if (have_best_ && chain.length() >= best_.value) return;
    if (depth == order_.size()) {
      best_.value = chain.length();
      best_.minimizer = choice_;
      best_.chain = std::move(chain);
      have_best_ = true;
      return;
    }
    const std::size_t client = order_[depth];
    for (Vertex v : inst_.request(client)) {
      choice_[client] = v;
      dfs(depth + 1);
    }
    choice_[client] = 0;
  }

  const Instance& inst_;
  std::vector<Mask> requests_;
  std::vector<std::size_t> order_;
  DecodingChoice choice_;
  MaisMinResult best_;
  bool have_best_ = false;
};

}  // namespace

ChainWitness mais_for_choices(const Instance& inst, const DecodingChoice& choice) {
  require_mask_width(inst, "mais_for_choices");
  validate_choice(inst, choice);
  const auto requests = request_masks(inst);
  std::vector<std::size_t> clients(inst.client_count());
  std::iota(clients.begin(), clients.end(), 0);
  return ChainSearch(requests, choice, std::move(clients)).run();
}

std::optional<std::string> check_chain(const Instance& inst, const DecodingChoice& choice,
                                       const ChainWitness& chain) {
  if (chain.clients.size() != chain.demands.size()) return "clients and demands differ in length";
  for (std::size_t k = 0; k < chain.length(); ++k) {
    const std::size_t c = chain.clients[k];
    if (c >= inst.client_count()) return "unknown client in chain";
    if (c >= choice.size() || choice[c] != chain.demands[k]) {
      return "chain demand differs from the decoding choice";
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (chain.demands[j] == chain.demands[k]) return "repeated demand in chain";
      const auto& earlier = inst.request(chain.clients[j]);
      if (!std::binary_search(earlier.begin(), earlier.end(), chain.demands[k])) {
        return "an earlier client holds a later demand as side-information";
      }
    }
  }
  return std::nullopt;
}

std::optional<MaisMinResult> mais_min_over_choices(const Instance& inst,
                                                   std::uint64_t product_budget) {
  require_mask_width(inst, "mais_min_over_choices");
  if (inst.is_empty()) return MaisMinResult{};
  std::uint64_t product = 1;
  for (const auto& r : inst.requests()) {
    if (product > product_budget / r.size()) return std::nullopt;
    product *= r.size();
  }
  if (product > product_budget) return std::nullopt;
  return ChoiceSearch(inst).run();
}

namespace {

class ProofBuilder {
 public:
  ProofBuilder(const Instance& inst, std::size_t bound, std::uint64_t budget)
      : inst_(inst), budget_(budget) {
    proof_.bound = bound;
  }

  std::optional<MaisProof> run() {
    if (!grow()) return std::nullopt;
    return std::move(proof_);
  }

 private:
  // Clients are canonically sorted, so the first d of them keep their
  // indices in the sub-instance they induce.
  bool grow() {
    if (proof_.nodes.size() >= budget_) return false;
    const std::size_t index = proof_.nodes.size();
    proof_.nodes.emplace_back();
    const std::size_t depth = choice_.size();
    if (depth > 0) {
      std::vector<VertexSet> prefix(inst_.requests().begin(), inst_.requests().begin() + depth);
      const Instance sub = Instance::build(inst_.message_count(), std::move(prefix));
      ChainWitness chain = mais_for_choices(sub, choice_);
      if (chain.length() >= proof_.bound) {
        proof_.nodes[index].chain = std::move(chain);
        return true;
      }
    }
    if (depth == inst_.client_count()) return false;
    for (Vertex v : inst_.request(depth)) {
      proof_.nodes[index].children.push_back(proof_.nodes.size());
      choice_.push_back(v);
      const bool ok = grow();
      choice_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const Instance& inst_;
  std::uint64_t budget_;
  MaisProof proof_;
  DecodingChoice choice_;
};

std::optional<std::string> check_proof_node(const Instance& inst, const MaisProof& proof,
                                            std::size_t index, DecodingChoice& choice,
                                            std::vector<std::size_t>& visits) {
  if (index >= proof.nodes.size()) return "child points past the last node";
  if (++visits[index] > 1) return "node " + std::to_string(index) + " is reached twice";
  const auto& node = proof.nodes[index];
  if (node.chain) {
    if (!node.children.empty()) return "a leaf cannot have children";
    if (node.chain->length() < proof.bound) return "leaf chain is shorter than the bound";
    return check_chain(inst, choice, *node.chain);
  }
  const std::size_t depth = choice.size();
  if (depth >= inst.client_count()) return "every client is fixed but no chain is given";
  const auto& request = inst.request(depth);
  if (node.children.size() != request.size()) return "a node must branch on every member";
  for (std::size_t k = 0; k < request.size(); ++k) {
    if (node.children[k] <= index) return "child must follow its parent";
    choice.push_back(request[k]);
    auto problem = check_proof_node(inst, proof, node.children[k], choice, visits);
    choice.pop_back();
    if (problem) return problem;
  }
  return std::nullopt;
}

}  // namespace

std::optional<MaisProof> prove_mais(const Instance& inst, std::size_t bound,
                                    std::uint64_t node_budget) {
  require_mask_width(inst, "prove_mais");
  return ProofBuilder(inst, bound, node_budget).run();
}

std::optional<std::string> check_mais_proof(const Instance& inst, const MaisProof& proof) {
  if (proof.nodes.empty()) return "empty proof";
  if (proof.bound == 0) return "bound must be positive";
  DecodingChoice choice;
  std::vector<std::size_t> visits(proof.nodes.size(), 0);
  if (auto problem = check_proof_node(inst, proof, 0, choice, visits)) return problem;
  if (std::count(visits.begin(), visits.end(), 0) != 0) return "unreachable nodes";
  return std::nullopt;
}

}  // namespace picod
