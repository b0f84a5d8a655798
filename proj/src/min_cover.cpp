#include <algorithm>
#include <bit>
#include <unordered_map>

#include "picod/constructors.hpp"

namespace picod {

namespace {

constexpr std::size_t kMaxActiveVertices = 20;
constexpr std::size_t kMaxClients = 64;

using ClientMask = std::uint64_t;

// Removes every mask that is a proper subset of another.
std::vector<ClientMask> maximal_masks(const std::vector<ClientMask>& masks, std::size_t clients) {
  std::vector<ClientMask> out;
  if (clients <= 22) {
    const std::size_t size = std::size_t{1} << clients;
    // reach[x]: some mask in the list is a superset of x.
    std::vector<char> reach(size, 0);
    for (ClientMask s : masks) reach[s] = 1;
    for (std::size_t bit = 0; bit < clients; ++bit) {
      for (std::size_t x = 0; x < size; ++x) {
        if (!(x & (std::size_t{1} << bit)) && reach[x | (std::size_t{1} << bit)]) reach[x] = 1;
      }
    }
    auto covered = [&](ClientMask x) {
      for (std::size_t bit = 0; bit < clients; ++bit) {
        const ClientMask b = ClientMask{1} << bit;
        if (!(x & b) && reach[x | b]) return true;
      }
      return false;
    };
    for (ClientMask s : masks) {
      if (!covered(s)) out.push_back(s);
    }
    return out;
  }
  for (ClientMask s : masks) {
    const bool dominated = std::any_of(masks.begin(), masks.end(), [&](ClientMask t) {
      return t != s && (s & t) == s;
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

class CoverSearch {
 public:
  CoverSearch(std::size_t clients, std::vector<std::vector<ClientMask>> candidates,
              std::uint64_t budget)
      : full_((clients == 64) ? ~ClientMask{0} : (ClientMask{1} << clients) - 1),
        candidates_(std::move(candidates)),
        budget_(budget) {}

  // Finds a cover with fewer than `best` sets, if one exists.
  bool run(std::size_t best, std::vector<ClientMask>& solution) {
    best_ = best;
    chosen_.clear();
    found_ = false;
    dfs(0);
    if (found_) solution = best_solution_;
    return !exhausted_;
  }

  std::size_t best() const { return best_; }
  bool found() const { return found_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void dfs(ClientMask covered) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (covered == full_) {
      best_ = chosen_.size();
      best_solution_ = chosen_;
      found_ = true;
      return;
    }
    if (chosen_.size() + 1 >= best_) return;
    const auto client = static_cast<std::size_t>(std::countr_one(covered));
    for (ClientMask s : candidates_[client]) {
      chosen_.push_back(s);
      dfs(covered | s);
      chosen_.pop_back();
      if (exhausted_ || chosen_.size() + 1 >= best_) return;
    }
  }

  ClientMask full_;
  std::vector<std::vector<ClientMask>> candidates_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  bool found_ = false;
  std::size_t best_ = 0;
  std::vector<ClientMask> chosen_;
  std::vector<ClientMask> best_solution_;
};

}  // namespace

std::optional<CoverResult> min_cover_exact(const Instance& inst, std::uint64_t node_budget) {
  if (inst.is_empty()) return CoverResult{};
  const VertexSet active = active_vertices(inst);
  const std::size_t n = inst.client_count();
  if (active.size() > kMaxActiveVertices || n > kMaxClients) return std::nullopt;

  std::vector<std::size_t> local(inst.message_count() + 1, 0);
  for (std::size_t k = 0; k < active.size(); ++k) local[active[k]] = k;
  std::vector<std::uint32_t> request_bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (Vertex v : inst.request(i)) request_bits[i] |= std::uint32_t{1} << local[v];
  }

  // Clients satisfied by each support, keeping the smallest support per set.
  std::unordered_map<ClientMask, std::uint32_t> support_of;
  std::uint64_t work = 0;
  const std::uint32_t subsets = std::uint32_t{1} << active.size();
  for (std::uint32_t s = 1; s < subsets; ++s) {
    ClientMask sat = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::popcount(s & request_bits[i]) == 1) sat |= ClientMask{1} << i;
    }
    work += n;
    if (sat != 0) support_of.try_emplace(sat, s);
  }

  std::vector<ClientMask> masks;
  masks.reserve(support_of.size());
  for (const auto& [sat, s] : support_of) masks.push_back(sat);
  std::sort(masks.begin(), masks.end());
  masks = maximal_masks(masks, n);

  std::vector<std::vector<ClientMask>> candidates(n);
  for (ClientMask s : masks) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s & (ClientMask{1} << i)) candidates[i].push_back(s);
    }
  }
  for (auto& list : candidates) {
    std::stable_sort(list.begin(), list.end(), [](ClientMask a, ClientMask b) {
      return std::popcount(a) > std::popcount(b);
    });
  }

  // alg1 colour classes form a cover, so its length bounds the search.
  const auto alg1 = algorithm1(inst);
  const std::size_t incumbent = alg1.scheme.length();

  CoverSearch search(n, std::move(candidates), node_budget);
  std::vector<ClientMask> solution;
  if (!search.run(incumbent + 1, solution)) return std::nullopt;

  CoverResult result;
  result.nodes = search.nodes() + work;
  result.length = solution.size();
  for (ClientMask sat : solution) {
    VertexSet support;
    const std::uint32_t s = support_of.at(sat);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (s & (std::uint32_t{1} << k)) support.push_back(active[k]);
    }
    result.supports.push_back(std::move(support));
  }
  return result;
}

}  // namespace picod
