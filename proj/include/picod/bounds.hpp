#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picod/instance.hpp"
#include "picod/scheme.hpp"

namespace picod {

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

enum class NestingMode { strict, relaxed };

/// Levels E_1..E_L of client indices. The pair of children of
/// levels[i][k] is (levels[i + 1][2k], levels[i + 1][2k + 1]).
struct NestedCollection {
  std::vector<std::vector<std::size_t>> levels;

  std::size_t length() const noexcept { return levels.size(); }
};

/// Binary tree of edges where every leaf sits at the same depth. Unlike a
/// NestedCollection an edge may appear in more than one subtree.
struct NestingTree {
  struct Node {
    std::size_t client = 0;
    /// Index of the first child in `nodes`; the second child follows it.
    std::optional<std::size_t> first_child;
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  std::size_t depth() const;
};

struct NestingResult {
  NestingMode mode = NestingMode::strict;
  std::size_t length = 0;
  bool exact = true;
  std::optional<NestedCollection> collection;  // strict mode
  std::optional<NestingTree> tree;             // relaxed mode
  std::uint64_t nodes = 0;
};

/// Strict mode searches nested collections level by level; relaxed mode
/// runs the memoized depth recursion. On budget exhaustion strict mode
/// returns the best length found with exact = false.
NestingResult nesting_number(const Instance& inst, NestingMode mode,
                             std::uint64_t budget = kDefaultSearchBudget);

/// Relaxed depth of every client: 1 + max over disjoint sub-edge pairs of
/// the smaller child depth.
std::vector<std::size_t> relaxed_depths(const Instance& inst);

/// Validates level sizes, distinctness, and the proper-subset disjoint
/// child pairs. Returns a description of the first violation, if any.
std::optional<std::string> check_nested_collection(const Instance& inst,
                                                   const NestedCollection& c);
std::optional<std::string> check_nesting_tree(const Instance& inst,
                                              const NestingTree& tree);

/// One decoded message per client, decoding_choice[i] in request(i).
using DecodingChoice = std::vector<Vertex>;

/// Clients c_1..c_L in topological order with their demands.
/// Acyclicity: an earlier client never holds a later demand as
/// side-information, i.e. demands[k] is in request(clients[i]) for i < k.
struct ChainWitness {
  std::vector<std::size_t> clients;
  std::vector<Vertex> demands;

  std::size_t length() const noexcept { return clients.size(); }
};

/// Maximum acyclic induced subgraph of the index coding problem fixed by
/// `choice`, counted in messages. Throws Error{invalid_choice}.
ChainWitness mais_for_choices(const Instance& inst, const DecodingChoice& choice);

std::optional<std::string> check_chain(const Instance& inst, const DecodingChoice& choice,
                                       const ChainWitness& chain);

struct MaisMinResult {
  std::size_t value = 0;
  DecodingChoice minimizer;
  ChainWitness chain;
};

/// min over every decoding choice of mais_for_choices. Refuses (nullopt)
/// when the number of choice tuples exceeds `product_budget`; sampling
/// would give an upper estimate, which is not a valid lower bound.
std::optional<MaisMinResult> mais_min_over_choices(const Instance& inst,
                                                   std::uint64_t product_budget = 1'000'000);

/// Shows that every decoding choice admits a chain of `bound` clients.
/// The node at depth d fixes the demand of client d, with one child per
/// member of request(d) in ascending order; a leaf holds a chain among the
/// clients fixed so far. nodes[0] is the root.
struct MaisProof {
  struct Node {
    std::vector<std::size_t> children;
    std::optional<ChainWitness> chain;
  };
  std::size_t bound = 0;
  std::vector<Node> nodes;
};

/// Nullopt when some choice has no chain of `bound` clients or the tree
/// would exceed `node_budget` nodes.
std::optional<MaisProof> prove_mais(const Instance& inst, std::size_t bound,
                                    std::uint64_t node_budget = 1'000'000);
std::optional<std::string> check_mais_proof(const Instance& inst, const MaisProof& proof);

/// Exhaustive case split showing that no vertex set meets every
/// request-set exactly once. Each node branches on one client over all of
/// its members; a branch either ends because the chosen vertices now meet
/// `conflict` twice, or continues at `child`. nodes[0] is the root.
struct Length1Refutation {
  struct Branch {
    Vertex vertex = 0;
    std::optional<std::size_t> conflict;
    std::optional<std::size_t> child;
  };
  struct Node {
    std::size_t client = 0;
    std::vector<Branch> branches;
  };
  std::vector<Node> nodes;
};

struct Length1Decision {
  /// Unset when the budget ran out.
  std::optional<bool> solvable;
  /// Independent set meeting every request-set, when solvable.
  VertexSet witness;
  /// The explored search tree, when not solvable.
  std::optional<Length1Refutation> refutation;
  std::uint64_t nodes = 0;
};

/// Decides whether a single transmission can satisfy every client.
Length1Decision decide_length1(const Instance& inst,
                               std::uint64_t budget = kDefaultSearchBudget);
std::optional<std::string> check_length1_refutation(const Instance& inst,
                                                    const Length1Refutation& refutation);

struct Budgets {
  std::uint64_t nesting = kDefaultSearchBudget;
  std::uint64_t mais_product = 1'000'000;
  std::uint64_t length1 = kDefaultSearchBudget;
  std::uint64_t cover = 2'000'000;
  std::uint64_t oracle = 5'000'000;
  /// The oracle only runs when the instance has at most this many active
  /// vertices.
  std::size_t oracle_max_vertices = 10;
};

enum class LowerKind { trivial, nesting_strict, nesting_relaxed, length1_refutation, mais };

const char* to_string(LowerKind kind) noexcept;

struct BoundCertificate {
  std::size_t lower = 0;
  LowerKind lower_kind = LowerKind::trivial;
  std::optional<NestedCollection> nesting;     // nesting_strict
  std::optional<NestingTree> nesting_tree;     // nesting_relaxed
  std::optional<Length1Refutation> length1_refutation;  // length1_refutation
  std::optional<MaisProof> mais_proof;                  // mais

  std::size_t upper = 0;
  std::string upper_source;
  Scheme upper_scheme{RowMatrix(FieldOrder::gf2(), 0, 0)};

  bool tight = false;

  // Every quantity computed on the way, for reporting.
  std::uint32_t max_degree = 0;
  std::size_t nesting_strict = 0;
  bool nesting_strict_exact = false;
  std::size_t nesting_relaxed = 0;
  std::optional<std::size_t> mais_min;
  std::optional<bool> length1;
  std::optional<std::size_t> algorithm1_length;
  std::optional<std::size_t> grcov_length;
  std::optional<std::size_t> cover_length;
  std::optional<std::size_t> oracle_length;
};

/// Brackets the optimal length between certified lower and upper bounds.
BoundCertificate certify(const Instance& inst, const Budgets& budgets = {});

}  // namespace picod
