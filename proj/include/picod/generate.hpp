#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "picod/instance.hpp"

namespace picod {

enum class GeneratorModel { matching, uniform_k, nested_tree };

struct GeneratorParams {
  GeneratorModel model = GeneratorModel::uniform_k;
  std::uint32_t messages = 10;  // m; nested-tree grows it to fit the tree
  std::size_t clients = 10;     // n; ignored by nested-tree
  std::uint32_t set_size = 3;   // k
  std::size_t depth = 3;        // nested-tree depth L
  std::size_t noise = 0;        // nested-tree extra random edges
  std::uint64_t seed = 1;
};

/// Deterministic for a fixed seed. Throws Error{infeasible_params}.
Instance generate(const GeneratorParams& params);

GeneratorModel parse_model(const std::string& name);
const char* to_string(GeneratorModel model) noexcept;

}  // namespace picod
