#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "gridgon/geometry.hpp"

namespace gridgon {

// Zero means unlimited. A node budget gives reproducible results; a time
// budget does not.
struct search_budget {
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;
  const std::atomic<bool>* cancel = nullptr;
};

struct search_outcome {
  std::int64_t best_value = 0;
  bool optimal = false;
  std::optional<tour> witness;
  std::uint64_t nodes_expanded = 0;
  double elapsed_seconds = 0;
  bool infeasible = false;
  bool cancelled = false;
};

struct partial_tour {
  int n = 0;
  std::vector<point> prefix;
};

struct solve_options {
  // start from the best construction for this n (only used for n >= 5)
  bool seed_from_constructions = true;
  std::optional<tour> seed;
};

// Depth-first branch and bound from (1,1), first step into y >= x, longest
// candidate edges first.
search_outcome solve_exact(int n, bool proper, weight w, const search_budget& budget = {},
                           const solve_options& options = {});

// Exhaustive enumeration of every cyclic order, n in {2, 3}.
search_outcome brute_force_oracle(int n, bool proper, weight w);

// prefix score + half the sum, over every open edge slot, of the largest
// weights still available to it. Admissible and non-increasing along legal
// extensions of the prefix.
std::int64_t upper_bound(const partial_tour& partial, weight w);

}  // namespace gridgon
