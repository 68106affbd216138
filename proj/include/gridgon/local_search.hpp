#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "gridgon/geometry.hpp"

namespace gridgon {

enum class move_kind { two_opt, or_opt };

inline const char* move_name(move_kind k) { return k == move_kind::two_opt ? "TWO_OPT" : "OR_OPT"; }

// TWO_OPT {i, j}: edges i and j are replaced by reversing order[i+1..j].
// OR_OPT {i, len, j, reversed}: order[i..i+len-1] is reinserted on edge j
// (an index into the tour with the segment removed).
struct move {
  move_kind kind;
  std::vector<int> indices;
  std::int64_t delta = 0;
};

using move_log = std::vector<move>;

struct improve_result {
  tour result;
  move_log log;
  bool cancelled = false;
};

// Score change of the 2-opt move without applying it.
std::int64_t two_opt_delta(const tour& t, int i, int j, weight w);
// Applies the move in place and returns the score change.
std::int64_t apply_two_opt(tour& t, int i, int j, weight w);

// Relocated tour for an or-opt move; the caller computes the score change.
tour or_opt_result(const tour& t, int i, int len, int j, bool reversed);

// First-improvement descent over 2-opt and or-opt (segments up to 3 points),
// scanning candidates in an order shuffled by rng_seed. Stops at a local
// optimum or after iteration_budget accepted moves (0 means no limit). The
// cancel flag is polled between candidate evaluations.
improve_result improve(const tour& t, bool proper, weight w, std::uint64_t iteration_budget, std::uint64_t rng_seed,
                       const std::atomic<bool>* cancel = nullptr);

}  // namespace gridgon
