#pragma once

#include <cstdint>

#include "kse/weights.hpp"

namespace kse {

// Resource caps. Every potentially explosive loop checks one of these and
// refuses (BudgetExceeded) rather than running unbounded.
struct Budgets {
  std::uint64_t weyl = 10'000'000;         // max |W| enumerated
  Coord partition_level = 64;              // max phi-level in partition counts
  std::uint64_t enumeration = 10'000'000;  // max tuples in brute enumerations
  std::size_t cache_entries = 1u << 20;    // LRU bound for the partition memo
};

}  // namespace kse
