#pragma once

// Branching enumerators with weak-validity pruning for every invariant level.

#include <cstdint>
#include <variant>
#include <vector>

#include "ramify/polygon.hpp"
#include "ramify/validity.hpp"

namespace ramify {

struct EnumStats {
  std::uint64_t branches_visited = 0;
  std::uint64_t results = 0;

  EnumStats& operator+=(const EnumStats& o) {
    branches_visited += o.branches_visited;
    results += o.results;
    return *this;
  }
};

struct EnumOptions {
  /// Prune branches that are not weakly valid. Turning this off is only
  /// useful for cross-checking the pruning.
  bool prune = true;
  /// Worker threads for the top-level J_0 branches (0 or 1: serial).
  unsigned threads = 1;
  ValidityOptions validity;
};

template <class T>
struct Enumerated {
  std::vector<T> items;
  EnumStats stats;
};

Enumerated<RamPolygon> enumerate_ram_polygons(const BinomialContext& ctx, std::int64_t n, const EnumOptions& opts = {});
Enumerated<FinePolygon> enumerate_fine_polygons(const BinomialContext& ctx, const RamPolygon& P,
                                                const EnumOptions& opts = {});
Enumerated<FinePolygonWithResidues> enumerate_residue_classes(const BinomialContext& ctx, const FinePolygon& Pstar,
                                                              const EnumOptions& opts = {});
Enumerated<InvariantWithUnif> enumerate_unif_classes(const BinomialContext& ctx, const FinePolygonWithResidues& Pres,
                                                     const EnumOptions& opts = {});

enum class Level { Ram, Fine, Res, Unif };

using Invariant = std::variant<RamPolygon, FinePolygon, FinePolygonWithResidues, InvariantWithUnif>;

/// Runs the enumerators down to `level`, depth first, in canonical order.
Enumerated<Invariant> enumerate_invariants(const BinomialContext& ctx, std::int64_t n, Level level,
                                           const EnumOptions& opts = {});

/// J_0 values in [0, n v(n)] satisfying min(n v(b_0), n v(n)) <= J_0 <= n v(n).
std::vector<std::int64_t> ore_bound_range(const BinomialContext& ctx, std::int64_t n);

}  // namespace ramify
