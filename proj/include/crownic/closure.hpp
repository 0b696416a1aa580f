// Semigroup closure by breadth-first right multiplication, the brute-force
// membership oracle, and the generating-set verification reports.
//
// Closure seeds the queue with the generators themselves, so every nonempty
// product is reached: a product g1...gk is found at depth k by right
// multiplication of the depth-(k-1) element g1...g(k-1). The identity appears
// only when some product equals it. Expansion is level-synchronous: products
// of one frontier are computed (optionally in parallel), then merged in a
// fixed order, so the discovered element list, the parent tree, and all
// reports are identical for every thread count.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crownic/generators.hpp"

namespace crownic {

// Hard size guards; both overridable where a flag is threaded through.
inline constexpr int kBruteForceCap = 8;  // all-injections filter
inline constexpr int kClosureCap = 10;    // closure engine

struct ClosureOptions {
    int threads = 1;  // <= 0 picks the hardware concurrency
    bool cap_override = false;
};

struct ClosureStats {
    std::vector<std::size_t> frontier_sizes;
    std::uint64_t products = 0;
    double wall_seconds = 0.0;
};

struct ClosureResult {
    // Discovery (BFS) order; deterministic for a fixed generator sequence.
    std::vector<PartialInjection> elements;
    // parents[i] = (index of the predecessor element, generator index);
    // predecessor -1 marks a seed. Walking to the root spells a word for
    // elements[i] over the input generators.
    std::vector<std::pair<int, int>> parents;
    std::map<int, std::size_t> census;  // rank -> count
    ClosureStats stats;

    std::vector<PartialInjection> sorted_elements() const;  // by canonical encoding
    std::vector<int> parent_word(std::size_t i) const;      // generator indices, left to right
};

// Least set containing gens and closed under composition. Empty input yields
// an empty closure. Throws std::length_error past the n cap without override.
ClosureResult close(const std::vector<PartialInjection>& gens, const ClosureOptions& opts = {});

// Every member of IC_n, by filtering all partial injections on [n]; sorted by
// canonical encoding. Capped at n = 8 unless overridden.
std::vector<PartialInjection> brute_force_icn(int n, bool cap_override = false);

struct GenerationReport {
    bool equal = false;
    std::size_t closure_size = 0;
    std::size_t oracle_size = 0;
    std::vector<PartialInjection> missing;  // oracle elements the closure lacks (truncated)
    std::vector<PartialInjection> extra;    // closure elements outside the oracle (truncated)
};

// Does the catalog G(n) generate exactly IC_n? Compares closure and oracle as
// sets, both directions.
GenerationReport verify_generating(int n, const ClosureOptions& opts = {});

struct IrredundancyEntry {
    GeneratorSymbol dropped;
    std::size_t closure_size = 0;
    bool proper = false;                       // closure is a proper subset of IC_n
    std::optional<PartialInjection> witness;   // least unreached member, by encoding
};

// Drops each catalog generator in turn and reports the resulting deficit.
std::vector<IrredundancyEntry> irredundancy(int n, const ClosureOptions& opts = {});

struct RankSearchResult {
    int rank = 0;
    std::size_t closures_tried = 0;  // number of size <= 2 subsets examined
    std::vector<PartialInjection> generating_triple;
};

// Exhaustive minimality certificate for n = 2: no subset of size <= 2 of the
// 6-element semigroup generates it, and some size-3 subset does.
RankSearchResult rank_search_small(int n);

// The five closure statistics every generating set of IC_n must satisfy.
// Report-only; feeding a non-generating set is how the bounds are probed.
struct LowerBoundReport {
    bool a = false;  // two full-rank elements, both orientations
    bool b = false;  // two rank n-1 elements, both missing-point parities
    bool c = false;  // rank n-2 coverage of odd interval sizes, both endpoint parities
    bool d = false;  // rank n-3 census and parity-mixing interval-size coverage
    bool e = false;  // both half-rank parity swappers (U and its dual)
    std::map<int, std::size_t> rank_counts;
    std::vector<int> sizes_d;  // even interval sizes condition (d) must cover
    bool all() const { return a && b && c && d && e; }
    std::string to_json_string() const;
};

LowerBoundReport prg3_conditions(const std::vector<PartialInjection>& gens, int n);

}  // namespace crownic
