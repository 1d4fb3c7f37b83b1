#pragma once

// Brute-force reference implementations. Slow and literal on purpose: no
// shared enumeration code, no bit tricks, no pruning beyond "first witness".

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "canram/coloring.hpp"
#include "canram/combinatorics.hpp"
#include "canram/derived_partition.hpp"

namespace canram::oracle {

struct CanonicalEntry {
  KSubset set;
  IndexSet index_set;
};

/// Every (X, I) with |X| = size and X I-canonical; X in lexicographic order,
/// I ascending by bitmask within each X.
std::vector<CanonicalEntry> exhaustive_canonical(const Coloring& c, std::size_t size);

struct QWitness {
  KSubset z;
  std::vector<int> p;
  std::vector<int> q;
};

/// x ↔_Q y inside X: some z ∈ [X]^{2n} containing x ∪ y whose rank-derived
/// selections (p, q) satisfy Q ⊆ Q_pq. Q ⊆ Q_pq is evaluated on the atom's
/// first member directly through the colouring.
std::optional<QWitness> q_equiv(const Coloring& c, const Atom& atom,
                                const std::vector<Element>& X,
                                const std::vector<Element>& x,
                                const std::vector<Element>& y);

struct GapTable {
  std::size_t minimal_gap = 0;
  /// verdicts[g-1][j-1]: class R_j at gap g is I-canonical (or has < n members).
  std::vector<std::vector<bool>> verdicts;
};

/// Smallest g >= 1 at which every residue class with >= n members is
/// I-canonical. Scans upward; g = |X| always passes.
GapTable min_gap_empirical(const Coloring& c, const std::vector<Element>& X,
                           const IndexSet& I);

/// Literal I-canonical test on an explicit element list.
bool literally_canonical(const Coloring& c, const std::vector<Element>& X,
                         const IndexSet& I);

/// All subsets of `items` with exactly k members, lexicographic.
std::vector<std::vector<Element>> subsets_of_size(const std::vector<Element>& items,
                                                  std::size_t k);

}  // namespace canram::oracle
