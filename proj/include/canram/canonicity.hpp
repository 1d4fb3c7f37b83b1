#pragma once

// Homogeneity and I-canonicity checks, complete searches for homogeneous
// and canonical sets, residue-class decomposition, and the end-to-end
// verifier that homogeneous sets of the atom partition split into
// I(Q)-canonical classes.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "canram/coloring.hpp"
#include "canram/combinatorics.hpp"
#include "canram/derived_partition.hpp"

namespace canram {

/// A pair of n-subsets breaking the I-canonical biconditional.
struct CanonicityViolation {
  KSubset first;
  KSubset second;
  /// true: same colour but they differ on I. false: they agree on I but
  /// their colours differ.
  bool same_color;
};

struct CanonicityCheck {
  bool canonical = true;
  std::optional<CanonicityViolation> violation;

  explicit operator bool() const { return canonical; }
};

struct CanonicityReport {
  KSubset subject;
  std::vector<IndexSet> passing;  // index_set_precedes order
  std::vector<std::pair<IndexSet, CanonicityViolation>> rejected;
};

bool is_homogeneous(const Coloring& c, const KSubset& X);

/// Exhaustive biconditional over [X]^n; on failure, the first violating
/// pair in lexicographic pair order.
CanonicityCheck check_canonical(const Coloring& c, const KSubset& X,
                                const IndexSet& I);

CanonicityReport canonicity_report(const Coloring& c, const KSubset& X);

struct SearchScope {
  /// Sorted candidate elements; empty means the whole universe.
  std::vector<Element> pool;
};

/// Lexicographically first X of the given size with all arity-subsets in one
/// colour (in `target_color` when given), or nullopt if none exists.
std::optional<KSubset> find_homogeneous(const Coloring& c, std::size_t size,
                                        std::optional<ColorId> target_color = {},
                                        const SearchScope& scope = {});

struct CanonicalFinding {
  KSubset set;
  IndexSet index_set;             // preferred passing I
  std::vector<IndexSet> passing;  // every passing I, preferred first
};

/// Lexicographically first X of the given size that is I-canonical for
/// some I; among its passing I the smallest-cardinality, then
/// lexicographically least, is reported.
std::optional<CanonicalFinding> find_canonical(const Coloring& c,
                                               std::size_t size,
                                               const SearchScope& scope = {});

struct Decomposition {
  std::size_t gap = 1;
  /// classes[0] = R_0 = ranks {0..g-1}; classes[j] = ranks >= g congruent
  /// to j-1 mod g.
  std::vector<KSubset> classes;
};

Decomposition decompose(const KSubset& X, std::size_t gap);

struct ClassVerdict {
  std::size_t index = 0;
  KSubset members;
  bool trivially_canonical = false;  // fewer than n members
  bool canonical = false;
  std::optional<CanonicityViolation> violation;
};

/// Verdicts for R_1..R_g against I.
std::vector<ClassVerdict> class_verdicts(const Coloring& c,
                                         const Decomposition& d,
                                         const IndexSet& I);

struct GapVerdict {
  std::size_t gap = 1;
  bool passed = false;
  std::vector<ClassVerdict> classes;
};

struct AtomFinding {
  std::size_t atom_index = 0;
  AtomSignature signature;
  IndexSet canonical_index_set;
  std::uint64_t member_count = 0;
  std::optional<KSubset> homogeneous_set;
  std::vector<GapVerdict> gaps;
  std::optional<std::size_t> minimal_gap;
};

struct Theorem1Report {
  int n = 0;
  std::size_t set_size = 0;
  std::size_t max_gap = 0;
  std::vector<AtomFinding> atoms;
  /// Smallest gap at which every atom with a homogeneous set passes.
  std::optional<std::size_t> minimal_common_gap;
  bool passed = false;
};

/// For each atom Q, searches X of the given size with [X]^{2n} ⊆ Q and checks
/// the decomposition classes against I(Q) for gaps 1..max_gap.
Theorem1Report verify_theorem1(const Coloring& c, std::size_t set_size,
                               std::size_t max_gap);
Theorem1Report verify_theorem1(const Coloring& c, const DerivedPartition& partition,
                               std::size_t set_size, std::size_t max_gap);

struct FunctionAnalysis {
  std::optional<CanonicalFinding> largest;
  std::size_t size_cap = 0;
  bool upward_constant() const {
    return largest && largest->index_set.cardinality() == 0;
  }
  bool selectively_upward_injective() const {
    return largest && largest->index_set.cardinality() > 0;
  }
};

/// Treats the colouring as a function of increasing n-tuples and finds the
/// largest set (up to size_cap) on which it is upward constant or
/// selectively upward injective.
FunctionAnalysis analyze_function(const Coloring& f, std::size_t size_cap,
                                  const SearchScope& scope = {});

}  // namespace canram
