#pragma once

// Cascade construction on a ranked ground set: single (p,q)-steps built from
// sparse sets, chains of steps with geometrically shrinking sparsity, full
// schedules over an atom's relations, local shifts, and hat normal forms.
// Everything here needs arity n >= 2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canram/combinatorics.hpp"
#include "canram/derived_partition.hpp"

namespace canram {

/// x →_pq y witnessed by z: p selects x from z, q selects y.
struct CascadeStep {
  KSubset source;
  KSubset target;
  PositionSet p;
  PositionSet q;
  KSubset witness;
};

/// Re-derives both selections from the raw witness. Returns a description of
/// the first failed check, or nullopt.
std::optional<std::string> check_step(const RankedSet& X, const CascadeStep& step);

struct Cascade {
  /// t in "t-cascade"; twice the number of steps for built cascades.
  std::size_t level = 0;
  std::vector<KSubset> sets;  // x_0 .. x_l
  std::vector<CascadeStep> steps;
};

/// Checks the t-cascade inequalities d(x_i) >= n^{t-2i} and
/// r(x_i, x_{i+1}) <= n^{t-2i-1} along with every step witness.
std::optional<std::string> check_cascade(const RankedSet& X, const Cascade& cascade);

using PositionPair = std::pair<PositionSet, PositionSet>;

struct Schedule {
  int n = 2;
  std::vector<PositionPair> pairs;

  std::size_t length() const noexcept { return pairs.size(); }
  /// n^{2l}, saturating.
  std::uint64_t required_sparsity() const;
  /// Whether some x ⊆ X⁻ can meet the required sparsity at all.
  bool feasible_for(const RankedSet& X) const;
};

/// Builds z from the sparse set x and returns y = q-selection of z with
/// d(y) >= n^{2l-2} and r(x,y) <= n^{2l-1}.
/// Needs d(x) >= n^{2l} and rank headroom for the topmost block of z.
CascadeStep step_construct(const RankedSet& X, const KSubset& x,
                           const PositionSet& p, const PositionSet& q,
                           unsigned level);

/// 2l-cascade starting at x, step i built at level l-i.
Cascade build_cascade(const RankedSet& X, const KSubset& x,
                      const std::vector<PositionPair>& schedule);

/// n consecutive copies of each positive pair, in canonical pair order.
Schedule full_schedule(int n, const AtomSignature& sig);

/// Full-schedule cascade from x whose last set meets x exactly in the
/// I(Q)-positions of x. The caller is responsible for [X]^{2n} ⊆ Q.
Cascade core_reduce(const RankedSet& X, const KSubset& x, const AtomSignature& sig);

/// Moves source_[i] down to `replacement` keeping the target fixed:
/// returns a step (source ∖ {source_[i]}) ∪ {replacement} →_pq target.
CascadeStep shift_witness(const AtomSignature& sig, const RankedSet& X,
                          const CascadeStep& prior, std::size_t i,
                          Element replacement);

/// Keeps the I-positions of x and packs the other positions gap ranks apart,
/// the first of them at rank gap when 0 ∉ I.
KSubset hat_normal_form(const RankedSet& X, const KSubset& x, const IndexSet& I,
                        std::size_t gap);

}  // namespace canram
