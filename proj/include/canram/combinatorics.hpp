#pragma once

// Ranked ground sets, k-subsets, the rank metric and the position-set
// algebra that the rest of the engine is written in.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canram/error.hpp"

namespace canram {

/// Marker for d(∅); compares above every natural.
inline constexpr std::size_t kOmega = std::numeric_limits<std::size_t>::max();

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

/// A strictly increasing finite sequence of naturals.
class KSubset {
 public:
  KSubset() = default;
  KSubset(std::initializer_list<Element> members);
  explicit KSubset(std::vector<Element> members);

  /// Skips validation; caller guarantees strict increase.
  static KSubset unchecked(std::vector<Element> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  Element operator[](std::size_t i) const { return members_[i]; }
  Element front() const { return members_.front(); }
  Element back() const { return members_.back(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  std::span<const Element> span() const noexcept { return members_; }
  const std::vector<Element>& members() const noexcept { return members_; }

  bool contains(Element e) const;
  bool is_subset_of(const KSubset& other) const;
  KSubset intersection(const KSubset& other) const;
  KSubset set_union(const KSubset& other) const;
  KSubset without(Element e) const;
  KSubset with(Element e) const;

  std::string to_string() const;

  friend bool operator==(const KSubset&, const KSubset&) = default;
  friend auto operator<=>(const KSubset& a, const KSubset& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<Element> members_;
};

/// Ordered ground set X with rank-indexed access X_[i].
class RankedSet {
 public:
  explicit RankedSet(std::vector<Element> elements);
  RankedSet(std::initializer_list<Element> elements);

  /// {0, ..., size-1}
  static RankedSet range(Element size);

  std::size_t size() const noexcept { return elements_.size(); }
  Element operator[](std::size_t rank) const { return elements_[rank]; }
  Element at(std::size_t rank) const;
  Element min() const { return elements_.front(); }
  bool contains(Element e) const;

  std::optional<std::size_t> find_rank(Element e) const;
  /// Throws kNotInGroundSet.
  std::size_t rank(Element e) const;

  std::span<const Element> elements() const noexcept { return elements_; }

  /// Throws kNotInReducedSet unless every member lies in X⁻.
  void require_reduced(const KSubset& x) const;

 private:
  std::vector<Element> elements_;
};

/// An n-element subset of {0..2n-1}.
class PositionSet {
 public:
  PositionSet(int n, std::vector<int> positions);
  PositionSet(int n, std::initializer_list<int> positions)
      : PositionSet(n, std::vector<int>(positions)) {}

  int n() const noexcept { return n_; }
  int operator[](std::size_t i) const { return positions_[i]; }
  std::size_t size() const noexcept { return positions_.size(); }
  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(int pos) const { return (mask_ >> pos) & 1U; }
  const std::vector<int>& positions() const noexcept { return positions_; }

  /// {z_[i] : i ∈ this}
  KSubset select(std::span<const Element> z) const;

  std::string to_string() const;

  friend bool operator==(const PositionSet& a, const PositionSet& b) {
    return a.n_ == b.n_ && a.mask_ == b.mask_;
  }

 private:
  int n_;
  std::uint32_t mask_ = 0;
  std::vector<int> positions_;
};

/// All of [2n]^n in lexicographic order.
std::vector<PositionSet> all_position_sets(int n);

/// Subset of {0..n-1}, stored as a bitmask.
class IndexSet {
 public:
  IndexSet(int n, std::uint32_t mask);
  IndexSet(int n, std::initializer_list<int> members);

  static IndexSet full(int n) { return IndexSet(n, (1U << n) - 1U); }
  static IndexSet empty_set(int n) { return IndexSet(n, 0); }

  int n() const noexcept { return n_; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(int i) const { return (mask_ >> i) & 1U; }
  int cardinality() const;
  std::vector<int> members() const;
  IndexSet intersect(const IndexSet& other) const;

  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  int n_;
  std::uint32_t mask_;
};

/// Smallest cardinality first, then lexicographic on sorted members.
bool index_set_precedes(const IndexSet& a, const IndexSet& b);

/// All 2^n index sets in index_set_precedes order.
std::vector<IndexSet> all_index_sets_ordered(int n);

/// Partial injection i ↦ j on {0..n-1}.
class PartialPositionMap {
 public:
  explicit PartialPositionMap(std::vector<std::optional<int>> image)
      : image_(std::move(image)) {}

  int n() const noexcept { return static_cast<int>(image_.size()); }
  std::optional<int> operator()(int i) const { return image_[i]; }
  IndexSet domain() const;
  IndexSet fixed_points() const;
  bool strictly_increasing() const;
  bool empty() const;

 private:
  std::vector<std::optional<int>> image_;
};

/// ρ(a,b) = |(a△b) ∩ X|, computed as the rank difference.
std::size_t rho(const RankedSet& X, Element a, Element b);

/// d(x) = min ρ over distinct pairs of x ∪ {min X}; kOmega for x = ∅.
std::size_t sparsity(const RankedSet& X, const KSubset& x);

/// r(x,y): largest ρ from an element of y∖x down to its nearest lower
/// neighbour in x ∪ {min X}; 0 when y ⊆ x.
std::size_t reach(const RankedSet& X, const KSubset& x, const KSubset& y);

/// I_pq = {i : p_[i] = q_[i]}
IndexSet index_agreement(const PositionSet& p, const PositionSet& q);

/// φ_pq = q⁻¹∘p
PartialPositionMap position_map(const PositionSet& p, const PositionSet& q);

/// Advance to the lexicographic successor among k-subsets of {0..N-1}.
/// Returns false (state unspecified) after the last subset.
bool next_ksubset(std::span<Element> state, Element universe);

/// Calls fn(std::span<const Element>) for every k-subset of {0..N-1} in
/// lexicographic order.
template <typename Fn>
void for_each_ksubset(Element universe, std::size_t k, Fn&& fn) {
  if (k > universe) {
    throw Error(Errc::kInvalidArgument, "k-subset size exceeds universe");
  }
  std::vector<Element> state(k);
  for (std::size_t i = 0; i < k; ++i) state[i] = static_cast<Element>(i);
  do {
    fn(std::span<const Element>(state));
  } while (next_ksubset(state, universe));
}

/// Same, over the k-subsets of an arbitrary sorted pool.
template <typename Fn>
void for_each_ksubset_of(std::span<const Element> pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return;
  std::vector<Element> idx(k);
  std::vector<Element> sub(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Element>(i);
  do {
    for (std::size_t i = 0; i < k; ++i) sub[i] = pool[idx[i]];
    fn(std::span<const Element>(sub));
  } while (next_ksubset(idx, static_cast<Element>(pool.size())));
}

std::vector<KSubset> enumerate_ksubsets(Element universe, std::size_t k);

/// Position of a k-subset in colexicographic order: Σ C(a_i, i+1).
std::uint64_t colex_rank(std::span<const Element> subset);

}  // namespace canram
