#pragma once

// The relations Q_pq on 2n-subsets, the atom partition they generate, and
// the canonical index set I(Q) of each atom.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canram/coloring.hpp"
#include "canram/combinatorics.hpp"

namespace canram {

/// [2n]^n in lexicographic order together with the canonical order on
/// unordered pairs of distinct members: (0,1), (0,2), ..., (1,2), ...
class PositionPairs {
 public:
  explicit PositionPairs(int n);

  int n() const noexcept { return n_; }
  const std::vector<PositionSet>& sets() const noexcept { return sets_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  std::pair<std::size_t, std::size_t> pair_at(std::size_t k) const {
    return pairs_[k];
  }
  /// Ordinal of the unordered pair {a,b}, a != b.
  std::size_t pair_index(std::size_t a, std::size_t b) const;
  const PositionSet& first_of(std::size_t k) const { return sets_[pairs_[k].first]; }
  const PositionSet& second_of(std::size_t k) const { return sets_[pairs_[k].second]; }

 private:
  int n_;
  std::vector<PositionSet> sets_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Shared, lazily built table per arity.
const PositionPairs& position_pairs(int n);

/// One bit per unordered pair of distinct position sets; set iff the atom
/// lies inside Q_pq.
class AtomSignature {
 public:
  AtomSignature(int n, std::vector<bool> bits);
  static AtomSignature zeros(int n);
  static AtomSignature ones(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool test(std::size_t k) const { return bits_[k]; }
  void set(std::size_t k, bool v) { bits_[k] = v; }
  std::size_t positive_count() const;
  std::vector<std::size_t> positive_pairs() const;

  /// Q ⊆ Q_pq; diagonal pairs always hold.
  bool relates(const PositionSet& p, const PositionSet& q) const;

  /// Bits in canonical pair order, padded to a multiple of four, first bit
  /// most significant within each hex digit.
  std::string hex() const;
  std::string bit_string() const;

  friend bool operator==(const AtomSignature&, const AtomSignature&) = default;
  friend auto operator<=>(const AtomSignature& a, const AtomSignature& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  int n_;
  std::vector<bool> bits_;
};

struct Atom {
  AtomSignature signature;
  IndexSet canonical_index_set;
  std::uint64_t member_count = 0;
  KSubset first_member;
  /// Only kept when C(N,2n) is at most kExplicitMemberLimit.
  std::optional<std::vector<KSubset>> members;
};

inline constexpr std::uint64_t kExplicitMemberLimit = 1'000'000;
/// derive_partition refuses universes with more 2n-subsets than this.
inline constexpr std::uint64_t kPartitionLimit = 50'000'000;

/// {z_[i]: i∈p} ≈ {z_[i]: i∈q}
bool related(const Coloring& c, const KSubset& z, const PositionSet& p,
             const PositionSet& q);

AtomSignature signature_of(const Coloring& c, const KSubset& z);

/// Intersection of I_pq over the positive pairs; {0..n-1} when none.
IndexSet canonical_index_set(const AtomSignature& sig);

struct DerivedPartition {
  int n = 0;
  /// Ordered by first member in lexicographic order of [N]^{2n}.
  std::vector<Atom> atoms;
  /// Arity-2n colouring whose colour is the atom index.
  Coloring atom_coloring;

  std::optional<std::size_t> find(const AtomSignature& sig) const;
};

DerivedPartition derive_partition(const Coloring& c);

std::vector<Atom> atoms(const Coloring& c);

/// log2 of the atom count bound 2^{C(2n,n)(C(2n,n)-1)/2}.
std::uint64_t atom_bound_log2(int n);

}  // namespace canram
