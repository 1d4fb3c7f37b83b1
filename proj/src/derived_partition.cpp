#include "canram/derived_partition.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace canram {

PositionPairs::PositionPairs(int n) : n_(n), sets_(all_position_sets(n)) {
  for (std::size_t a = 0; a < sets_.size(); ++a) {
    for (std::size_t b = a + 1; b < sets_.size(); ++b) pairs_.emplace_back(a, b);
  }
}

std::size_t PositionPairs::pair_index(std::size_t a, std::size_t b) const {
  if (a == b) throw Error(Errc::kInvalidArgument, "diagonal pair has no index");
  if (a > b) std::swap(a, b);
  const std::size_t m = sets_.size();
  // pairs (a, a+1..m-1) start after sum_{i<a} (m-1-i)
  return a * (2 * m - a - 1) / 2 + (b - a - 1);
}

const PositionPairs& position_pairs(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PositionPairs>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PositionPairs>(n);
  return *slot;
}

// AtomSignature

AtomSignature::AtomSignature(int n, std::vector<bool> bits)
    : n_(n), bits_(std::move(bits)) {
  if (bits_.size() != position_pairs(n).pair_count()) {
    throw Error(Errc::kSizeMismatch,
                "signature needs " +
                    std::to_string(position_pairs(n).pair_count()) + " bits");
  }
}

AtomSignature AtomSignature::zeros(int n) {
  return AtomSignature(n, std::vector<bool>(position_pairs(n).pair_count(), false));
}

AtomSignature AtomSignature::ones(int n) {
  return AtomSignature(n, std::vector<bool>(position_pairs(n).pair_count(), true));
}

std::size_t AtomSignature::positive_count() const {
  std::size_t c = 0;
  for (bool b : bits_) c += b;
  return c;
}

std::vector<std::size_t> AtomSignature::positive_pairs() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) out.push_back(k);
  }
  return out;
}

bool AtomSignature::relates(const PositionSet& p, const PositionSet& q) const {
  if (p == q) return true;
  const auto& table = position_pairs(n_);
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < table.sets().size(); ++i) {
    if (table.sets()[i] == p) a = i;
    if (table.sets()[i] == q) b = i;
  }
  return bits_[table.pair_index(a, b)];
}

std::string AtomSignature::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t k = 0; k < bits_.size(); k += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (k + j < bits_.size() && bits_[k + j]) nibble |= 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

std::string AtomSignature::bit_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

// Relations

namespace {

void require_2n_subset(const Coloring& c, const KSubset& z) {
  if (z.size() != static_cast<std::size_t>(2 * c.arity())) {
    throw Error(Errc::kSizeMismatch, "expected a " +
                                         std::to_string(2 * c.arity()) +
                                         "-subset, got " + z.to_string());
  }
  if (!z.empty() && z.back() >= c.universe()) {
    throw Error(Errc::kNotInGroundSet, z.to_string() + " leaves the universe");
  }
}

// Colours of the C(2n,n) selections of z, in position-set order.
void selection_colors(const Coloring& c, const PositionPairs& table,
                      std::span<const Element> z, std::vector<ColorId>& out,
                      std::vector<Element>& scratch) {
  out.resize(table.sets().size());
  scratch.resize(table.n());
  for (std::size_t s = 0; s < table.sets().size(); ++s) {
    const auto& ps = table.sets()[s];
    for (int i = 0; i < table.n(); ++i) scratch[i] = z[ps[i]];
    out[s] = c.color(scratch);
  }
}

AtomSignature signature_from_colors(const PositionPairs& table,
                                    const std::vector<ColorId>& colors) {
  std::vector<bool> bits(table.pair_count());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    auto [a, b] = table.pair_at(k);
    bits[k] = colors[a] == colors[b];
  }
  return AtomSignature(table.n(), std::move(bits));
}

}  // namespace

bool related(const Coloring& c, const KSubset& z, const PositionSet& p,
             const PositionSet& q) {
  require_2n_subset(c, z);
  if (p.n() != c.arity() || q.n() != c.arity()) {
    throw Error(Errc::kSizeMismatch, "position sets must match the arity");
  }
  return c.color(p.select(z.span()).span()) == c.color(q.select(z.span()).span());
}

AtomSignature signature_of(const Coloring& c, const KSubset& z) {
  require_2n_subset(c, z);
  const auto& table = position_pairs(c.arity());
  std::vector<ColorId> colors;
  std::vector<Element> scratch;
  selection_colors(c, table, z.span(), colors, scratch);
  return signature_from_colors(table, colors);
}

IndexSet canonical_index_set(const AtomSignature& sig) {
  const auto& table = position_pairs(sig.n());
  IndexSet acc = IndexSet::full(sig.n());
  for (std::size_t k : sig.positive_pairs()) {
    acc = acc.intersect(index_agreement(table.first_of(k), table.second_of(k)));
  }
  return acc;
}

std::optional<std::size_t> DerivedPartition::find(const AtomSignature& sig) const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].signature == sig) return i;
  }
  return std::nullopt;
}

DerivedPartition derive_partition(const Coloring& c) {
  const int n = c.arity();
  const Element N = c.universe();
  if (N < static_cast<Element>(2 * n)) {
    throw Error(Errc::kUniverseTooSmall,
                "universe of size " + std::to_string(N) + " has no " +
                    std::to_string(2 * n) + "-subsets");
  }
  const auto& table = position_pairs(n);
  const std::uint64_t total = binomial(N, 2 * n);
  if (total > kPartitionLimit) {
    throw Error(Errc::kInvalidArgument,
                "more than " + std::to_string(kPartitionLimit) + " " +
                    std::to_string(2 * n) +
                    "-subsets to partition; name the atom by a member instead");
  }
  const bool explicit_members = total <= kExplicitMemberLimit;

  std::vector<Atom> found;
  std::map<AtomSignature, std::size_t> index_of;
  std::vector<ColorId> atom_of(total);
  std::vector<ColorId> colors;
  std::vector<Element> scratch;

  for_each_ksubset(N, 2 * n, [&](std::span<const Element> z) {
    selection_colors(c, table, z, colors, scratch);
    AtomSignature sig = signature_from_colors(table, colors);
    auto [it, inserted] = index_of.try_emplace(sig, found.size());
    if (inserted) {
      Atom atom{sig, canonical_index_set(sig), 0,
                KSubset::unchecked({z.begin(), z.end()}), std::nullopt};
      if (explicit_members) atom.members.emplace();
      found.push_back(std::move(atom));
    }
    Atom& atom = found[it->second];
    ++atom.member_count;
    if (atom.members) atom.members->push_back(KSubset::unchecked({z.begin(), z.end()}));
    atom_of[colex_rank(z)] = it->second;
  });

  Coloring atom_coloring = Coloring::from_colex_table(
      2 * n, N, std::move(atom_of), "atoms of " + c.description());
  return DerivedPartition{n, std::move(found), std::move(atom_coloring)};
}

std::vector<Atom> atoms(const Coloring& c) {
  return derive_partition(c).atoms;
}

std::uint64_t atom_bound_log2(int n) {
  const std::uint64_t m = binomial(2 * n, n);
  return m * (m - 1) / 2;
}

}  // namespace canram
