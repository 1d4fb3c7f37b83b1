#include "canram/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace canram {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "invalid-argument";
    case Errc::kNotInGroundSet: return "element-not-in-ground-set";
    case Errc::kNotInReducedSet: return "member-not-in-reduced-set";
    case Errc::kSizeMismatch: return "size-mismatch";
    case Errc::kInsufficientSparsity: return "insufficient-sparsity";
    case Errc::kInsufficientHeadroom: return "insufficient-headroom";
    case Errc::kInfeasibleSparsity: return "infeasible-sparsity";
    case Errc::kArityOneUnsupported: return "arity-one-unsupported";
    case Errc::kRankCollision: return "rank-collision";
    case Errc::kShiftTooClose: return "shift-too-close";
    case Errc::kShiftOutOfInterval: return "shift-out-of-interval";
    case Errc::kPairNotInAtom: return "pair-not-in-atom";
    case Errc::kMalformedInput: return "malformed-input";
    case Errc::kUniverseTooSmall: return "universe-too-small";
  }
  return "unknown";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > kMax / base) return kMax;
    acc *= base;
  }
  return acc;
}

// KSubset

namespace {

void require_increasing(const std::vector<Element>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) {
      throw Error(Errc::kInvalidArgument,
                  std::string(what) + " must be strictly increasing");
    }
  }
}

}  // namespace

KSubset::KSubset(std::initializer_list<Element> members)
    : KSubset(std::vector<Element>(members)) {}

KSubset::KSubset(std::vector<Element> members) : members_(std::move(members)) {
  require_increasing(members_, "subset members");
}

KSubset KSubset::unchecked(std::vector<Element> members) {
  KSubset s;
  s.members_ = std::move(members);
  return s;
}

bool KSubset::contains(Element e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

bool KSubset::is_subset_of(const KSubset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

KSubset KSubset::intersection(const KSubset& other) const {
  std::vector<Element> out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return unchecked(std::move(out));
}

KSubset KSubset::set_union(const KSubset& other) const {
  std::vector<Element> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return unchecked(std::move(out));
}

KSubset KSubset::without(Element e) const {
  std::vector<Element> out;
  out.reserve(members_.size());
  for (Element m : members_) {
    if (m != e) out.push_back(m);
  }
  return unchecked(std::move(out));
}

KSubset KSubset::with(Element e) const {
  std::vector<Element> out = members_;
  auto it = std::lower_bound(out.begin(), out.end(), e);
  if (it == out.end() || *it != e) out.insert(it, e);
  return unchecked(std::move(out));
}

std::string KSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i];
  }
  os << '}';
  return os.str();
}

// RankedSet

RankedSet::RankedSet(std::vector<Element> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error(Errc::kInvalidArgument, "ground set must be non-empty");
  }
  require_increasing(elements_, "ground set");
}

RankedSet::RankedSet(std::initializer_list<Element> elements)
    : RankedSet(std::vector<Element>(elements)) {}

RankedSet RankedSet::range(Element size) {
  std::vector<Element> v(size);
  for (Element i = 0; i < size; ++i) v[i] = i;
  return RankedSet(std::move(v));
}

Element RankedSet::at(std::size_t rank) const {
  if (rank >= elements_.size()) {
    throw Error(Errc::kInsufficientHeadroom,
                "rank " + std::to_string(rank) + " beyond ground set of size " +
                    std::to_string(elements_.size()));
  }
  return elements_[rank];
}

bool RankedSet::contains(Element e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

std::optional<std::size_t> RankedSet::find_rank(Element e) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t RankedSet::rank(Element e) const {
  auto r = find_rank(e);
  if (!r) {
    throw Error(Errc::kNotInGroundSet,
                "element " + std::to_string(e) + " is not in the ground set");
  }
  return *r;
}

void RankedSet::require_reduced(const KSubset& x) const {
  for (Element e : x) {
    if (!contains(e) || e == min()) {
      throw Error(Errc::kNotInReducedSet,
                  "member " + std::to_string(e) + " of " + x.to_string() +
                      " is not in X without its minimum");
    }
  }
}

// PositionSet

PositionSet::PositionSet(int n, std::vector<int> positions)
    : n_(n), positions_(std::move(positions)) {
  if (n < 1 || 2 * n > 32) {
    throw Error(Errc::kInvalidArgument, "position sets need 1 <= n <= 16");
  }
  if (static_cast<int>(positions_.size()) != n) {
    throw Error(Errc::kSizeMismatch, "position set must have n members");
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    int p = positions_[i];
    if (p < 0 || p >= 2 * n || (i > 0 && positions_[i - 1] >= p)) {
      throw Error(Errc::kInvalidArgument,
                  "position set must be strictly increasing within [0, 2n)");
    }
    mask_ |= 1U << p;
  }
}

KSubset PositionSet::select(std::span<const Element> z) const {
  if (z.size() != static_cast<std::size_t>(2 * n_)) {
    throw Error(Errc::kSizeMismatch, "selection needs a 2n-subset");
  }
  std::vector<Element> out;
  out.reserve(positions_.size());
  for (int p : positions_) out.push_back(z[p]);
  return KSubset::unchecked(std::move(out));
}

std::string PositionSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (i) os << ',';
    os << positions_[i];
  }
  os << '}';
  return os.str();
}

std::vector<PositionSet> all_position_sets(int n) {
  std::vector<PositionSet> out;
  for_each_ksubset(static_cast<Element>(2 * n), static_cast<std::size_t>(n),
                   [&](std::span<const Element> s) {
                     out.emplace_back(n, std::vector<int>(s.begin(), s.end()));
                   });
  return out;
}

// IndexSet

IndexSet::IndexSet(int n, std::uint32_t mask) : n_(n), mask_(mask) {
  if (n < 0 || n > 16) {
    throw Error(Errc::kInvalidArgument, "index sets need 0 <= n <= 16");
  }
  if (mask >> n) {
    throw Error(Errc::kInvalidArgument, "index set member out of range");
  }
}

IndexSet::IndexSet(int n, std::initializer_list<int> members) : IndexSet(n, 0) {
  for (int i : members) {
    if (i < 0 || i >= n) {
      throw Error(Errc::kInvalidArgument, "index set member out of range");
    }
    mask_ |= 1U << i;
  }
}

int IndexSet::cardinality() const { return std::popcount(mask_); }

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  return IndexSet(n_, mask_ & other.mask_);
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : members()) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

bool index_set_precedes(const IndexSet& a, const IndexSet& b) {
  if (a.cardinality() != b.cardinality()) {
    return a.cardinality() < b.cardinality();
  }
  return a.members() < b.members();
}

std::vector<IndexSet> all_index_sets_ordered(int n) {
  std::vector<IndexSet> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) out.emplace_back(n, m);
  std::sort(out.begin(), out.end(), index_set_precedes);
  return out;
}

// PartialPositionMap

IndexSet PartialPositionMap::domain() const {
  std::uint32_t mask = 0;
  for (int i = 0; i < n(); ++i) {
    if (image_[i]) mask |= 1U << i;
  }
  return IndexSet(n(), mask);
}

IndexSet PartialPositionMap::fixed_points() const {
  std::uint32_t mask = 0;
  for (int i = 0; i < n(); ++i) {
    if (image_[i] && *image_[i] == i) mask |= 1U << i;
  }
  return IndexSet(n(), mask);
}

bool PartialPositionMap::strictly_increasing() const {
  std::optional<int> prev;
  for (const auto& img : image_) {
    if (!img) continue;
    if (prev && *prev >= *img) return false;
    prev = img;
  }
  return true;
}

bool PartialPositionMap::empty() const {
  return std::none_of(image_.begin(), image_.end(),
                      [](const auto& v) { return v.has_value(); });
}

// Metric, sparsity, reach

std::size_t rho(const RankedSet& X, Element a, Element b) {
  std::size_t ra = X.rank(a);
  std::size_t rb = X.rank(b);
  return ra > rb ? ra - rb : rb - ra;
}

std::size_t sparsity(const RankedSet& X, const KSubset& x) {
  X.require_reduced(x);
  if (x.empty()) return kOmega;
  std::size_t best = kOmega;
  std::size_t prev = 0;  // rank of min X
  for (Element e : x) {
    std::size_t r = X.rank(e);
    best = std::min(best, r - prev);
    prev = r;
  }
  return best;
}

std::size_t reach(const RankedSet& X, const KSubset& x, const KSubset& y) {
  X.require_reduced(x);
  X.require_reduced(y);
  std::size_t worst = 0;
  for (Element e : y) {
    if (x.contains(e)) continue;
    auto it = std::lower_bound(x.begin(), x.end(), e);
    Element below = it == x.begin() ? X.min() : *(it - 1);
    worst = std::max(worst, X.rank(e) - X.rank(below));
  }
  return worst;
}

IndexSet index_agreement(const PositionSet& p, const PositionSet& q) {
  if (p.n() != q.n()) {
    throw Error(Errc::kSizeMismatch, "position sets of different arity");
  }
  std::uint32_t mask = 0;
  for (int i = 0; i < p.n(); ++i) {
    if (p[i] == q[i]) mask |= 1U << i;
  }
  return IndexSet(p.n(), mask);
}

PartialPositionMap position_map(const PositionSet& p, const PositionSet& q) {
  if (p.n() != q.n()) {
    throw Error(Errc::kSizeMismatch, "position sets of different arity");
  }
  std::vector<std::optional<int>> image(p.n());
  for (int i = 0; i < p.n(); ++i) {
    if (q.contains(p[i])) {
      // rank of p_[i] inside q
      image[i] = std::popcount(q.mask() & ((1U << p[i]) - 1U));
    }
  }
  return PartialPositionMap(std::move(image));
}

// Enumeration

bool next_ksubset(std::span<Element> state, Element universe) {
  const std::size_t k = state.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (state[i] < universe - (k - i)) {
      ++state[i];
      for (std::size_t j = i + 1; j < k; ++j) state[j] = state[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<KSubset> enumerate_ksubsets(Element universe, std::size_t k) {
  std::vector<KSubset> out;
  for_each_ksubset(universe, k, [&](std::span<const Element> s) {
    out.push_back(KSubset::unchecked({s.begin(), s.end()}));
  });
  return out;
}

std::uint64_t colex_rank(std::span<const Element> subset) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    r += binomial(subset[i], i + 1);
  }
  return r;
}

}  // namespace canram
