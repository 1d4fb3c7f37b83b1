#include "canram/canonicity.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace canram {

namespace {

std::uint32_t agreement_mask(std::span<const Element> a,
                             std::span<const Element> b) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) m |= 1U << i;
  }
  return m;
}

struct Enumerated {
  std::vector<Element> flat;  // arity entries per subset
  std::vector<ColorId> colors;
};

Enumerated enumerate_colored(const Coloring& c, const KSubset& X) {
  Enumerated e;
  for_each_ksubset_of(X.span(), c.arity(), [&](std::span<const Element> s) {
    e.flat.insert(e.flat.end(), s.begin(), s.end());
    e.colors.push_back(c.color(s));
  });
  return e;
}

void require_within(const Coloring& c, const KSubset& X, std::size_t min_size) {
  if (X.size() < min_size) {
    throw Error(Errc::kSizeMismatch, "set " + X.to_string() + " has fewer than " +
                                         std::to_string(min_size) + " members");
  }
  if (!X.empty() && X.back() >= c.universe()) {
    throw Error(Errc::kNotInGroundSet, X.to_string() + " leaves the universe");
  }
}

std::vector<Element> resolve_pool(const Coloring& c, const SearchScope& scope) {
  if (scope.pool.empty()) {
    std::vector<Element> all(c.universe());
    for (Element i = 0; i < c.universe(); ++i) all[i] = i;
    return all;
  }
  KSubset check(scope.pool);  // validates strict increase
  if (check.back() >= c.universe()) {
    throw Error(Errc::kNotInGroundSet, "search pool leaves the universe");
  }
  return scope.pool;
}

// Bit I of kSubsetsOf[A] is set iff I ⊆ A.
std::vector<std::uint64_t> subsets_table(int n) {
  const std::uint32_t count = 1U << n;
  std::vector<std::uint64_t> table(count, 0);
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t i = 0; i < count; ++i) {
      if ((i & ~a) == 0) table[a] |= std::uint64_t{1} << i;
    }
  }
  return table;
}

std::vector<IndexSet> passing_from_mask(int n, std::uint64_t viable) {
  std::vector<IndexSet> out;
  for (const IndexSet& I : all_index_sets_ordered(n)) {
    if ((viable >> I.mask()) & 1U) out.push_back(I);
  }
  return out;
}

}  // namespace

bool is_homogeneous(const Coloring& c, const KSubset& X) {
  require_within(c, X, c.arity());
  std::optional<ColorId> seen;
  bool uniform = true;
  for_each_ksubset_of(X.span(), c.arity(), [&](std::span<const Element> s) {
    if (!uniform) return;
    ColorId col = c.color(s);
    if (!seen) seen = col;
    else if (*seen != col) uniform = false;
  });
  return uniform;
}

CanonicityCheck check_canonical(const Coloring& c, const KSubset& X,
                                const IndexSet& I) {
  require_within(c, X, c.arity());
  if (I.n() != c.arity()) {
    throw Error(Errc::kSizeMismatch, "index set arity differs from colouring");
  }
  const std::size_t n = c.arity();
  const Enumerated e = enumerate_colored(c, X);
  const std::size_t m = e.colors.size();
  for (std::size_t a = 0; a < m; ++a) {
    std::span<const Element> sa(e.flat.data() + a * n, n);
    for (std::size_t b = a + 1; b < m; ++b) {
      std::span<const Element> sb(e.flat.data() + b * n, n);
      const bool agree = (I.mask() & ~agreement_mask(sa, sb)) == 0;
      const bool same = e.colors[a] == e.colors[b];
      if (agree != same) {
        return {false, CanonicityViolation{
                           KSubset::unchecked({sa.begin(), sa.end()}),
                           KSubset::unchecked({sb.begin(), sb.end()}), same}};
      }
    }
  }
  return {true, std::nullopt};
}

CanonicityReport canonicity_report(const Coloring& c, const KSubset& X) {
  require_within(c, X, c.arity());
  CanonicityReport report{X, {}, {}};
  for (const IndexSet& I : all_index_sets_ordered(c.arity())) {
    CanonicityCheck check = check_canonical(c, X, I);
    if (check) {
      report.passing.push_back(I);
    } else {
      report.rejected.emplace_back(I, std::move(*check.violation));
    }
  }
  return report;
}

std::optional<KSubset> find_homogeneous(const Coloring& c, std::size_t size,
                                        std::optional<ColorId> target_color,
                                        const SearchScope& scope) {
  const std::size_t k = c.arity();
  if (size < k) {
    throw Error(Errc::kInvalidArgument, "homogeneous set size below arity");
  }
  const std::vector<Element> pool = resolve_pool(c, scope);
  if (size > pool.size()) return std::nullopt;

  std::vector<Element> chosen;
  std::vector<Element> probe(k);
  std::optional<ColorId> fixed = target_color;

  auto consistent = [&](Element v) {
    if (chosen.size() + 1 < k) return true;
    bool ok = true;
    for_each_ksubset_of(std::span<const Element>(chosen), k - 1,
                        [&](std::span<const Element> s) {
                          if (!ok) return;
                          std::copy(s.begin(), s.end(), probe.begin());
                          probe[k - 1] = v;
                          ColorId col = c.color(probe);
                          if (!fixed) fixed = col;
                          else if (*fixed != col) ok = false;
                        });
    return ok;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == size) return true;
    for (std::size_t idx = start; idx + (size - chosen.size()) <= pool.size();
         ++idx) {
      const auto saved = fixed;
      if (consistent(pool[idx])) {
        chosen.push_back(pool[idx]);
        if (extend(idx + 1)) return true;
        chosen.pop_back();
      }
      fixed = saved;
    }
    return false;
  };

  if (!extend(0)) return std::nullopt;
  return KSubset::unchecked(chosen);
}

std::optional<CanonicalFinding> find_canonical(const Coloring& c,
                                               std::size_t size,
                                               const SearchScope& scope) {
  const int n = c.arity();
  if (n > 6) {
    throw Error(Errc::kInvalidArgument, "canonical search supports arity <= 6");
  }
  if (size < static_cast<std::size_t>(n)) {
    throw Error(Errc::kInvalidArgument, "canonical set size below arity");
  }
  const std::vector<Element> pool = resolve_pool(c, scope);
  if (size > pool.size()) return std::nullopt;

  const std::vector<std::uint64_t> subset_of = subsets_table(n);
  const std::uint64_t all_viable =
      n == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << n)) - 1;

  std::vector<Element> chosen;
  std::vector<Element> flat;  // n entries per n-subset of chosen
  std::vector<ColorId> colors;
  std::vector<Element> probe(n);

  // Appends the n-subsets containing v and narrows the viable index sets.
  auto add = [&](Element v, std::uint64_t viable) {
    if (chosen.size() + 1 < static_cast<std::size_t>(n)) return viable;
    for_each_ksubset_of(std::span<const Element>(chosen), n - 1,
                        [&](std::span<const Element> s) {
                          if (viable == 0) return;
                          std::copy(s.begin(), s.end(), probe.begin());
                          probe[n - 1] = v;
                          const ColorId col = c.color(probe);
                          for (std::size_t b = 0; b < colors.size(); ++b) {
                            std::span<const Element> other(flat.data() + b * n, n);
                            const std::uint64_t agree =
                                subset_of[agreement_mask(probe, other)];
                            viable &= colors[b] == col ? agree : ~agree;
                          }
                          flat.insert(flat.end(), probe.begin(), probe.end());
                          colors.push_back(col);
                        });
    return viable;
  };

  std::optional<CanonicalFinding> result;
  std::function<bool(std::size_t, std::uint64_t)> extend =
      [&](std::size_t start, std::uint64_t viable) {
        if (chosen.size() == size) {
          auto passing = passing_from_mask(n, viable);
          result = CanonicalFinding{KSubset::unchecked(chosen), passing.front(),
                                    passing};
          return true;
        }
        for (std::size_t idx = start;
             idx + (size - chosen.size()) <= pool.size(); ++idx) {
          const std::size_t mark = colors.size();
          const std::uint64_t narrowed = add(pool[idx], viable);
          if (narrowed != 0) {
            chosen.push_back(pool[idx]);
            if (extend(idx + 1, narrowed)) return true;
            chosen.pop_back();
          }
          colors.resize(mark);
          flat.resize(mark * n);
        }
        return false;
      };

  extend(0, all_viable);
  return result;
}

Decomposition decompose(const KSubset& X, std::size_t gap) {
  if (gap < 1) throw Error(Errc::kInvalidArgument, "gap must be >= 1");
  if (X.empty()) throw Error(Errc::kInvalidArgument, "cannot decompose empty set");
  std::vector<std::vector<Element>> classes(gap + 1);
  for (std::size_t r = 0; r < X.size(); ++r) {
    const std::size_t j = r < gap ? 0 : r % gap + 1;
    classes[j].push_back(X[r]);
  }
  Decomposition d{gap, {}};
  for (auto& cls : classes) d.classes.push_back(KSubset::unchecked(std::move(cls)));
  return d;
}

std::vector<ClassVerdict> class_verdicts(const Coloring& c,
                                         const Decomposition& d,
                                         const IndexSet& I) {
  std::vector<ClassVerdict> out;
  for (std::size_t j = 1; j < d.classes.size(); ++j) {
    ClassVerdict v;
    v.index = j;
    v.members = d.classes[j];
    if (v.members.size() < static_cast<std::size_t>(c.arity())) {
      v.trivially_canonical = true;
      v.canonical = true;
    } else {
      CanonicityCheck check = check_canonical(c, v.members, I);
      v.canonical = check.canonical;
      v.violation = std::move(check.violation);
    }
    out.push_back(std::move(v));
  }
  return out;
}

Theorem1Report verify_theorem1(const Coloring& c, std::size_t set_size,
                               std::size_t max_gap) {
  return verify_theorem1(c, derive_partition(c), set_size, max_gap);
}

Theorem1Report verify_theorem1(const Coloring& c,
                               const DerivedPartition& partition,
                               std::size_t set_size, std::size_t max_gap) {
  const int n = c.arity();
  if (set_size < static_cast<std::size_t>(2 * n)) {
    throw Error(Errc::kInvalidArgument, "homogeneous set size must be >= 2n");
  }
  if (max_gap < 1) throw Error(Errc::kInvalidArgument, "max gap must be >= 1");

  Theorem1Report report;
  report.n = n;
  report.set_size = set_size;
  report.max_gap = max_gap;

  for (std::size_t a = 0; a < partition.atoms.size(); ++a) {
    const Atom& atom = partition.atoms[a];
    AtomFinding finding{a, atom.signature, atom.canonical_index_set,
                        atom.member_count, std::nullopt, {}, std::nullopt};
    finding.homogeneous_set =
        find_homogeneous(partition.atom_coloring, set_size, ColorId{a});
    if (finding.homogeneous_set) {
      for (std::size_t g = 1; g <= max_gap; ++g) {
        GapVerdict gv;
        gv.gap = g;
        gv.classes = class_verdicts(c, decompose(*finding.homogeneous_set, g),
                                    atom.canonical_index_set);
        gv.passed = std::all_of(gv.classes.begin(), gv.classes.end(),
                                [](const ClassVerdict& v) { return v.canonical; });
        if (gv.passed && !finding.minimal_gap) finding.minimal_gap = g;
        finding.gaps.push_back(std::move(gv));
      }
    }
    report.atoms.push_back(std::move(finding));
  }

  report.passed = std::all_of(
      report.atoms.begin(), report.atoms.end(), [](const AtomFinding& f) {
        return !f.homogeneous_set || f.minimal_gap.has_value();
      });
  for (std::size_t g = 1; g <= max_gap && !report.minimal_common_gap; ++g) {
    const bool all = std::all_of(
        report.atoms.begin(), report.atoms.end(), [g](const AtomFinding& f) {
          return !f.homogeneous_set || f.gaps[g - 1].passed;
        });
    if (all) report.minimal_common_gap = g;
  }
  return report;
}

FunctionAnalysis analyze_function(const Coloring& f, std::size_t size_cap,
                                  const SearchScope& scope) {
  FunctionAnalysis out;
  out.size_cap = size_cap;
  for (std::size_t s = f.arity(); s <= size_cap; ++s) {
    auto found = find_canonical(f, s, scope);
    if (!found) break;
    out.largest = std::move(found);
  }
  return out;
}

}  // namespace canram
