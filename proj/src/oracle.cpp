#include "canram/oracle.hpp"

namespace canram::oracle {

namespace {

void collect(const std::vector<Element>& items, std::size_t k, std::size_t from,
             std::vector<Element>& current,
             std::vector<std::vector<Element>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < items.size(); ++i) {
    current.push_back(items[i]);
    collect(items, k, i + 1, current, out);
    current.pop_back();
  }
}

ColorId color_of(const Coloring& c, const std::vector<Element>& s) {
  return c.color(std::span<const Element>(s.data(), s.size()));
}

bool agree_on(const std::vector<Element>& a, const std::vector<Element>& b,
              const IndexSet& I) {
  for (int i = 0; i < I.n(); ++i) {
    if (I.contains(i) && a[i] != b[i]) return false;
  }
  return true;
}

bool contains(const std::vector<Element>& v, Element e) {
  for (Element x : v) {
    if (x == e) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<Element>> subsets_of_size(const std::vector<Element>& items,
                                                  std::size_t k) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> current;
  collect(items, k, 0, current, out);
  return out;
}

bool literally_canonical(const Coloring& c, const std::vector<Element>& X,
                         const IndexSet& I) {
  const auto subsets = subsets_of_size(X, c.arity());
  for (const auto& p : subsets) {
    for (const auto& q : subsets) {
      const bool equivalent = color_of(c, p) == color_of(c, q);
      if (equivalent != agree_on(p, q, I)) return false;
    }
  }
  return true;
}

std::vector<CanonicalEntry> exhaustive_canonical(const Coloring& c, std::size_t size) {
  std::vector<Element> universe;
  for (Element e = 0; e < c.universe(); ++e) universe.push_back(e);
  const int n = c.arity();
  std::vector<CanonicalEntry> out;
  for (const auto& X : subsets_of_size(universe, size)) {
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      IndexSet I(n, mask);
      if (literally_canonical(c, X, I)) {
        out.push_back({KSubset::unchecked(X), I});
      }
    }
  }
  return out;
}

std::optional<QWitness> q_equiv(const Coloring& c, const Atom& atom,
                                const std::vector<Element>& X,
                                const std::vector<Element>& x,
                                const std::vector<Element>& y) {
  const std::size_t n = c.arity();
  if (X.size() < 2 * n) {
    throw Error(Errc::kSizeMismatch, "q_equiv needs |X| >= 2n");
  }
  const std::vector<Element> rep = atom.first_member.members();
  for (const auto& z : subsets_of_size(X, 2 * n)) {
    bool covers = true;
    for (Element e : x) covers = covers && contains(z, e);
    for (Element e : y) covers = covers && contains(z, e);
    if (!covers) continue;

    // p = {|a ∩ z| : a ∈ x}: the number of members of z below a
    std::vector<int> p, q;
    for (Element a : x) {
      int below = 0;
      for (Element b : z) below += b < a;
      p.push_back(below);
    }
    for (Element a : y) {
      int below = 0;
      for (Element b : z) below += b < a;
      q.push_back(below);
    }
    std::vector<Element> rep_p, rep_q;
    for (int i : p) rep_p.push_back(rep[i]);
    for (int i : q) rep_q.push_back(rep[i]);
    if (color_of(c, rep_p) == color_of(c, rep_q)) {
      return QWitness{KSubset::unchecked(z), p, q};
    }
  }
  return std::nullopt;
}

GapTable min_gap_empirical(const Coloring& c, const std::vector<Element>& X,
                           const IndexSet& I) {
  GapTable table;
  const std::size_t n = c.arity();
  for (std::size_t g = 1; g <= std::max<std::size_t>(X.size(), 1); ++g) {
    std::vector<bool> row;
    bool all = true;
    for (std::size_t j = 1; j <= g; ++j) {
      std::vector<Element> cls;
      for (std::size_t i = 1; j - 1 + g * i < X.size(); ++i) {
        cls.push_back(X[j - 1 + g * i]);
      }
      const bool ok = cls.size() < n || literally_canonical(c, cls, I);
      row.push_back(ok);
      all = all && ok;
    }
    table.verdicts.push_back(std::move(row));
    if (all) {
      table.minimal_gap = g;
      break;
    }
  }
  return table;
}

}  // namespace canram::oracle
