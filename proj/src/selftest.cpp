// Oracle cross-checks at pinned sizes, exposed as the `selftest` command.

#include <random>
#include <sstream>

#include "canram/coloring_io.hpp"
#include "canram/commands.hpp"
#include "canram/oracle.hpp"

namespace canram {

namespace {

struct Suite {
  explicit Suite(std::string label) : name(std::move(label)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }
};

Suite atoms_partition() {
  Suite s{"atom-partition n=2 N=8"};
  for (const auto& g : standard_generators(2)) {
    const Coloring c = make_coloring(g, 2, 8);
    const auto parts = derive_partition(c);
    std::uint64_t covered = 0;
    bool members_match = true;
    for (const auto& a : parts.atoms) {
      covered += a.member_count;
      for (const auto& z : *a.members) {
        members_match = members_match && signature_of(c, z) == a.signature;
      }
    }
    s.record(covered == binomial(8, 4) && members_match &&
                 parts.atoms.size() <= (1U << atom_bound_log2(2)),
             g.to_string());
  }
  return s;
}

Suite search_vs_oracle() {
  Suite s{"find_canonical vs oracle n<=2 N<=7 s<=4"};
  for (int n = 1; n <= 2; ++n) {
    for (const auto& g : standard_generators(n)) {
      for (Element N = n; N <= 7; ++N) {
        const Coloring c = make_coloring(g, n, N);
        for (std::size_t size = n; size <= 4 && size <= N; ++size) {
          const auto found = find_canonical(c, size);
          const auto list = oracle::exhaustive_canonical(c, size);
          bool ok;
          if (!found) {
            ok = list.empty();
          } else {
            ok = !list.empty() && list.front().set == found->set;
            std::size_t matches = 0;
            for (const auto& e : list) {
              if (e.set == found->set) ++matches;
            }
            ok = ok && matches == found->passing.size();
          }
          s.record(ok, g.to_string() + " N=" + std::to_string(N) +
                           " s=" + std::to_string(size));
        }
      }
    }
  }
  return s;
}

Suite fact1_q_equiv() {
  Suite s{"q-relation equals colour equality n=2 N=7"};
  for (const auto& g : standard_generators(2)) {
    const Coloring c = make_coloring(g, 2, 7);
    const auto parts = derive_partition(c);
    std::vector<Element> universe{0, 1, 2, 3, 4, 5, 6};
    for (std::size_t size = 4; size <= 5; ++size) {
      for (const auto& X : oracle::subsets_of_size(universe, size)) {
        const auto sig = signature_of(c, KSubset::unchecked(oracle::subsets_of_size(X, 4).front()));
        bool homogeneous = true;
        for (const auto& z : oracle::subsets_of_size(X, 4)) {
          homogeneous = homogeneous && signature_of(c, KSubset::unchecked(z)) == sig;
        }
        if (!homogeneous) continue;
        const Atom& atom = parts.atoms[*parts.find(sig)];
        bool ok = true;
        for (const auto& x : oracle::subsets_of_size(X, 2)) {
          for (const auto& y : oracle::subsets_of_size(X, 2)) {
            const bool linked = oracle::q_equiv(c, atom, X, x, y).has_value();
            ok = ok && linked == (c.color(x) == c.color(y));
          }
        }
        s.record(ok, g.to_string() + " X=" + KSubset::unchecked(X).to_string());
      }
    }
  }
  return s;
}

Suite step_checks() {
  Suite s{"cascade step post-conditions n=2"};
  std::mt19937_64 rng(20240611);
  const RankedSet X = RankedSet::range(400);
  const auto sets = all_position_sets(2);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned level = 1 + trial % 2;
    const Element need = level == 1 ? 4 : 16;
    const Element a = need + rng() % 100;
    const Element b = a + need + rng() % 100;
    const KSubset x{a, b};
    const auto& p = sets[rng() % sets.size()];
    const auto& q = sets[rng() % sets.size()];
    const CascadeStep step = step_construct(X, x, p, q, level);
    const std::uint64_t lo = level == 1 ? 1 : 4;
    const std::uint64_t hi = level == 1 ? 2 : 8;
    const bool ok = !check_step(X, step) && step.witness.size() == 4 &&
                    sparsity(X, step.witness) >= lo && reach(X, x, step.witness) <= hi &&
                    sparsity(X, step.target) >= lo && reach(X, x, step.target) <= hi;
    s.record(ok, "trial " + std::to_string(trial));
  }
  return s;
}

Suite arity_one_verify() {
  Suite s{"n=1 verification at gap 1"};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratorSpec g{"random", {rng() % 1000, 1 + rng() % 20}};
    const Coloring c = make_coloring(g, 1, 20);
    const auto report = verify_theorem1(c, 4, 1);
    s.record(report.passed && report.minimal_common_gap == std::size_t{1},
             g.to_string());
  }
  return s;
}

}  // namespace

Report cmd_selftest() {
  std::vector<Suite> suites;
  suites.push_back(atoms_partition());
  suites.push_back(search_vs_oracle());
  suites.push_back(fact1_q_equiv());
  suites.push_back(step_checks());
  suites.push_back(arity_one_verify());

  Report r;
  r.data["command"] = "selftest";
  Json list = Json::array();
  std::ostringstream os;
  os << "selftest\n";
  bool all = true;
  for (const auto& s : suites) {
    Json j;
    j["suite"] = s.name;
    j["cases"] = s.cases;
    j["failures"] = s.failures;
    j["first_failure"] = s.failures ? Json(s.first_failure) : Json(nullptr);
    list.push_back(std::move(j));
    all = all && s.failures == 0 && s.cases > 0;
    os << (s.failures == 0 ? "PASS " : "FAIL ") << s.name << " (" << s.cases
       << " cases";
    if (s.failures) os << ", " << s.failures << " failed, first: " << s.first_failure;
    os << ")\n";
  }
  r.data["suites"] = std::move(list);
  r.data["passed"] = all;
  r.text = os.str();
  r.exit_code = all ? kExitOk : kExitFailed;
  return r;
}

}  // namespace canram
