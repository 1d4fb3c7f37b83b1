#include <doctest.h>

#include <random>

#include "canram/canonicity.hpp"
#include "canram/coloring_io.hpp"
#include "canram/oracle.hpp"
#include "helpers.hpp"

using namespace canram;

namespace {

Coloring gen(const char* spec, int n, Element N) {
  return make_coloring(parse_generator(spec), n, N);
}

Coloring random_coloring(std::mt19937_64& rng, int n, Element N, std::uint64_t colors) {
  return make_coloring(GeneratorSpec{"random", {rng(), colors}}, n, N);
}

}  // namespace

TEST_CASE("is_homogeneous") {
  CHECK(is_homogeneous(gen("constant", 2, 10), KSubset{1, 4, 6, 9}));
  CHECK_FALSE(is_homogeneous(gen("injective", 2, 10), KSubset{1, 4, 6}));
  CHECK(is_homogeneous(gen("sum-mod:2", 2, 10), KSubset{0, 2, 4, 6}));
  CHECK_ERRC(is_homogeneous(gen("min", 2, 10), KSubset{3}), Errc::kSizeMismatch);
}

TEST_CASE("check_canonical") {
  CHECK(check_canonical(gen("min", 2, 12), KSubset{2, 5, 8, 11}, IndexSet(2, {0})));
  CHECK(check_canonical(gen("constant", 2, 12), KSubset{2, 5, 8}, IndexSet::empty_set(2)));
  CHECK(check_canonical(gen("sidon-sum", 2, 12), KSubset{1, 2, 4, 8}, IndexSet::full(2)));

  const auto bad = check_canonical(gen("min", 2, 12), KSubset{2, 5, 8, 11}, IndexSet(2, {1}));
  CHECK_FALSE(bad);
  REQUIRE(bad.violation.has_value());
  const auto& v = *bad.violation;
  CHECK(v.same_color == (gen("min", 2, 12).color_of(v.first) ==
                         gen("min", 2, 12).color_of(v.second)));
  CHECK(v.same_color != (v.first[1] == v.second[1]));

  CHECK_ERRC(check_canonical(gen("min", 2, 12), KSubset{2}, IndexSet(2, {0})),
             Errc::kSizeMismatch);
}

TEST_CASE("canonicity_report") {
  const auto constant = canonicity_report(gen("constant", 2, 6), KSubset{1, 4});
  CHECK(constant.passing.size() == 4);
  CHECK(constant.rejected.empty());

  const auto min = canonicity_report(gen("min", 2, 12), KSubset{2, 5, 8, 11});
  REQUIRE(min.passing.size() == 1);
  CHECK(min.passing[0] == IndexSet(2, {0}));
  CHECK(min.rejected.size() == 3);

  const auto inj = canonicity_report(gen("injective", 3, 8), KSubset{0, 2, 3, 7});
  REQUIRE(inj.passing.size() == 1);
  CHECK(inj.passing[0] == IndexSet::full(3));
}

TEST_CASE("empty I matches homogeneity; restriction closure") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2;
    const Coloring c = random_coloring(rng, n, 9, 1 + rng() % 3);
    for (const auto& X : enumerate_ksubsets(9, 4)) {
      CHECK(static_cast<bool>(check_canonical(c, X, IndexSet::empty_set(n))) ==
            is_homogeneous(c, X));
      for (const auto& I : all_index_sets_ordered(n)) {
        if (!check_canonical(c, X, I)) continue;
        for (Element drop : X.members()) {
          CHECK(check_canonical(c, X.without(drop), I));
        }
      }
    }
  }
}

TEST_CASE("find_homogeneous") {
  CHECK(find_homogeneous(gen("constant", 2, 10), 5) == KSubset{0, 1, 2, 3, 4});
  CHECK(find_homogeneous(gen("sum-mod:2", 1, 10), 5) == KSubset{0, 2, 4, 6, 8});
  CHECK_FALSE(find_homogeneous(gen("injective", 2, 10), 3).has_value());
  CHECK(find_homogeneous(gen("sum-mod:2", 1, 10), 5, ColorId{1}) == KSubset{1, 3, 5, 7, 9});
  CHECK_FALSE(find_homogeneous(gen("constant", 2, 4), 5).has_value());
  CHECK(find_homogeneous(gen("min", 2, 30), 3, std::nullopt, SearchScope{{5, 9, 20, 21}}) ==
        std::nullopt);
}

TEST_CASE("find_homogeneous returns the lexicographically first set") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Coloring c = random_coloring(rng, 2, 8, 2);
    std::optional<KSubset> first;
    for (const auto& X : enumerate_ksubsets(8, 4)) {
      if (is_homogeneous(c, X)) {
        first = X;
        break;
      }
    }
    CHECK(find_homogeneous(c, 4) == first);
  }
}

TEST_CASE("find_canonical") {
  const auto min = find_canonical(gen("min", 2, 8), 4);
  REQUIRE(min.has_value());
  CHECK(min->set == KSubset{0, 1, 2, 3});
  CHECK(min->index_set == IndexSet(2, {0}));
  bool listed = false;
  for (const auto& e : oracle::exhaustive_canonical(gen("min", 2, 8), 4)) {
    listed = listed || (e.set == min->set && e.index_set == min->index_set);
  }
  CHECK(listed);

  const auto constant = find_canonical(gen("constant", 3, 6), 3);
  REQUIRE(constant.has_value());
  CHECK(constant->set == KSubset{0, 1, 2});
  CHECK(constant->index_set == IndexSet::empty_set(3));
  CHECK(constant->passing.size() == 8);
}

TEST_CASE("every 1-ary colouring of [5] has a canonical 3-set") {
  // All colourings up to renaming are covered by the 5^5 tables.
  std::vector<ColorId> table(5, 0);
  std::size_t absent = 0;
  for (int code = 0; code < 3125; ++code) {
    int rest = code;
    for (auto& t : table) {
      t = rest % 5;
      rest /= 5;
    }
    if (!find_canonical(Coloring::from_lex_table(1, 5, table), 3)) ++absent;
  }
  CHECK(absent == 0);
}

TEST_CASE("find_canonical agrees with the oracle for n<=2, N<=9, s<=5") {
  std::size_t instances = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& g : standard_generators(n)) {
      for (Element N = static_cast<Element>(n); N <= 9; ++N) {
        const Coloring c = make_coloring(g, n, N);
        for (std::size_t s = n; s <= 5 && s <= N; ++s) {
          const auto found = find_canonical(c, s);
          const auto list = oracle::exhaustive_canonical(c, s);
          if (!found) {
            CHECK(list.empty());
          } else {
            REQUIRE_FALSE(list.empty());
            CHECK(list.front().set == found->set);
            std::size_t passing = 0;
            for (const auto& e : list) passing += e.set == found->set;
            CHECK(passing == found->passing.size());
          }
          ++instances;
        }
      }
    }
  }
  CHECK(instances > 400);
}

TEST_CASE("decompose") {
  const KSubset X = KSubset(std::vector<Element>{10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21});
  const auto d = decompose(X, 3);
  REQUIRE(d.classes.size() == 4);
  CHECK(d.classes[0] == KSubset{10, 11, 12});
  CHECK(d.classes[1] == KSubset{13, 16, 19});
  CHECK(d.classes[2] == KSubset{14, 17, 20});
  CHECK(d.classes[3] == KSubset{15, 18, 21});

  const auto one = decompose(KSubset{3, 5, 8}, 1);
  REQUIRE(one.classes.size() == 2);
  CHECK(one.classes[0] == KSubset{3});
  CHECK(one.classes[1] == KSubset{5, 8});

  CHECK_ERRC(decompose(X, 0), Errc::kInvalidArgument);
}

TEST_CASE("decomposition classes are sparse inside X") {
  const RankedSet ground = RankedSet::range(40);
  const KSubset X = KSubset(std::vector<Element>(ground.elements().begin(),
                                                 ground.elements().end()));
  for (std::size_t g = 1; g <= 6; ++g) {
    const auto d = decompose(X, g);
    std::size_t covered = 0;
    for (const auto& cls : d.classes) covered += cls.size();
    CHECK(covered == X.size());
    for (std::size_t j = 1; j < d.classes.size(); ++j) {
      for (const auto& x : enumerate_ksubsets(40, 2)) {
        if (x.is_subset_of(d.classes[j])) CHECK(sparsity(ground, x) >= g);
      }
    }
  }
}

TEST_CASE("verify_theorem1") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = verify_theorem1(random_coloring(rng, 1, 20, 1 + rng() % 20), 4, 1);
    CHECK(r.passed);
    CHECK(r.minimal_common_gap == std::size_t{1});
  }

  const auto constant = verify_theorem1(gen("constant", 2, 8), 6, 1);
  CHECK(constant.passed);
  REQUIRE(constant.atoms.size() == 1);
  CHECK(constant.atoms[0].canonical_index_set == IndexSet::empty_set(2));

  const auto min = verify_theorem1(gen("min", 2, 14), 6, 3);
  CHECK(min.passed);
  REQUIRE(min.minimal_common_gap.has_value());
  CHECK(*min.minimal_common_gap <= 3);

  CHECK_ERRC(verify_theorem1(gen("min", 2, 14), 3, 3), Errc::kInvalidArgument);
}

TEST_CASE("analyze_function") {
  const auto proj = analyze_function(gen("projection:1", 2, 8), 8);
  REQUIRE(proj.largest.has_value());
  CHECK(proj.largest->set.size() == 8);
  CHECK(proj.largest->index_set == IndexSet(2, {1}));
  CHECK(proj.selectively_upward_injective());

  const auto constant = analyze_function(gen("constant", 2, 8), 8);
  REQUIRE(constant.largest.has_value());
  CHECK(constant.largest->set.size() == 8);
  CHECK(constant.upward_constant());

  const auto sidon = analyze_function(gen("sidon-sum", 2, 17), 5, SearchScope{{1, 2, 4, 8, 16}});
  REQUIRE(sidon.largest.has_value());
  CHECK(sidon.largest->set == KSubset{1, 2, 4, 8, 16});
  CHECK(sidon.largest->index_set == IndexSet::full(2));
}
