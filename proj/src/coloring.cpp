#include "canram/coloring.hpp"

namespace canram {

namespace {

constexpr std::uint64_t kMaxTable = 200'000'000;

void check_shape(int arity, Element universe) {
  if (arity < 1) throw Error(Errc::kInvalidArgument, "arity must be >= 1");
  if (static_cast<Element>(arity) > universe) {
    throw Error(Errc::kUniverseTooSmall,
                "universe of size " + std::to_string(universe) +
                    " has no " + std::to_string(arity) + "-subsets");
  }
}

}  // namespace

Coloring::Coloring(int arity, Element universe, std::string description)
    : arity_(arity), universe_(universe), description_(std::move(description)) {
  check_shape(arity, universe);
}

Coloring Coloring::from_rule(int arity, Element universe, Rule rule,
                             std::string description) {
  Coloring c(arity, universe, std::move(description));
  c.rule_ = std::move(rule);
  return c;
}

Coloring Coloring::from_lex_table(int arity, Element universe,
                                  std::span<const ColorId> colors,
                                  std::string description) {
  check_shape(arity, universe);
  const std::uint64_t count = binomial(universe, arity);
  if (colors.size() != count) {
    throw Error(Errc::kSizeMismatch, "colour table must have C(N,n) entries");
  }
  std::vector<ColorId> colex(count);
  std::size_t k = 0;
  for_each_ksubset(universe, arity, [&](std::span<const Element> s) {
    colex[colex_rank(s)] = colors[k++];
  });
  return from_colex_table(arity, universe, std::move(colex),
                          std::move(description));
}

Coloring Coloring::from_colex_table(int arity, Element universe,
                                    std::vector<ColorId> colors,
                                    std::string description) {
  Coloring c(arity, universe, std::move(description));
  if (colors.size() != binomial(universe, arity)) {
    throw Error(Errc::kSizeMismatch, "colour table must have C(N,n) entries");
  }
  c.table_ = std::make_shared<const std::vector<ColorId>>(std::move(colors));
  return c;
}

ColorId Coloring::color_of(const KSubset& subset) const {
  if (subset.size() != static_cast<std::size_t>(arity_)) {
    throw Error(Errc::kSizeMismatch, "colour lookup of " + subset.to_string() +
                                         " needs an " + std::to_string(arity_) +
                                         "-subset");
  }
  if (!subset.empty() && subset.back() >= universe_) {
    throw Error(Errc::kNotInGroundSet,
                subset.to_string() + " leaves the universe");
  }
  return color(subset.span());
}

std::vector<ColorId> Coloring::lex_table() const {
  std::vector<ColorId> out;
  out.reserve(binomial(universe_, arity_));
  for_each_ksubset(universe_, arity_, [&](std::span<const Element> s) {
    out.push_back(color(s));
  });
  return out;
}

Coloring Coloring::materialized() const {
  if (tabulated()) return *this;
  if (binomial(universe_, arity_) > kMaxTable) {
    throw Error(Errc::kInvalidArgument, "colouring too large to tabulate");
  }
  std::vector<ColorId> colex(binomial(universe_, arity_));
  for_each_ksubset(universe_, arity_, [&](std::span<const Element> s) {
    colex[colex_rank(s)] = color(s);
  });
  return from_colex_table(arity_, universe_, std::move(colex), description_);
}

}  // namespace canram
