#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "canram/combinatorics.hpp"

namespace canram {

/// Total map from the n-subsets of {0..N-1} to colour ids. Equal ids are
/// the equivalence of the underlying partition.
///
/// Either tabulated (one entry per subset, stored in colex order) or backed
/// by a rule evaluated on demand; the rule form lets generators cover ground
/// sets far too large to tabulate.
class Coloring {
 public:
  using Rule = std::function<ColorId(std::span<const Element>)>;

  static Coloring from_rule(int arity, Element universe, Rule rule,
                            std::string description = "rule");

  /// colors[k] is the colour of the k-th n-subset in lexicographic order.
  static Coloring from_lex_table(int arity, Element universe,
                                 std::span<const ColorId> colors,
                                 std::string description = "table");

  /// colors[k] is the colour of the subset with colex rank k.
  static Coloring from_colex_table(int arity, Element universe,
                                   std::vector<ColorId> colors,
                                   std::string description = "table");

  int arity() const noexcept { return arity_; }
  Element universe() const noexcept { return universe_; }
  const std::string& description() const noexcept { return description_; }
  bool tabulated() const noexcept { return table_ != nullptr; }

  /// Hot path: no validation of the subset.
  ColorId color(std::span<const Element> subset) const {
    return table_ ? (*table_)[colex_rank(subset)] : rule_(subset);
  }

  /// Validated lookup.
  ColorId color_of(const KSubset& subset) const;

  /// Colours of all n-subsets in lexicographic order.
  std::vector<ColorId> lex_table() const;

  Coloring materialized() const;

 private:
  Coloring(int arity, Element universe, std::string description);

  int arity_;
  Element universe_;
  std::string description_;
  std::shared_ptr<const std::vector<ColorId>> table_;
  Rule rule_;
};

}  // namespace canram
