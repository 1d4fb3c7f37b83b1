#pragma once

// Command surface shared by the CLI, the python module and the acceptance
// suite. Every command returns a Report: a JSON tree with fixed key order
// plus a plain-text rendering, and the process exit status.
//
// Exit status: 0 success or verified, 1 verification failed, 2 input error.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "canram/canonicity.hpp"
#include "canram/cascade.hpp"
#include "canram/coloring.hpp"

namespace canram {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInputError = 2;

struct Report {
  Json data;
  std::string text;
  int exit_code = kExitOk;

  /// JSON (two-space indent) or the table rendering, newline-terminated.
  std::string render(bool json) const;
};

Report cmd_atoms(const Coloring& c);

Report cmd_verify(const Coloring& c, std::size_t set_size, std::size_t max_gap);

enum class FindMode { kHomogeneous, kCanonical };

Report cmd_find(const Coloring& c, FindMode mode, std::size_t set_size);

struct CascadeOptions {
  std::optional<std::size_t> atom_index;  // index into atoms(c)
  std::optional<KSubset> atom_of;         // use the atom of this 2n-subset
  KSubset start;
  /// Explicit pairs; when empty and `full` is set, the atom's full schedule.
  std::vector<PositionPair> pairs;
  bool full = true;
};

Report cmd_cascade(const Coloring& c, const CascadeOptions& options);

Report cmd_analyze_fn(const Coloring& f, std::size_t size_cap,
                      const std::vector<Element>& pool = {});

Report cmd_selftest();

/// Wraps an input error as a report with exit status 2.
Report input_error_report(const std::string& message);

// JSON helpers used across reports.
Json to_json(const KSubset& s);
Json to_json(const IndexSet& I);
Json to_json(const PositionSet& p);
Json to_json(const CanonicityViolation& v);
Json to_json(const Theorem1Report& r);
Json to_json(const CascadeStep& step);

}  // namespace canram
