#include "canram/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "canram/derived_partition.hpp"
#include "canram/oracle.hpp"

namespace canram {

std::string Report::render(bool json) const {
  std::string out = json ? data.dump(2) : text;
  if (out.empty() || out.back() != '\n') out.push_back('\n');
  return out;
}

Report input_error_report(const std::string& message) {
  Report r;
  r.data["error"] = message;
  r.text = "error: " + message;
  r.exit_code = kExitInputError;
  return r;
}

Json to_json(const KSubset& s) { return Json(s.members()); }

Json to_json(const IndexSet& I) { return Json(I.members()); }

Json to_json(const PositionSet& p) { return Json(p.positions()); }

Json to_json(const CanonicityViolation& v) {
  Json j;
  j["first"] = to_json(v.first);
  j["second"] = to_json(v.second);
  j["failure"] = v.same_color ? "same colour, differ on I" : "agree on I, colours differ";
  return j;
}

Json to_json(const CascadeStep& step) {
  Json j;
  j["from"] = to_json(step.source);
  j["to"] = to_json(step.target);
  j["p"] = to_json(step.p);
  j["q"] = to_json(step.q);
  j["witness"] = to_json(step.witness);
  return j;
}

namespace {

Json input_echo(const Coloring& c) {
  Json j;
  j["source"] = c.description();
  j["n"] = c.arity();
  j["N"] = c.universe();
  return j;
}

std::string header(const std::string& what, const Coloring& c) {
  std::ostringstream os;
  os << what << " of " << c.description() << " (n=" << c.arity()
     << ", N=" << c.universe() << ")\n";
  return os.str();
}

std::string opt_to_string(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

Json to_json(const ClassVerdict& v) {
  Json j;
  j["class"] = v.index;
  j["members"] = to_json(v.members);
  j["trivial"] = v.trivially_canonical;
  j["canonical"] = v.canonical;
  j["violation"] = v.violation ? to_json(*v.violation) : Json(nullptr);
  return j;
}

Json atom_row(std::size_t index, const Atom& atom) {
  Json j;
  j["index"] = index;
  j["signature"] = atom.signature.hex();
  if (atom.signature.size() <= 64) j["bits"] = atom.signature.bit_string();
  j["members"] = atom.member_count;
  j["canonical_index_set"] = to_json(atom.canonical_index_set);
  j["first_member"] = to_json(atom.first_member);
  return j;
}

}  // namespace

Json to_json(const Theorem1Report& r) {
  Json j;
  j["n"] = r.n;
  j["set_size"] = r.set_size;
  j["max_gap"] = r.max_gap;
  Json atoms = Json::array();
  for (const auto& f : r.atoms) {
    Json a;
    a["index"] = f.atom_index;
    a["signature"] = f.signature.hex();
    a["members"] = f.member_count;
    a["canonical_index_set"] = to_json(f.canonical_index_set);
    a["homogeneous_set"] = f.homogeneous_set ? to_json(*f.homogeneous_set) : Json(nullptr);
    a["minimal_gap"] = f.minimal_gap ? Json(*f.minimal_gap) : Json(nullptr);
    Json gaps = Json::array();
    for (const auto& g : f.gaps) {
      Json gj;
      gj["gap"] = g.gap;
      gj["passed"] = g.passed;
      Json classes = Json::array();
      for (const auto& v : g.classes) classes.push_back(to_json(v));
      gj["classes"] = std::move(classes);
      gaps.push_back(std::move(gj));
    }
    a["gaps"] = std::move(gaps);
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  j["sets_found"] = std::count_if(r.atoms.begin(), r.atoms.end(),
                                  [](const AtomFinding& f) { return f.homogeneous_set.has_value(); });
  j["minimal_common_gap"] =
      r.minimal_common_gap ? Json(*r.minimal_common_gap) : Json(nullptr);
  j["passed"] = r.passed;
  return j;
}

Report cmd_atoms(const Coloring& c) {
  const DerivedPartition partition = derive_partition(c);
  const int n = c.arity();
  Report r;
  r.data["command"] = "atoms";
  r.data["input"] = input_echo(c);

  std::ostringstream os;
  os << header("atoms", c);
  os << std::setw(6) << "index" << "  " << std::setw(12) << "signature" << "  "
     << std::setw(9) << "members" << "  " << std::setw(10) << "I(Q)" << "  first\n";

  Json rows = Json::array();
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < partition.atoms.size(); ++i) {
    const Atom& a = partition.atoms[i];
    rows.push_back(atom_row(i, a));
    covered += a.member_count;
    os << std::setw(6) << i << "  " << std::setw(12) << a.signature.hex() << "  "
       << std::setw(9) << a.member_count << "  " << std::setw(10)
       << a.canonical_index_set.to_string() << "  " << a.first_member.to_string()
       << '\n';
  }
  r.data["atoms"] = std::move(rows);

  const std::uint64_t subsets = binomial(c.universe(), 2 * n);
  const std::uint64_t bound_log2 = atom_bound_log2(n);
  const bool within =
      bound_log2 >= 64 || partition.atoms.size() <= (std::uint64_t{1} << bound_log2);
  Json totals;
  totals["atoms"] = partition.atoms.size();
  totals["subsets"] = subsets;
  totals["covered"] = covered;
  totals["bound_log2"] = bound_log2;
  totals["within_bound"] = within;
  r.data["totals"] = std::move(totals);

  os << "total " << partition.atoms.size() << " atom(s) covering " << covered
     << " of " << subsets << " " << 2 * n << "-subsets; bound 2^" << bound_log2
     << (within ? " respected" : " VIOLATED") << '\n';
  r.text = os.str();
  r.exit_code = (covered == subsets && within) ? kExitOk : kExitFailed;
  return r;
}

Report cmd_verify(const Coloring& c, std::size_t set_size, std::size_t max_gap) {
  const DerivedPartition partition = derive_partition(c);
  const Theorem1Report result = verify_theorem1(c, partition, set_size, max_gap);

  // Independent re-check of every class verdict and of each minimal gap.
  std::size_t class_checks = 0, mismatches = 0;
  for (const auto& f : result.atoms) {
    if (!f.homogeneous_set) continue;
    for (const auto& g : f.gaps) {
      for (const auto& v : g.classes) {
        ++class_checks;
        const bool expect = v.members.size() < static_cast<std::size_t>(c.arity()) ||
                            oracle::literally_canonical(c, v.members.members(),
                                                        f.canonical_index_set);
        if (expect != v.canonical) ++mismatches;
      }
    }
    const auto table = oracle::min_gap_empirical(c, f.homogeneous_set->members(),
                                                 f.canonical_index_set);
    const bool agrees = table.minimal_gap <= max_gap
                            ? f.minimal_gap == table.minimal_gap
                            : !f.minimal_gap.has_value();
    if (!agrees) ++mismatches;
  }

  Report r;
  r.data["command"] = "verify";
  r.data["input"] = input_echo(c);
  r.data["result"] = to_json(result);
  Json cross;
  cross["class_checks"] = class_checks;
  cross["mismatches"] = mismatches;
  cross["agrees"] = mismatches == 0;
  r.data["oracle"] = std::move(cross);

  std::ostringstream os;
  os << header("verify", c);
  os << "set size " << set_size << ", gaps 1.." << max_gap << '\n';
  os << std::setw(6) << "atom" << "  " << std::setw(10) << "I(Q)" << "  "
     << std::setw(20) << "homogeneous set" << "  min gap\n";
  for (const auto& f : result.atoms) {
    os << std::setw(6) << f.atom_index << "  " << std::setw(10)
       << f.canonical_index_set.to_string() << "  " << std::setw(20)
       << (f.homogeneous_set ? f.homogeneous_set->to_string() : std::string("none"))
       << "  " << opt_to_string(f.minimal_gap) << '\n';
  }
  if (std::none_of(result.atoms.begin(), result.atoms.end(),
                   [](const AtomFinding& f) { return f.homogeneous_set.has_value(); })) {
    os << "no atom has a homogeneous set of size " << set_size << "; vacuous\n";
  }
  os << "minimal common gap: " << opt_to_string(result.minimal_common_gap) << '\n';
  os << "oracle cross-check: " << class_checks << " class verdicts, " << mismatches
     << " mismatch(es)\n";
  os << (result.passed && mismatches == 0 ? "PASS" : "FAIL") << '\n';
  r.text = os.str();
  r.exit_code = result.passed && mismatches == 0 ? kExitOk : kExitFailed;
  return r;
}

Report cmd_find(const Coloring& c, FindMode mode, std::size_t set_size) {
  Report r;
  r.data["command"] = "find";
  r.data["input"] = input_echo(c);
  r.data["mode"] = mode == FindMode::kHomogeneous ? "homogeneous" : "canonical";
  r.data["size"] = set_size;
  std::ostringstream os;
  os << header(mode == FindMode::kHomogeneous ? "homogeneous search"
                                              : "canonical search",
               c);
  if (mode == FindMode::kHomogeneous) {
    auto found = find_homogeneous(c, set_size);
    r.data["found"] = found ? to_json(*found) : Json(nullptr);
    os << "size " << set_size << ": " << (found ? found->to_string() : "absent") << '\n';
  } else {
    auto found = find_canonical(c, set_size);
    r.data["found"] = found ? to_json(found->set) : Json(nullptr);
    r.data["index_set"] = found ? to_json(found->index_set) : Json(nullptr);
    Json passing = Json::array();
    if (found) {
      for (const auto& I : found->passing) passing.push_back(to_json(I));
    }
    r.data["passing"] = std::move(passing);
    os << "size " << set_size << ": ";
    if (found) {
      os << found->set.to_string() << " is " << found->index_set.to_string()
         << "-canonical\n";
    } else {
      os << "absent\n";
    }
  }
  r.text = os.str();
  return r;
}

Report cmd_cascade(const Coloring& c, const CascadeOptions& options) {
  const int n = c.arity();
  const RankedSet X = RankedSet::range(c.universe());

  std::optional<AtomSignature> sig;
  if (options.atom_index) {
    auto parts = derive_partition(c);
    if (*options.atom_index >= parts.atoms.size()) {
      throw Error(Errc::kInvalidArgument,
                  "atom index " + std::to_string(*options.atom_index) +
                      " out of range (" + std::to_string(parts.atoms.size()) +
                      " atoms)");
    }
    sig = parts.atoms[*options.atom_index].signature;
  } else if (options.atom_of) {
    sig = signature_of(c, *options.atom_of);
  }

  std::vector<PositionPair> pairs = options.pairs;
  const bool full = pairs.empty() && options.full && sig.has_value();
  if (full) pairs = full_schedule(n, *sig).pairs;
  for (const auto& [p, q] : pairs) {
    if (p.n() != n || q.n() != n) {
      throw Error(Errc::kSizeMismatch, "schedule pairs must have arity n");
    }
  }
  if (options.start.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::kSizeMismatch, "start set must have n members");
  }
  if (n < 2) {
    throw Error(Errc::kArityOneUnsupported, "cascades need n >= 2");
  }
  X.require_reduced(options.start);

  Report r;
  r.data["command"] = "cascade";
  r.data["input"] = input_echo(c);
  r.data["atom"] = sig ? Json(sig->hex()) : Json(nullptr);
  r.data["canonical_index_set"] = sig ? to_json(canonical_index_set(*sig)) : Json(nullptr);
  r.data["schedule"] = full ? "full" : "pairs";
  r.data["length"] = pairs.size();
  r.data["start"] = to_json(options.start);

  std::ostringstream os;
  os << header("cascade", c);
  os << (full ? "full" : "explicit") << " schedule of length " << pairs.size()
     << " from " << options.start.to_string() << '\n';

  const std::uint64_t required = saturating_pow(n, 2 * pairs.size());
  const std::size_t d0 = sparsity(X, options.start);
  r.data["required_sparsity"] = required;
  r.data["start_sparsity"] = d0;
  if (d0 < required) {
    r.data["feasible"] = false;
    r.data["transcript"] = Json::array();
    os << "infeasible: d(x) = " << d0 << " < n^" << 2 * pairs.size() << " = "
       << required << '\n';
    r.text = os.str();
    r.exit_code = kExitFailed;
    return r;
  }

  Cascade cascade;
  try {
    cascade = build_cascade(X, options.start, pairs);
  } catch (const Error& e) {
    if (e.code() != Errc::kInsufficientHeadroom) throw;
    r.data["feasible"] = false;
    r.data["transcript"] = Json::array();
    r.data["error"] = e.what();
    os << "infeasible: " << e.what() << '\n';
    r.text = os.str();
    r.exit_code = kExitFailed;
    return r;
  }
  r.data["feasible"] = true;
  r.data["level"] = cascade.level;

  bool all_ok = true;
  const long long t = static_cast<long long>(cascade.level);
  const std::uint64_t top = saturating_pow(n, cascade.level);
  Json transcript = Json::array();
  std::uint64_t reach_sum = 0;
  for (std::size_t i = 0; i < cascade.steps.size(); ++i) {
    const auto& step = cascade.steps[i];
    const long long e = t - 2 * static_cast<long long>(i);
    Json j = to_json(step);
    j["step"] = i;
    const std::uint64_t d = sparsity(X, step.source);
    const std::uint64_t rr = reach(X, step.source, step.target);
    const std::uint64_t d_bound = saturating_pow(n, e);
    const std::uint64_t r_bound = saturating_pow(n, e - 1);
    Json checks;
    checks["sparsity"] = {{"value", d}, {"bound", d_bound}, {"ok", d >= d_bound}};
    checks["reach"] = {{"value", rr}, {"bound", r_bound}, {"ok", rr <= r_bound}};
    const bool witness_ok = !check_step(X, step).has_value();
    checks["witness"] = witness_ok;
    bool step_ok = d >= d_bound && rr <= r_bound && witness_ok;
    if (sig) {
      const bool related_ok = sig->relates(step.p, step.q);
      const bool in_atom = signature_of(c, step.witness) == *sig;
      checks["pair_in_atom"] = related_ok;
      checks["witness_in_atom"] = in_atom;
      step_ok = step_ok && related_ok && in_atom;
    }
    // Reach from x_0 is gated on the triangle-inequality sum of the step
    // bounds. The sharper r < n^t/2 fails at n = 2 (one step already
    // reaches n^{t-1} = n^t/2), so it is reported but not gated.
    const KSubset& x0 = cascade.sets.front();
    const std::uint64_t reach0 = reach(X, x0, step.target);
    reach_sum = reach_sum > UINT64_MAX - r_bound ? UINT64_MAX : reach_sum + r_bound;
    const bool reach0_ok = reach0 <= reach_sum;
    const bool below_half = top == UINT64_MAX || 2 * reach0 < top;
    const bool shed_ok = x0.intersection(step.target).is_subset_of(x0.intersection(step.source));
    checks["reach_from_start"] = {{"value", reach0},
                                  {"bound", reach_sum},
                                  {"ok", reach0_ok},
                                  {"below_half_n_to_t", below_half}};
    checks["shedding"] = shed_ok;
    step_ok = step_ok && reach0_ok && shed_ok;
    j["checks"] = std::move(checks);
    j["ok"] = step_ok;
    all_ok = all_ok && step_ok;
    transcript.push_back(std::move(j));

    os << "step " << i << ": " << step.source.to_string() << " -> "
       << step.target.to_string() << " via p=" << step.p.to_string()
       << " q=" << step.q.to_string() << " z=" << step.witness.to_string()
       << "  d=" << d << ">=" << d_bound << " r=" << rr << "<=" << r_bound
       << (step_ok ? "  ok" : "  FAILED") << '\n';
  }
  r.data["transcript"] = std::move(transcript);
  r.data["final"] = to_json(cascade.sets.back());

  if (full) {
    const IndexSet I = canonical_index_set(*sig);
    std::vector<Element> expect;
    for (int i : I.members()) expect.push_back(options.start[i]);
    const KSubset kept = options.start.intersection(cascade.sets.back());
    const bool ok = kept == KSubset::unchecked(expect);
    r.data["extrusion"] = {{"kept", to_json(kept)}, {"expected", Json(expect)}, {"ok", ok}};
    all_ok = all_ok && ok;
    os << "kept " << kept.to_string() << ", I(Q) positions "
       << KSubset::unchecked(expect).to_string() << (ok ? "  ok" : "  FAILED") << '\n';
  }
  r.data["passed"] = all_ok;
  os << (all_ok ? "PASS" : "FAIL") << '\n';
  r.text = os.str();
  r.exit_code = all_ok ? kExitOk : kExitFailed;
  return r;
}

Report cmd_analyze_fn(const Coloring& f, std::size_t size_cap,
                      const std::vector<Element>& pool) {
  const FunctionAnalysis result = analyze_function(f, size_cap, SearchScope{pool});
  Report r;
  r.data["command"] = "analyze-fn";
  r.data["input"] = input_echo(f);
  r.data["size_cap"] = size_cap;
  r.data["pool"] = pool.empty() ? Json(nullptr) : Json(pool);

  std::string classification = "none";
  if (result.upward_constant()) classification = "upward-constant";
  if (result.selectively_upward_injective()) {
    classification = "selectively-upward-injective";
  }
  r.data["classification"] = classification;
  if (result.largest) {
    r.data["set"] = to_json(result.largest->set);
    r.data["size"] = result.largest->set.size();
    r.data["index_set"] = to_json(result.largest->index_set);
    Json passing = Json::array();
    for (const auto& I : result.largest->passing) passing.push_back(to_json(I));
    r.data["passing"] = std::move(passing);
  } else {
    r.data["set"] = nullptr;
  }

  std::ostringstream os;
  os << header("function analysis", f);
  if (result.largest) {
    os << "largest set " << result.largest->set.to_string() << " (size "
       << result.largest->set.size() << ", cap " << size_cap << ")\n";
    if (result.upward_constant()) {
      os << "upward constant\n";
    } else {
      os << "selectively upward injective w.r.t. "
         << result.largest->index_set.to_string() << '\n';
    }
  } else {
    os << "no set of size >= n within the cap\n";
  }
  r.text = os.str();
  return r;
}

}  // namespace canram
