#include "canram/cascade.hpp"

#include <algorithm>
#include <stdexcept>

namespace canram {

namespace {

int require_arity(std::size_t n) {
  if (n < 2) {
    throw Error(Errc::kArityOneUnsupported,
                "cascades need n >= 2; for n = 1 every homogeneous set of the "
                "atom partition is already canonical with gap 1");
  }
  return static_cast<int>(n);
}

// n^e for a possibly negative exponent; negative exponents give 0 (the
// bound is below 1, so only 0 satisfies "<=" and everything satisfies ">=").
std::uint64_t power_or_zero(std::uint64_t n, long long e) {
  return e < 0 ? 0 : saturating_pow(n, static_cast<std::uint64_t>(e));
}

}  // namespace

std::optional<std::string> check_step(const RankedSet& X, const CascadeStep& step) {
  const std::size_t n = step.source.size();
  const auto& z = step.witness;
  if (z.size() != 2 * n) return "witness " + z.to_string() + " is not a 2n-subset";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!X.contains(z[i])) return "witness member " + std::to_string(z[i]) + " not in X";
    if (i > 0 && z[i - 1] >= z[i]) return "witness is not strictly increasing";
  }
  if (step.p.n() != static_cast<int>(n) || step.q.n() != static_cast<int>(n)) {
    return std::string("position sets do not match the arity");
  }
  if (step.p.select(z.span()) != step.source) {
    return "p-selection of " + z.to_string() + " is not " + step.source.to_string();
  }
  if (step.q.select(z.span()) != step.target) {
    return "q-selection of " + z.to_string() + " is not " + step.target.to_string();
  }
  return std::nullopt;
}

std::optional<std::string> check_cascade(const RankedSet& X, const Cascade& cascade) {
  if (cascade.sets.empty()) return "cascade has no sets";
  if (cascade.sets.size() != cascade.steps.size() + 1) {
    return std::string("cascade needs one step per consecutive pair");
  }
  const std::uint64_t n = cascade.sets.front().size();
  const long long t = static_cast<long long>(cascade.level);
  for (std::size_t i = 0; i + 1 < cascade.sets.size(); ++i) {
    const auto& xi = cascade.sets[i];
    const auto& next = cascade.sets[i + 1];
    const long long e = t - 2 * static_cast<long long>(i);
    const std::uint64_t d = sparsity(X, xi);
    if (d < power_or_zero(n, e)) {
      return "d(x_" + std::to_string(i) + ") = " + std::to_string(d) +
             " below n^" + std::to_string(e);
    }
    const std::uint64_t r = reach(X, xi, next);
    if (r > power_or_zero(n, e - 1)) {
      return "r(x_" + std::to_string(i) + ", x_" + std::to_string(i + 1) +
             ") = " + std::to_string(r) + " above n^" + std::to_string(e - 1);
    }
    const auto& step = cascade.steps[i];
    if (step.source != xi || step.target != next) {
      return "step " + std::to_string(i) + " does not link x_" +
             std::to_string(i) + " to x_" + std::to_string(i + 1);
    }
    if (auto err = check_step(X, step)) {
      return "step " + std::to_string(i) + ": " + *err;
    }
  }
  return std::nullopt;
}

std::uint64_t Schedule::required_sparsity() const {
  return saturating_pow(static_cast<std::uint64_t>(n), 2 * pairs.size());
}

bool Schedule::feasible_for(const RankedSet& X) const {
  return required_sparsity() < X.size();
}

CascadeStep step_construct(const RankedSet& X, const KSubset& x,
                           const PositionSet& p, const PositionSet& q,
                           unsigned level) {
  const int n = require_arity(x.size());
  if (p.n() != n || q.n() != n) {
    throw Error(Errc::kSizeMismatch, "position sets must match |x|");
  }
  if (level < 1) throw Error(Errc::kInvalidArgument, "step level must be >= 1");
  X.require_reduced(x);

  const std::uint64_t need = saturating_pow(n, 2ULL * level);
  const std::size_t d = sparsity(X, x);
  if (d < need) {
    throw Error(Errc::kInsufficientSparsity,
                "d(x) = " + std::to_string(d) + " < n^{2l} = " +
                    std::to_string(need) + " for x = " + x.to_string());
  }
  const std::uint64_t unit = saturating_pow(n, 2ULL * level - 2);

  std::vector<std::uint64_t> j(n);
  for (int i = 0; i < n; ++i) j[i] = X.rank(x[i]);

  const unsigned __int128 top =
      static_cast<unsigned __int128>(unit) * (2 * n - 1 - p[n - 1]) + j[n - 1];
  if (top >= X.size()) {
    throw Error(Errc::kInsufficientHeadroom,
                "z needs rank " + std::to_string(static_cast<std::uint64_t>(top)) +
                    " but X has only " + std::to_string(X.size()) + " elements");
  }

  std::vector<Element> z;
  z.reserve(2 * n);
  for (int k = 1; k <= p[0]; ++k) z.push_back(X[k * unit]);
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k <= p[i] - p[i - 1] - 1; ++k) z.push_back(X[j[i - 1] + k * unit]);
  }
  for (int k = 0; k <= 2 * n - 1 - p[n - 1]; ++k) z.push_back(X[j[n - 1] + k * unit]);

  KSubset witness(std::move(z));
  CascadeStep step{x, q.select(witness.span()), p, q, std::move(witness)};
  if (auto err = check_step(X, step)) {
    throw std::logic_error("step construction broke its witness: " + *err);
  }
  return step;
}

Cascade build_cascade(const RankedSet& X, const KSubset& x,
                      const std::vector<PositionPair>& schedule) {
  require_arity(x.size());
  X.require_reduced(x);
  Cascade cascade;
  cascade.level = 2 * schedule.size();
  cascade.sets.push_back(x);
  const unsigned l = static_cast<unsigned>(schedule.size());
  for (unsigned i = 0; i < l; ++i) {
    const auto& [p, q] = schedule[i];
    try {
      cascade.steps.push_back(step_construct(X, cascade.sets.back(), p, q, l - i));
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what());
    }
    cascade.sets.push_back(cascade.steps.back().target);
  }
  if (auto err = check_cascade(X, cascade)) {
    throw std::logic_error("built cascade fails its own bounds: " + *err);
  }
  return cascade;
}

Schedule full_schedule(int n, const AtomSignature& sig) {
  if (sig.n() != n) throw Error(Errc::kSizeMismatch, "signature arity differs");
  const auto& table = position_pairs(n);
  Schedule schedule;
  schedule.n = n;
  for (std::size_t k : sig.positive_pairs()) {
    for (int copy = 0; copy < n; ++copy) {
      schedule.pairs.emplace_back(table.first_of(k), table.second_of(k));
    }
  }
  return schedule;
}

Cascade core_reduce(const RankedSet& X, const KSubset& x, const AtomSignature& sig) {
  const int n = require_arity(x.size());
  if (sig.n() != n) throw Error(Errc::kSizeMismatch, "signature arity differs from |x|");
  X.require_reduced(x);
  const Schedule schedule = full_schedule(n, sig);
  const std::uint64_t need = schedule.required_sparsity();
  const std::size_t d = sparsity(X, x);
  if (d < need) {
    throw Error(Errc::kInfeasibleSparsity,
                "full schedule of length " + std::to_string(schedule.length()) +
                    " needs d(x) >= n^" + std::to_string(2 * schedule.length()) +
                    " = " + std::to_string(need) + ", but d(x) = " +
                    std::to_string(d) +
                    (schedule.feasible_for(X) ? std::string()
                                              : " and no subset of X can reach it"));
  }
  Cascade cascade = build_cascade(X, x, schedule.pairs);

  const IndexSet I = canonical_index_set(sig);
  std::vector<Element> kept;
  for (int i : I.members()) kept.push_back(x[i]);
  if (x.intersection(cascade.sets.back()) != KSubset::unchecked(kept)) {
    throw std::logic_error("full cascade did not shed exactly the non-I(Q) positions");
  }
  return cascade;
}

CascadeStep shift_witness(const AtomSignature& sig, const RankedSet& X,
                          const CascadeStep& prior, std::size_t i,
                          Element replacement) {
  const int n = require_arity(prior.source.size());
  if (sig.n() != n) throw Error(Errc::kSizeMismatch, "signature arity differs");
  if (auto err = check_step(X, prior)) {
    throw Error(Errc::kInvalidArgument, "prior step is not a valid witness: " + *err);
  }
  if (!sig.relates(prior.p, prior.q)) {
    throw Error(Errc::kPairNotInAtom,
                "pair (" + prior.p.to_string() + "," + prior.q.to_string() +
                    ") is not a relation of the atom");
  }
  X.require_reduced(prior.source);
  X.require_reduced(prior.target);
  if (i >= static_cast<std::size_t>(n)) {
    throw Error(Errc::kInvalidArgument, "shift index out of range");
  }
  const Element moved = prior.source[i];
  if (prior.target.contains(moved)) {
    throw Error(Errc::kInvalidArgument,
                "x_[" + std::to_string(i) + "] = " + std::to_string(moved) +
                    " also lies in the target");
  }
  if (!X.contains(replacement)) {
    throw Error(Errc::kNotInGroundSet,
                "replacement " + std::to_string(replacement) + " not in X");
  }
  if (replacement == moved) return prior;

  // a = max(x_[i] ∩ (x ∪ y)⁺)
  Element a = X.min();
  for (Element b : prior.source.set_union(prior.target)) {
    if (b < moved) a = std::max(a, b);
  }
  if (!(a < replacement && replacement <= moved)) {
    throw Error(Errc::kShiftOutOfInterval,
                "replacement " + std::to_string(replacement) + " outside (" +
                    std::to_string(a) + ", " + std::to_string(moved) + "]");
  }
  const std::size_t gap = rho(X, a, replacement);
  if (gap < static_cast<std::size_t>(2 * n)) {
    throw Error(Errc::kShiftTooClose,
                "rho(" + std::to_string(a) + ", " + std::to_string(replacement) +
                    ") = " + std::to_string(gap) + " < 2n = " + std::to_string(2 * n));
  }

  std::vector<Element> kept;
  std::size_t block = 0;  // |z_0|
  for (Element z : prior.witness) {
    if (a <= z && z <= moved) ++block;
    else kept.push_back(z);
  }
  // The block restarts at a when a is a witness member, just above a
  // otherwise (a = min X outside z).
  const std::size_t base = X.rank(a) + (prior.witness.contains(a) ? 0 : 1);
  for (std::size_t k = 0; k + 1 < block; ++k) kept.push_back(X[base + k]);
  kept.push_back(replacement);
  std::sort(kept.begin(), kept.end());

  CascadeStep step{prior.source.without(moved).with(replacement), prior.target,
                   prior.p, prior.q, KSubset(std::move(kept))};
  if (auto err = check_step(X, step)) {
    throw std::logic_error("shifted witness is invalid: " + *err);
  }
  return step;
}

KSubset hat_normal_form(const RankedSet& X, const KSubset& x, const IndexSet& I,
                        std::size_t gap) {
  const int n = require_arity(x.size());
  if (I.n() != n) throw Error(Errc::kSizeMismatch, "index set arity differs from |x|");
  if (gap < 1) throw Error(Errc::kInvalidArgument, "gap must be >= 1");
  const std::size_t d = sparsity(X, x);
  if (d < gap) {
    throw Error(Errc::kInsufficientSparsity,
                "d(x) = " + std::to_string(d) + " < gap " + std::to_string(gap));
  }
  std::vector<Element> out;
  std::size_t prev_rank = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t own = X.rank(x[i]);
    const std::size_t r = I.contains(i) ? own : (i == 0 ? gap : prev_rank + gap);
    if (r >= X.size() || r > own || (i > 0 && r <= prev_rank)) {
      throw Error(Errc::kRankCollision,
                  "position " + std::to_string(i) + " cannot be placed at rank " +
                      std::to_string(r));
    }
    out.push_back(X[r]);
    prev_rank = r;
  }
  return KSubset::unchecked(std::move(out));
}

}  // namespace canram
