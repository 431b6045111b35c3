#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracecluster/error.hpp"
#include "tracecluster/log_model.hpp"
#include "tracecluster/solution.hpp"

namespace tracecluster {

/// Unordered pair of trace ids, stored with first < second.
using TracePair = std::pair<std::string, std::string>;
TracePair unordered_pair(std::string a, std::string b);

/// Unordered pair of variant indices, stored with first < second.
using IndexPair = std::pair<std::size_t, std::size_t>;
inline IndexPair unordered_pair(std::size_t a, std::size_t b) {
  return a < b ? IndexPair{a, b} : IndexPair{b, a};
}

struct ConstraintSet {
  std::set<TracePair> must_links;
  std::set<TracePair> cannot_links;

  void add_must_link(std::string a, std::string b) {
    must_links.insert(unordered_pair(std::move(a), std::move(b)));
  }
  void add_cannot_link(std::string a, std::string b) {
    cannot_links.insert(unordered_pair(std::move(a), std::move(b)));
  }
  std::size_t size() const noexcept { return must_links.size() + cannot_links.size(); }
  bool empty() const noexcept { return size() == 0; }
  bool operator==(const ConstraintSet&) const = default;
};

struct ConstraintIssue {
  ErrorKind kind;
  TracePair pair;
  /// Must-link path between the endpoints of a conflicting cannot-link.
  std::vector<std::string> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<ConstraintIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
  /// Throws an Error built from the first issue, if any.
  void throw_if_invalid() const;
};

/// Structural checks: no self pairs, no pair in both sets, and no cannot-link
/// whose endpoints are joined by a must-link path.
ValidationReport validate(const ConstraintSet& cs);
/// Additionally reports ids that do not exist in `log`.
ValidationReport validate(const ConstraintSet& cs, const EventLog& log);

/// Transitive extension of a valid constraint set. Must-link components are
/// numbered in order of their smallest id.
class ExtendedConstraintSet {
 public:
  const ConstraintSet& source() const noexcept { return source_; }
  const std::set<TracePair>& ml_plus() const noexcept { return ml_plus_; }
  const std::set<TracePair>& cl_plus() const noexcept { return cl_plus_; }

  ConstraintSet as_constraint_set() const { return ConstraintSet{ml_plus_, cl_plus_}; }

  /// cont(t, ML+): t plus every id must-linked to it, sorted.
  std::vector<std::string> connected(const std::string& id) const;

  /// Ids mentioned by any constraint, sorted.
  std::vector<std::string> constrained_ids() const;

 private:
  friend ExtendedConstraintSet extend(const ConstraintSet& cs);

  ConstraintSet source_;
  std::set<TracePair> ml_plus_;
  std::set<TracePair> cl_plus_;
  std::map<std::string, std::size_t> component_;
  std::vector<std::vector<std::string>> members_;
};

/// Throws kInvalidInput when `cs` fails validate().
ExtendedConstraintSet extend(const ConstraintSet& cs);

/// cont(t, ML+) for a trace of `log`; throws kUnknownTraceId.
std::vector<std::string> connected_traces(const std::string& trace_id,
                                          const ExtendedConstraintSet& ecs, const EventLog& log);

/// Constraints lifted from trace ids onto the variants of a grouped log.
/// Must-links between traces of one variant are dropped; a cannot-link
/// between traces of one variant is rejected.
class VariantConstraintSet {
 public:
  /// No constraints over `variant_count` variants.
  explicit VariantConstraintSet(std::size_t variant_count = 0);

  std::size_t variant_count() const noexcept { return component_.size(); }
  bool empty() const noexcept { return ml_pairs_.empty() && cl_pairs_.empty(); }

  /// Pairs used by matrix adjustment: the closed sets for an extended lift,
  /// the lifted originals for a raw lift.
  const std::set<IndexPair>& must_link_pairs() const noexcept { return ml_pairs_; }
  const std::set<IndexPair>& cannot_link_pairs() const noexcept { return cl_pairs_; }

  /// cont(v, ML+) over variants, ascending. Always closed, whatever the lift.
  const std::vector<std::size_t>& connected(std::size_t v) const {
    return members_[component_.at(v)];
  }
  std::size_t component(std::size_t v) const { return component_.at(v); }
  std::size_t component_count() const noexcept { return members_.size(); }

  /// Closed cannot-link test between two variants.
  bool cannot_link(std::size_t a, std::size_t b) const;
  /// Variants with at least one closed cannot-link partner, ascending.
  const std::vector<std::vector<std::size_t>>& cannot_link_neighbours() const noexcept {
    return cl_neighbours_;
  }

 private:
  friend VariantConstraintSet lift(const ConstraintSet& cs, const GroupedEventLog& g, bool extended);

  std::vector<std::size_t> component_;
  std::vector<std::vector<std::size_t>> members_;
  std::set<IndexPair> ml_pairs_;
  std::set<IndexPair> cl_pairs_;
  std::vector<std::vector<std::size_t>> cl_neighbours_;
};

/// Lifts `cs` onto variants and closes it under must-link transitivity at
/// the variant level. With extended=false the adjustment pairs are the raw
/// lifted ones, while connected()/cannot_link() stay closed. Throws
/// kUnknownTraceId, kSelfConstraint, kIntraVariantCannotLink or kMlClConflict.
VariantConstraintSet lift(const ConstraintSet& cs, const GroupedEventLog& g, bool extended = true);

// ------------------------------------------------------------ clique search

struct CliqueOptions {
  /// Above this many constrained vertices a greedy maximal clique is used.
  std::size_t greedy_above = 5000;
};

/// Clique of size <= k in an undirected graph. Only vertices with at least
/// one edge take part. Vertices are tried in order of decreasing degree
/// (ties by index) and the search stops at the first clique of size k;
/// otherwise the largest clique is returned. Result is ascending.
std::vector<std::size_t> k_bounded_max_clique(std::size_t vertex_count,
                                              const std::vector<IndexPair>& edges, std::size_t k,
                                              const CliqueOptions& options = {});

std::vector<std::size_t> k_bounded_max_clique(const VariantConstraintSet& vcs, std::size_t k,
                                              const CliqueOptions& options = {});

/// Clique over the trace-level CL+ graph; ids sorted.
std::vector<std::string> k_bounded_max_clique(const ExtendedConstraintSet& ecs, std::size_t k,
                                              const CliqueOptions& options = {});

// ------------------------------------------------------ constraint sampling

/// How generate_constraints draws the two endpoints of a pair.
enum class PairSampling {
  /// Uniform over distinct process instances, then a uniform member trace.
  kVariants,
  /// Uniform over traces, so frequent variants are constrained more often.
  kTraces,
};

/// round-half-up(fraction * supp(G)), the number of constraints generated
/// for a fraction of the distinct traces.
std::size_t constraint_budget(double fraction, std::size_t support);

/// Random constraints consistent with `truth`: ceil(n/2) must-links between
/// traces of different variants in one cluster and floor(n/2) cannot-links
/// across clusters, n = constraint_budget(fraction, supp(G)). Draws come from
/// two seeded streams consumed in order, so for one seed the set generated
/// for a smaller fraction is a subset of the set for a larger one. Throws
/// kInfeasibleSampling when not enough distinct pairs exist.
ConstraintSet generate_constraints(const GroupedEventLog& g, const ClusteringSolution& truth,
                                   double fraction, std::uint64_t seed,
                                   PairSampling sampling = PairSampling::kVariants);

// -------------------------------------------------------------------- files

/// Tab-separated lines "ML<TAB>id1<TAB>id2" or "CL<TAB>id1<TAB>id2".
/// Blank lines and lines starting with '#' are skipped.
ConstraintSet parse_constraints(std::string_view text);
ConstraintSet read_constraints(const std::filesystem::path& path);
std::string format_constraints(const ConstraintSet& cs);

}  // namespace tracecluster
