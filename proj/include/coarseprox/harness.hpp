#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarseprox/relations.hpp"

namespace coarseprox {

/// Deterministic generation plan: identical plans produce identical instance
/// lists and byte-identical reports.
struct SeedPlan {
  std::uint64_t seed = 1;
  int set_count = 40;          // per carrier, including injected edge cases
  int pair_count = 300;
  int triple_count = 120;
  int oracle_pair_count = 80;  // pairs cross-checked against window oracles
  std::vector<long long> windows = {100, 1000, 5000};
  long long den_bound = 2;     // structural denominators of generated QSets

  nlohmann::json to_json() const;
};

struct CheckFailure {
  std::string clause;        // violated clause tag, e.g. "Def2.2(iv)-forward"
  nlohmann::json instance;   // replayable serialization of the instance
};

struct CheckReport {
  std::string suite;
  std::string backend;
  long long instances = 0;
  long long oracle_disagreements = 0;
  std::vector<CheckFailure> failures;  // sorted by (clause, instance)

  bool has_clause(const std::string& prefix) const;
  nlohmann::json to_json() const;
};

std::vector<EPSet> gen_epsets(const SeedPlan& plan);
std::vector<QSet> gen_qsets(const SeedPlan& plan);

/// Bounded sets form a bornology: singletons, subsets, finite unions.
CheckReport check_bornology(BackendKind kind, const SeedPlan& plan);

/// The five closeness axioms, strong axiom included. Expected to fail the
/// strong axiom on the half line (with the unit-interval/naturals pair among
/// the reported instances) and nowhere else.
CheckReport check_coarse_proximity(BackendKind kind, const SeedPlan& plan);

/// The six coarse-neighborhood properties with prec as the neighborhood
/// relation. Interpolation (property 6) must fail on the half line.
CheckReport check_nbhd_properties(BackendKind kind, const SeedPlan& plan);

/// Resemblance: equivalence-relation probes, the union condition, and the
/// constructive two-piece decomposition.
CheckReport check_asym_resemblance(BackendKind kind, const SeedPlan& plan);

/// Mode agreement, derived-relation round trips, neighborhood/prec equality,
/// and window-oracle agreement for every closed-form rule.
CheckReport crosscheck(BackendKind kind, const SeedPlan& plan);

std::vector<CheckReport> run_suites(BackendKind kind, const SeedPlan& plan,
                                    const std::vector<std::string>& suites);

/// All five suites in a fixed order.
std::vector<CheckReport> run_all(BackendKind kind, const SeedPlan& plan);

/// Pass/fail pattern: a report matches when its failures are exactly the ones
/// the backend is expected to exhibit (none on the metric side; only the
/// strong-axiom / interpolation clauses on the half line, canonical instance
/// included).
bool report_matches_expectation(BackendKind kind, const CheckReport& report);

}  // namespace coarseprox
