#pragma once

// Shared helpers for unit and acceptance suites: independent oracles,
// random generators, and small snapshot builders. Everything here stays
// independent of the implementation paths it checks.

#include <random>
#include <string>
#include <vector>

#include "scabench/evaluation.hpp"
#include "scabench/snapshot.hpp"
#include "scabench/versions.hpp"

namespace scabench::test {

// --- closed-form chi-square oracle ---------------------------------------
// Upper tail for integer df via the textbook recurrence
//   Q(df+2, x) = Q(df, x) + (x/2)^(df/2) e^(-x/2) / Gamma(df/2 + 1)
// anchored at Q(1,x) = erfc(sqrt(x/2)) and Q(2,x) = e^(-x/2). Long double
// keeps the tail representable far beyond double range.
long double chisq_tail_oracle(long double x, int df);

// --- exact binomial oracle ------------------------------------------------
// Two-sided McNemar p recomputed from first principles with a product-form
// binomial pmf (no lgamma), doubling the inclusive upper tail.
long double mcnemar_oracle(long long n10, long long n01);

// --- brute-force matching oracle -------------------------------------------
// The matching predicate re-derived as a plain double loop over all
// (entry, finding) pairs; no indexing, no early exits.
MatchOutcome brute_force_match(const Snapshot& gt,
                               const std::vector<NormalizedFinding>& findings);

// --- random generators ------------------------------------------------------
std::string random_version_string(EcosystemId eco, std::mt19937& rng);
Snapshot make_snapshot(std::vector<GroundTruthEntry> entries);
GroundTruthEntry make_entry(EcosystemId eco, const std::string& component,
                            const std::string& version, const std::string& vuln,
                            const std::vector<std::string>& aliases = {});
NormalizedFinding make_finding(ToolId tool, EcosystemId eco, const std::string& component,
                               const std::string& version, const std::string& vuln,
                               const std::vector<std::string>& aliases = {},
                               const std::string& range = "");

// Synthetic snapshot matching given per-ecosystem counts:
// (unique components, entries, cve-backed entries, distinct CVEs).
struct EcosystemShape {
  EcosystemId eco;
  long long components;
  long long entries;
  long long cve_backed;
  long long distinct_cves;
};
Snapshot shaped_snapshot(const std::vector<EcosystemShape>& shapes);

}  // namespace scabench::test
