#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scabench/model.hpp"

namespace scabench {

// Paired binary detections x_{t,g}: one column per tool, one row per
// ground-truth instance (rows from repeated passes are concatenated).
struct DetectionMatrix {
  std::vector<ToolId> tools;
  std::vector<std::string> instances;         // row labels, same length as rows
  std::vector<std::vector<std::uint8_t>> rows;  // rows[i][t] ∈ {0,1}

  size_t tool_count() const { return tools.size(); }
  size_t instance_count() const { return rows.size(); }
  // Column total = per-tool TP count over these instances.
  long long column_total(size_t t) const;
};

struct OmnibusResult {
  double q_statistic = 0.0;
  int degrees_freedom = 0;
  double p_value = 1.0;
};

struct PairwiseComparison {
  ToolId tool_a = ToolId::Dtrack;
  ToolId tool_b = ToolId::Dtrack;
  long long n10 = 0;  // detected by A, missed by B
  long long n01 = 0;  // detected by B, missed by A
  double p_raw = 1.0;
  double p_adj = 1.0;
};

// Upper tail of the chi-square distribution, P(X² > x) with df degrees of
// freedom, via the regularized incomplete gamma function.
double chisq_upper_tail(double x, int df);

namespace detail {
// Extended-precision core; the double API is a thin wrapper. Exposed so the
// tail can be checked against a closed-form oracle beyond double range.
long double chisq_upper_tail_ld(long double x, int df);
}  // namespace detail

// Cochran's Q over the detection matrix; rows with all-equal cells
// contribute nothing, and an all-constant matrix yields Q=0, p=1.
OmnibusResult cochran_q(const DetectionMatrix& m);

// Two-sided exact McNemar p: doubled binomial tail at rate 1/2 including
// the observed count, capped at 1; n10+n01 = 0 yields p = 1.
double mcnemar_exact(long long n10, long long n01);

// Holm step-down adjustment. Input and output are parallel to `p_raw`;
// adjusted values are monotone in the ascending rank order.
std::vector<double> holm_adjust(const std::vector<double>& p_raw);

// All unordered tool pairs with discordant counts, raw exact-McNemar p and
// Holm-adjusted p, sorted by raw p ascending.
std::vector<PairwiseComparison> pairwise_table(const DetectionMatrix& m);

}  // namespace scabench
