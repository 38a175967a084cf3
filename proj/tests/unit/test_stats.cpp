#include <doctest.h>

#include <cmath>
#include <random>

#include "scabench/errors.hpp"
#include "scabench/stat_tests.hpp"
#include "test_support.hpp"

using namespace scabench;

namespace {

DetectionMatrix matrix_from_counts(long long n11, long long n10, long long n01, long long n00) {
  DetectionMatrix m;
  m.tools = {ToolId::Dtrack, ToolId::Snyk};
  for (long long i = 0; i < n11; ++i) m.rows.push_back({1, 1});
  for (long long i = 0; i < n10; ++i) m.rows.push_back({1, 0});
  for (long long i = 0; i < n01; ++i) m.rows.push_back({0, 1});
  for (long long i = 0; i < n00; ++i) m.rows.push_back({0, 0});
  return m;
}

}  // namespace

TEST_CASE("exact McNemar reproduces the published values") {
  // dtrack vs snyk (0.642) and github vs trivy (0.052)
  CHECK(mcnemar_exact(192, 182) == doctest::Approx(0.641719).epsilon(1e-4));
  CHECK(mcnemar_exact(70, 96) == doctest::Approx(0.052006).epsilon(1e-4));
  CHECK(mcnemar_exact(12, 706) < 0.001);
  CHECK(mcnemar_exact(0, 0) == 1.0);
  CHECK(mcnemar_exact(5, 5) == 1.0);  // doubled tail capped at 1
}

TEST_CASE("exact McNemar is symmetric and matches the oracle") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<long long> d(0, 400);
  for (int i = 0; i < 300; ++i) {
    long long a = d(rng), b = d(rng);
    double p = mcnemar_exact(a, b);
    CHECK(p == mcnemar_exact(b, a));
    long double want = scabench::test::mcnemar_oracle(a, b);
    CHECK(std::fabs(p - static_cast<double>(want)) <=
          1e-12 * std::max<long double>(want, 1e-30L));
  }
}

TEST_CASE("holm adjustment: table values, monotonicity, bounds") {
  // Raw p values recomputed from the published discordant counts.
  std::vector<std::pair<long long, long long>> pairs = {
      {12, 706}, {730, 62}, {58, 634}, {686, 100}, {32, 140},
      {72, 190}, {194, 102}, {94, 176}, {70, 96},  {192, 182}};
  std::vector<double> raw;
  for (auto [a, b] : pairs) raw.push_back(mcnemar_exact(a, b));
  auto adjusted = holm_adjust(raw);

  CHECK(adjusted[8] == doctest::Approx(0.104).epsilon(0.01));   // github vs trivy
  CHECK(adjusted[9] == doctest::Approx(0.642).epsilon(0.005));  // dtrack vs snyk
  for (size_t i = 0; i + 1 < 8; ++i) CHECK(adjusted[i] < 0.001);

  // Smallest p gets the full Bonferroni factor.
  std::vector<size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return raw[x] < raw[y]; });
  CHECK(adjusted[order[0]] ==
        doctest::Approx(std::min(1.0, raw[order[0]] * static_cast<double>(raw.size()))));
  double prev = 0;
  for (size_t rank = 0; rank < order.size(); ++rank) {
    CHECK(adjusted[order[rank]] >= prev);
    CHECK(adjusted[order[rank]] <= 1.0);
    CHECK(adjusted[order[rank]] >= raw[order[rank]]);
    prev = adjusted[order[rank]];
  }

  CHECK(holm_adjust({0.03}) == std::vector<double>{0.03});
}

TEST_CASE("cochran q: identical columns give Q=0 p=1") {
  DetectionMatrix m;
  m.tools = {ToolId::Dtrack, ToolId::Snyk, ToolId::Trivy};
  m.rows = {{1, 1, 1}, {0, 0, 0}, {1, 1, 1}};
  auto r = cochran_q(m);
  CHECK(r.q_statistic == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK(r.degrees_freedom == 2);
}

TEST_CASE("cochran q reduces to the McNemar chi-square for k=2") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long long> d(0, 60);
  for (int i = 0; i < 1000; ++i) {
    long long n11 = d(rng), n10 = d(rng), n01 = d(rng), n00 = d(rng);
    if (n10 + n01 == 0) n10 = 1;
    auto m = matrix_from_counts(n11, n10, n01, n00);
    auto r = cochran_q(m);
    const double want = static_cast<double>((n10 - n01) * (n10 - n01)) /
                        static_cast<double>(n10 + n01);
    CHECK(r.q_statistic == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("cochran q is invariant under row permutation") {
  std::mt19937 rng(555);
  DetectionMatrix m;
  m.tools = {ToolId::Dtrack, ToolId::Snyk, ToolId::Github};
  for (int i = 0; i < 200; ++i)
    m.rows.push_back({static_cast<std::uint8_t>(rng() % 2), static_cast<std::uint8_t>(rng() % 2),
                      static_cast<std::uint8_t>(rng() % 2)});
  auto before = cochran_q(m);
  std::shuffle(m.rows.begin(), m.rows.end(), rng);
  auto after = cochran_q(m);
  CHECK(before.q_statistic == doctest::Approx(after.q_statistic).epsilon(1e-12));
  CHECK(before.p_value == doctest::Approx(after.p_value).epsilon(1e-12));
}

TEST_CASE("chi-square tail matches the closed-form oracle to 1e-10") {
  long double worst = 0.0L;
  for (int df = 1; df <= 10; ++df) {
    for (double x = 0.125; x <= 2000.0; x *= 1.17) {
      const long double got = detail::chisq_upper_tail_ld(x, df);
      const long double want = scabench::test::chisq_tail_oracle(x, df);
      if (want > 0.0L) {
        const long double rel = fabsl(got - want) / want;
        worst = std::max(worst, rel);
        if (rel >= 1e-10L) {
          CAPTURE(x);
          CAPTURE(df);
          CHECK(rel < 1e-10L);
        }
      }
    }
  }
  CHECK(worst < 1e-10L);
}

TEST_CASE("pairwise table covers all pairs sorted by raw p") {
  std::mt19937 rng(8);
  DetectionMatrix m;
  m.tools = all_tools();
  for (int i = 0; i < 500; ++i) {
    std::vector<std::uint8_t> row;
    for (size_t t = 0; t < m.tools.size(); ++t)
      row.push_back(static_cast<std::uint8_t>(rng() % 2));
    m.rows.push_back(std::move(row));
  }
  auto table = pairwise_table(m);
  CHECK(table.size() == 10);  // 5 choose 2
  for (size_t i = 0; i + 1 < table.size(); ++i) CHECK(table[i].p_raw <= table[i + 1].p_raw);
  for (const auto& row : table) CHECK(row.p_adj >= row.p_raw);

  // counts agree with a brute-force per-row enumeration
  for (const auto& row : table) {
    size_t ia = 0, ib = 0;
    for (size_t t = 0; t < m.tools.size(); ++t) {
      if (m.tools[t] == row.tool_a) ia = t;
      if (m.tools[t] == row.tool_b) ib = t;
    }
    long long n10 = 0, n01 = 0;
    for (const auto& r : m.rows) {
      if (r[ia] == 1 && r[ib] == 0) ++n10;
      if (r[ia] == 0 && r[ib] == 1) ++n01;
    }
    CHECK(row.n10 == n10);
    CHECK(row.n01 == n01);
  }
}

TEST_CASE("degenerate inputs raise usage errors") {
  DetectionMatrix m;
  m.tools = {ToolId::Dtrack};
  m.rows = {{1}};
  CHECK_THROWS_AS((void)cochran_q(m), Error);
  CHECK_THROWS_AS((void)pairwise_table(m), Error);
  CHECK_THROWS_AS((void)mcnemar_exact(-1, 0), Error);
}
