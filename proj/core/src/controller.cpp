#include "scabench/controller.hpp"

#include "scabench/errors.hpp"

namespace scabench {

AcceptedRun run_controlled(const ControllerConfig& cfg, ControllerEnv env) {
  if (cfg.attempts_max < 1) throw_error(ErrorKind::Usage, "attempts_max must be >= 1");
  if (cfg.repeats < 1) throw_error(ErrorKind::Usage, "repeats must be >= 1");
  if (cfg.tools.empty()) throw_error(ErrorKind::Usage, "controlled run needs at least one tool");

  AcceptedRun run;

  for (int attempt = 1; attempt <= cfg.attempts_max; ++attempt) {
    RunAttempt record;
    record.index = attempt;
    record.started_at = adapter_detail::utc_now();

    Snapshot gt0 = env.build_gt();
    record.gt_before = gt0.digest;
    SbomDocument sbom = emit_sbom(gt0);

    std::vector<std::map<ToolId, ToolRunResult>> repeat_results;
    bool execution_failed = false;
    for (int repeat = 0; repeat < cfg.repeats && !execution_failed; ++repeat) {
      std::map<ToolId, ToolRunResult> results;
      for (ToolId tool : cfg.tools) {
        try {
          results[tool] = env.run_tool(tool, gt0, sbom, repeat);
        } catch (const Error& e) {
          record.status = "failed-execution";
          record.error = to_string(tool) + ": " + e.what();
          execution_failed = true;
          break;
        }
      }
      if (!execution_failed) repeat_results.push_back(std::move(results));
    }
    if (execution_failed) {
      record.finished_at = adapter_detail::utc_now();
      run.attempts.push_back(std::move(record));
      continue;
    }

    for (ToolId tool : cfg.tools)
      for (const auto& results : repeat_results)
        record.repeat_hashes[tool].push_back(results.at(tool).result_hash);

    Snapshot gt1 = env.build_gt();
    record.gt_after = gt1.digest;
    if (gt0.digest != gt1.digest) {
      record.status = "failed-drift";
      record.finished_at = adapter_detail::utc_now();
      run.attempts.push_back(std::move(record));
      continue;
    }

    // Accepted. Repeat-hash divergence is recorded and warned about, not
    // rejected: those runs are for manual inspection.
    record.status = "accepted";
    record.finished_at = adapter_detail::utc_now();
    for (const auto& [tool, hashes] : record.repeat_hashes) {
      for (const auto& h : hashes) {
        if (h != hashes.front()) {
          run.repeat_divergence = true;
          env.warn("repeat results diverged for " + to_string(tool) +
                   "; recorded for manual inspection");
        }
      }
    }
    run.attempts.push_back(std::move(record));

    run.snapshot = std::move(gt0);
    run.sbom = std::move(sbom);
    run.repeat_results = std::move(repeat_results);

    for (const auto& results : run.repeat_results) {
      std::map<ToolId, MatchOutcome> outcomes;
      for (const auto& [tool, result] : results) {
        MatchOutcome outcome = match(run.snapshot, result.findings);
        outcome.tool = tool;
        outcomes[tool] = std::move(outcome);
      }
      run.repeat_outcomes.push_back(std::move(outcomes));
    }

    // Repeat-level metric aggregation: counts averaged across repeats
    // (identical repeats collapse to the single-run numbers).
    run.report.snapshot_digest = run.snapshot.digest;
    for (ToolId tool : cfg.tools) {
      std::vector<std::vector<MetricRow>> per_repeat_rows;
      for (const auto& outcomes : run.repeat_outcomes) {
        auto rows = metrics_by_ecosystem(run.snapshot, outcomes.at(tool));
        rows.push_back(aggregate_total(rows));
        per_repeat_rows.push_back(std::move(rows));
      }
      std::vector<MetricRow> averaged = per_repeat_rows.front();
      const auto repeats = static_cast<long long>(per_repeat_rows.size());
      if (repeats > 1) {
        for (size_t i = 0; i < averaged.size(); ++i) {
          long long tp = 0, fp = 0, fn = 0;
          for (const auto& rows : per_repeat_rows) {
            tp += rows[i].tp;
            fp += rows[i].fp_gt;
            fn += rows[i].fn;
          }
          averaged[i].tp = tp / repeats;
          averaged[i].fp_gt = fp / repeats;
          averaged[i].fn = fn / repeats;
          if (averaged[i].tp + averaged[i].fn > 0)
            averaged[i].recall = static_cast<double>(averaged[i].tp) /
                                 static_cast<double>(averaged[i].tp + averaged[i].fn);
          if (averaged[i].tp + averaged[i].fp_gt > 0)
            averaged[i].overlap = static_cast<double>(averaged[i].tp) /
                                  static_cast<double>(averaged[i].tp + averaged[i].fp_gt);
        }
        // TOTAL row keeps the macro-mean convention.
        for (auto& row : averaged) {
          if (row.ecosystem) continue;
          std::vector<MetricRow> eco_rows;
          for (const auto& r : averaged)
            if (r.ecosystem) eco_rows.push_back(r);
          MetricRow total = aggregate_total(eco_rows);
          total.tool = row.tool;
          row = total;
        }
      }
      run.report.rows[tool] = std::move(averaged);
    }

    run.matrix = build_detection_matrix(run.snapshot, cfg.tools, run.repeat_outcomes);
    run.omnibus = cochran_q(run.matrix);
    run.pairwise = pairwise_table(run.matrix);
    return run;
  }

  std::string detail;
  for (const auto& a : run.attempts) {
    detail += " attempt " + std::to_string(a.index) + ": " + a.status;
    if (!a.error.empty()) detail += " (" + a.error + ")";
    detail += ";";
  }
  throw_error(ErrorKind::Abort, "no attempt accepted after " +
                                    std::to_string(cfg.attempts_max) + " tries:" + detail);
}

ControllerEnv make_controller_env(const ControllerConfig& cfg, OsvClient& osv,
                                  RegistryClient& registry, Transport& transport,
                                  CommandRunner& runner) {
  ControllerEnv env;
  env.build_gt = [&cfg, &osv, &registry] { return build_snapshot(cfg.build, osv, registry); };
  env.run_tool = [&cfg, &transport, &runner](ToolId tool, const Snapshot& snapshot,
                                             const SbomDocument& sbom, int) {
    auto adapter = make_adapter(tool);
    auto it = cfg.adapters.find(tool);
    AdapterConfig adapter_cfg = it == cfg.adapters.end() ? AdapterConfig{} : it->second;
    adapter_cfg.tool = tool;
    return adapter->run(snapshot, sbom, adapter_cfg, transport, runner);
  };
  return env;
}

}  // namespace scabench
