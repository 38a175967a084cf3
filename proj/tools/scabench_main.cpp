// scabench CLI: ground-truth snapshot construction from OSV, deterministic
// CycloneDX emission, tool adapter runs, evaluation, paired significance
// testing, temporally controlled end-to-end runs, and snapshot/evaluation
// diffing.

#include <CLI11.hpp>
#include <iostream>

#include "scabench/builder.hpp"
#include "scabench/config.hpp"
#include "scabench/controller.hpp"
#include "scabench/diff.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/report.hpp"
#include "scabench/run_layout.hpp"
#include "scabench/sbom.hpp"

namespace {

using namespace scabench;

std::unique_ptr<Transport> make_transport(const RunConfigFile& cfg) {
  TransportOptions options;
  options.mode = cfg.transport_mode;
  options.fixture_dir = cfg.fixture_dir;
  return std::make_unique<HttpTransport>(options);
}

std::unique_ptr<CommandRunner> make_runner(const RunConfigFile& cfg) {
  switch (cfg.transport_mode) {
    case TransportMode::Replay:
      return std::make_unique<ReplayCommandRunner>(cfg.command_fixture_dir.empty()
                                                       ? cfg.fixture_dir
                                                       : cfg.command_fixture_dir);
    case TransportMode::Record:
      return std::make_unique<RecordingCommandRunner>(cfg.command_fixture_dir.empty()
                                                          ? cfg.fixture_dir
                                                          : cfg.command_fixture_dir);
    case TransportMode::Live:
      return std::make_unique<ProcessRunner>();
  }
  return std::make_unique<ProcessRunner>();
}

std::filesystem::path resolve_snapshot_dir(const std::filesystem::path& path) {
  if (std::filesystem::exists(path / "snapshot" / "entries.jsonl")) return path / "snapshot";
  return path;
}

SbomDocument load_or_emit_sbom(const RunPaths& paths, const Snapshot& snapshot) {
  SbomDocument sbom = emit_sbom(snapshot);
  const auto file = paths.sbom_dir() / sbom.file_name();
  if (std::filesystem::exists(file)) {
    sbom.bytes = read_file(file);
  } else {
    write_file(file, sbom.bytes);
  }
  return sbom;
}

void save_outcome(const RunPaths& paths, const MatchOutcome& outcome) {
  std::vector<nlohmann::json> rows;
  for (const auto& m : outcome.tp)
    rows.push_back(nlohmann::json{{"basis", to_string(m.basis)},
                                  {"class", "tp"},
                                  {"entry", m.entry},
                                  {"finding", m.finding}});
  for (const auto& f : outcome.fp_gt)
    rows.push_back(nlohmann::json{{"class", "fp_gt"}, {"finding", f}});
  for (const auto& e : outcome.fn)
    rows.push_back(nlohmann::json{{"class", "fn"}, {"entry", e}});
  std::filesystem::create_directories(paths.evaluation_dir());
  write_jsonl_file(paths.evaluation_dir() / ("outcomes-" + to_string(outcome.tool) + ".jsonl"),
                   rows);
}

std::vector<ToolId> tools_with_findings(const RunPaths& paths) {
  std::vector<ToolId> tools;
  std::vector<ToolId> candidates = all_tools();
  candidates.push_back(ToolId::Replay);
  for (ToolId tool : candidates)
    if (std::filesystem::exists(paths.tool_dir(tool) / "findings.jsonl")) tools.push_back(tool);
  return tools;
}

EvaluationReport evaluate_run(const RunPaths& paths, const Snapshot& snapshot,
                              const std::vector<ToolId>& tools) {
  EvaluationReport report;
  report.snapshot_digest = snapshot.digest;
  for (ToolId tool : tools) {
    auto findings = load_findings_jsonl(paths.tool_dir(tool) / "findings.jsonl");
    MatchOutcome outcome = match(snapshot, findings);
    outcome.tool = tool;
    save_outcome(paths, outcome);
    auto rows = metrics_by_ecosystem(snapshot, outcome);
    if (rows.empty()) {
      // No entries and no findings: still record an all-zero TOTAL row.
      MetricRow empty_total;
      empty_total.tool = tool;
      report.rows[tool] = {empty_total};
      continue;
    }
    rows.push_back(aggregate_total(rows));
    report.rows[tool] = std::move(rows);
  }

  nlohmann::json j = report;
  std::filesystem::create_directories(paths.evaluation_dir());
  write_json_file(paths.evaluation_dir() / "evaluation.json", j);
  write_file(paths.evaluation_dir() / "metrics.csv", render_metrics_csv(report));
  write_file(paths.evaluation_dir() / "metrics.md", render_metrics_markdown(report));
  return report;
}

DetectionMatrix matrix_from_run(const RunPaths& paths, const Snapshot& snapshot,
                                const std::vector<ToolId>& tools) {
  std::vector<std::map<ToolId, MatchOutcome>> repeats(1);
  for (ToolId tool : tools) {
    auto findings = load_findings_jsonl(paths.tool_dir(tool) / "findings.jsonl");
    MatchOutcome outcome = match(snapshot, findings);
    outcome.tool = tool;
    repeats[0][tool] = std::move(outcome);
  }
  return build_detection_matrix(snapshot, tools, repeats);
}

void save_statistics(const RunPaths& paths, const DetectionMatrix& matrix) {
  const OmnibusResult omnibus = cochran_q(matrix);
  const auto pairwise = pairwise_table(matrix);

  std::filesystem::create_directories(paths.stats_dir());
  write_json_file(paths.stats_dir() / "omnibus.json",
                  nlohmann::json{{"degrees_freedom", omnibus.degrees_freedom},
                                 {"p_value", omnibus.p_value},
                                 {"q_statistic", omnibus.q_statistic}});
  auto rows = nlohmann::json::array();
  for (const auto& row : pairwise)
    rows.push_back(nlohmann::json{{"n01", row.n01},
                                  {"n10", row.n10},
                                  {"p_adj", row.p_adj},
                                  {"p_raw", row.p_raw},
                                  {"tool_a", to_string(row.tool_a)},
                                  {"tool_b", to_string(row.tool_b)}});
  write_json_file(paths.stats_dir() / "pairwise.json", rows);
  write_file(paths.stats_dir() / "pairwise.csv", render_pairwise_csv(pairwise));
  write_file(paths.stats_dir() / "pairwise.md", render_pairwise_markdown(pairwise));
  write_file(paths.stats_dir() / "significance-matrix.csv",
             render_significance_matrix_csv(pairwise));

  std::cout << "Cochran's Q = " << omnibus.q_statistic << " (df " << omnibus.degrees_freedom
            << ", p " << format_p(omnibus.p_value) << ")\n";
}

void write_reports(const RunPaths& paths, const Snapshot& snapshot) {
  std::filesystem::create_directories(paths.reports_dir());
  write_file(paths.reports_dir() / "dataset-stats.md",
             render_dataset_stats_markdown(snapshot.stats));
  write_file(paths.reports_dir() / "dataset-stats.csv",
             render_dataset_stats_csv(snapshot.stats));
  write_file(paths.reports_dir() / "frequency-stats.md",
             render_frequency_stats_markdown(snapshot.stats));
  write_file(paths.reports_dir() / "frequency-stats.csv",
             render_frequency_stats_csv(snapshot.stats));

  const auto evaluation_file = paths.evaluation_dir() / "evaluation.json";
  if (std::filesystem::exists(evaluation_file)) {
    const EvaluationReport report = read_json_file(evaluation_file).get<EvaluationReport>();
    write_file(paths.reports_dir() / "metrics.md", render_metrics_markdown(report));
    write_file(paths.reports_dir() / "metrics.csv", render_metrics_csv(report));
    write_file(paths.reports_dir() / "tool-scatter.csv", render_tool_scatter_csv(report));
  } else {
    EvaluationReport empty;
    write_file(paths.reports_dir() / "metrics.md", render_metrics_markdown(empty));
    write_file(paths.reports_dir() / "metrics.csv", render_metrics_csv(empty));
    write_file(paths.reports_dir() / "tool-scatter.csv", render_tool_scatter_csv(empty));
  }

  const auto pairwise_file = paths.stats_dir() / "pairwise.json";
  if (std::filesystem::exists(pairwise_file)) {
    std::vector<PairwiseComparison> pairwise;
    for (const auto& row : read_json_file(pairwise_file)) {
      PairwiseComparison cmp;
      cmp.tool_a = tool_from_string(row.at("tool_a").get<std::string>());
      cmp.tool_b = tool_from_string(row.at("tool_b").get<std::string>());
      cmp.n10 = row.value("n10", 0LL);
      cmp.n01 = row.value("n01", 0LL);
      cmp.p_raw = row.value("p_raw", 1.0);
      cmp.p_adj = row.value("p_adj", 1.0);
      pairwise.push_back(cmp);
    }
    write_file(paths.reports_dir() / "pairwise.md", render_pairwise_markdown(pairwise));
    write_file(paths.reports_dir() / "pairwise.csv", render_pairwise_csv(pairwise));
    write_file(paths.reports_dir() / "significance-matrix.csv",
               render_significance_matrix_csv(pairwise));
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"SCA benchmarking against OSV-derived ground truth"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_dir;
  std::string out_dir;
  std::string transport_override;
  std::string tool_name;
  std::string path_a, path_b;

  auto add_config = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--config", config_path, "run configuration file (JSON or TOML)");
    if (required) opt->required();
  };

  // build-gt
  auto* build_cmd = app.add_subcommand("build-gt", "construct a ground-truth snapshot");
  add_config(build_cmd);
  build_cmd->add_option("--run-dir", run_dir, "write into this run directory (default: new)");
  build_cmd->add_option("--transport", transport_override, "live | record | replay override");

  // emit-sbom
  auto* sbom_cmd = app.add_subcommand("emit-sbom", "emit the CycloneDX SBOM for a snapshot");
  sbom_cmd->add_option("--run", run_dir, "run directory")->required();

  // run-tool
  auto* run_tool_cmd = app.add_subcommand("run-tool", "run one tool adapter on a snapshot");
  run_tool_cmd->add_option("tool", tool_name, "dtrack | snyk | oss-index | github | trivy | replay")
      ->required();
  add_config(run_tool_cmd);
  run_tool_cmd->add_option("--run", run_dir, "run directory")->required();

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "match findings and compute metrics");
  evaluate_cmd->add_option("--run", run_dir, "run directory")->required();

  // stats-compare
  auto* stats_cmd =
      app.add_subcommand("stats-compare", "omnibus and pairwise significance tests");
  stats_cmd->add_option("--run", run_dir, "run directory")->required();

  // diff-gt
  auto* diff_gt_cmd = app.add_subcommand("diff-gt", "structural diff of two snapshots");
  diff_gt_cmd->add_option("earlier", path_a, "earlier snapshot or run directory")->required();
  diff_gt_cmd->add_option("later", path_b, "later snapshot or run directory")->required();
  diff_gt_cmd->add_option("--out", out_dir, "where to write the diff tables");

  // diff-eval
  auto* diff_eval_cmd = app.add_subcommand("diff-eval", "delta of two evaluation reports");
  diff_eval_cmd->add_option("earlier", path_a, "earlier evaluation.json")->required();
  diff_eval_cmd->add_option("later", path_b, "later evaluation.json")->required();
  diff_eval_cmd->add_option("--out", out_dir, "where to write the diff tables");

  // controlled-run
  auto* controlled_cmd =
      app.add_subcommand("controlled-run", "temporally controlled end-to-end evaluation");
  add_config(controlled_cmd);
  controlled_cmd->add_option("--run-dir", run_dir, "write into this run directory");
  controlled_cmd->add_option("--transport", transport_override, "live | record | replay override");

  // report
  auto* report_cmd = app.add_subcommand("report", "render dataset/metric/statistics tables");
  report_cmd->add_option("--run", run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (build_cmd->parsed()) {
    RunConfigFile cfg = load_run_config(config_path);
    if (!transport_override.empty())
      cfg.transport_mode = transport_mode_from_string(transport_override);
    auto transport = make_transport(cfg);
    OsvClient osv(*transport);
    RegistryClient registry(*transport);
    Snapshot snapshot = build_snapshot(cfg.build, osv, registry);
    RunPaths paths;
    if (run_dir.empty())
      paths = create_run_dir(cfg.output_dir, snapshot.digest);
    else {
      paths.root = run_dir;
      std::filesystem::create_directories(paths.root);
    }
    save_snapshot(snapshot, paths.snapshot_dir());
    std::cout << paths.root.string() << "\n";
    std::cout << "digest " << snapshot.digest << " entries " << snapshot.entries.size() << "\n";
    return 0;
  }

  if (sbom_cmd->parsed()) {
    RunPaths paths;
    paths.root = run_dir;
    Snapshot snapshot = load_snapshot(resolve_snapshot_dir(paths.root));
    SbomDocument sbom = emit_sbom(snapshot);
    write_file(paths.sbom_dir() / sbom.file_name(), sbom.bytes);
    std::cout << (paths.sbom_dir() / sbom.file_name()).string() << "\n";
    return 0;
  }

  if (run_tool_cmd->parsed()) {
    RunConfigFile cfg = load_run_config(config_path);
    RunPaths paths;
    paths.root = run_dir;
    Snapshot snapshot = load_snapshot(resolve_snapshot_dir(paths.root));
    SbomDocument sbom = load_or_emit_sbom(paths, snapshot);
    const ToolId tool = tool_from_string(tool_name);
    auto adapter = make_adapter(tool);
    AdapterConfig adapter_cfg =
        cfg.adapters.count(tool) ? cfg.adapters.at(tool) : AdapterConfig{};
    adapter_cfg.tool = tool;
    if (adapter_cfg.work_dir.empty()) adapter_cfg.work_dir = paths.tool_dir(tool) / "work";
    auto transport = make_transport(cfg);
    auto runner = make_runner(cfg);
    ToolRunResult result = adapter->run(snapshot, sbom, adapter_cfg, *transport, *runner);
    save_tool_result(paths, result);
    std::cout << to_string(tool) << " raw " << result.raw_count << " normalized "
              << result.normalized_count << " skipped " << result.skipped_count << " hash "
              << result.result_hash << "\n";
    return 0;
  }

  if (evaluate_cmd->parsed()) {
    RunPaths paths;
    paths.root = run_dir;
    Snapshot snapshot = load_snapshot(resolve_snapshot_dir(paths.root));
    auto tools = tools_with_findings(paths);
    EvaluationReport report = evaluate_run(paths, snapshot, tools);
    std::cout << render_metrics_markdown(report);
    return 0;
  }

  if (stats_cmd->parsed()) {
    RunPaths paths;
    paths.root = run_dir;
    Snapshot snapshot = load_snapshot(resolve_snapshot_dir(paths.root));
    auto tools = tools_with_findings(paths);
    if (tools.size() < 2)
      throw_error(ErrorKind::Usage, "stats-compare needs findings from at least two tools");
    DetectionMatrix matrix = matrix_from_run(paths, snapshot, tools);
    save_statistics(paths, matrix);
    return 0;
  }

  if (diff_gt_cmd->parsed()) {
    Snapshot s0 = load_snapshot(resolve_snapshot_dir(path_a));
    Snapshot s1 = load_snapshot(resolve_snapshot_dir(path_b));
    SnapshotDiff diff = diff_snapshots(s0, s1);
    const std::string md = render_snapshot_diff_markdown(diff);
    std::cout << md;
    if (!out_dir.empty()) {
      write_file(std::filesystem::path(out_dir) / "snapshot-diff.md", md);
      write_file(std::filesystem::path(out_dir) / "snapshot-diff.csv",
                 render_snapshot_diff_csv(diff));
      std::vector<nlohmann::json> removed, added;
      for (const auto& e : diff.removed) removed.push_back(e);
      for (const auto& e : diff.added) added.push_back(e);
      write_jsonl_file(std::filesystem::path(out_dir) / "removed.jsonl", removed);
      write_jsonl_file(std::filesystem::path(out_dir) / "added.jsonl", added);
    }
    return 0;
  }

  if (diff_eval_cmd->parsed()) {
    EvaluationReport e0 = read_json_file(path_a).get<EvaluationReport>();
    EvaluationReport e1 = read_json_file(path_b).get<EvaluationReport>();
    EvaluationDiff diff = diff_evaluations(e0, e1);
    const std::string md = render_eval_diff_markdown(e0, e1, diff);
    std::cout << md;
    if (!out_dir.empty()) {
      write_file(std::filesystem::path(out_dir) / "evaluation-diff.md", md);
      write_file(std::filesystem::path(out_dir) / "evaluation-diff.csv",
                 render_eval_diff_csv(e0, e1, diff));
      write_file(std::filesystem::path(out_dir) / "evaluation-diff-detailed.csv",
                 render_eval_diff_detailed_csv(e0, e1, diff));
    }
    return 0;
  }

  if (controlled_cmd->parsed()) {
    RunConfigFile cfg = load_run_config(config_path);
    if (!transport_override.empty())
      cfg.transport_mode = transport_mode_from_string(transport_override);
    auto transport = make_transport(cfg);
    auto runner = make_runner(cfg);
    OsvClient osv(*transport);
    RegistryClient registry(*transport);

    ControllerConfig controller_cfg;
    controller_cfg.build = cfg.build;
    controller_cfg.adapters = cfg.adapters;
    controller_cfg.tools = cfg.tools.empty() ? all_tools() : cfg.tools;
    controller_cfg.attempts_max = cfg.attempts_max;
    controller_cfg.repeats = cfg.repeats;

    ControllerEnv env =
        make_controller_env(controller_cfg, osv, registry, *transport, *runner);
    env.warn = [](const std::string& message) { std::cerr << "WARNING: " << message << "\n"; };
    AcceptedRun run = run_controlled(controller_cfg, env);

    RunPaths paths;
    if (run_dir.empty())
      paths = create_run_dir(cfg.output_dir, run.snapshot.digest);
    else {
      paths.root = run_dir;
      std::filesystem::create_directories(paths.root);
    }
    save_snapshot(run.snapshot, paths.snapshot_dir());
    write_file(paths.sbom_dir() / run.sbom.file_name(), run.sbom.bytes);
    for (size_t repeat = 0; repeat < run.repeat_results.size(); ++repeat)
      for (const auto& [tool, result] : run.repeat_results[repeat])
        save_tool_result(paths, result, repeat == 0 ? "" : "-r" + std::to_string(repeat));
    for (const auto& outcomes : run.repeat_outcomes)
      for (const auto& [tool, outcome] : outcomes) save_outcome(paths, outcome);

    nlohmann::json report_json = run.report;
    std::filesystem::create_directories(paths.evaluation_dir());
    write_json_file(paths.evaluation_dir() / "evaluation.json", report_json);
    write_file(paths.evaluation_dir() / "metrics.csv", render_metrics_csv(run.report));
    write_file(paths.evaluation_dir() / "metrics.md", render_metrics_markdown(run.report));
    save_statistics(paths, run.matrix);
    write_reports(paths, run.snapshot);

    auto attempts = nlohmann::json::array();
    for (const auto& a : run.attempts) {
      nlohmann::json hashes = nlohmann::json::object();
      for (const auto& [tool, hlist] : a.repeat_hashes) hashes[to_string(tool)] = hlist;
      attempts.push_back(nlohmann::json{{"error", a.error},
                                        {"finished_at", a.finished_at},
                                        {"gt_after", a.gt_after},
                                        {"gt_before", a.gt_before},
                                        {"index", a.index},
                                        {"repeat_hashes", hashes},
                                        {"started_at", a.started_at},
                                        {"status", a.status}});
    }
    write_json_file(paths.manifest_file(),
                    nlohmann::json{{"attempts", attempts},
                                   {"digest", run.snapshot.digest},
                                   {"repeat_divergence", run.repeat_divergence},
                                   {"repeats", controller_cfg.repeats},
                                   {"tools", [&] {
                                      auto arr = nlohmann::json::array();
                                      for (ToolId t : controller_cfg.tools)
                                        arr.push_back(to_string(t));
                                      return arr;
                                    }()}});
    std::cout << paths.root.string() << "\n";
    std::cout << "accepted after " << run.attempts.size() << " attempt(s), digest "
              << run.snapshot.digest << "\n";
    return 0;
  }

  if (report_cmd->parsed()) {
    RunPaths paths;
    paths.root = run_dir;
    Snapshot snapshot = load_snapshot(resolve_snapshot_dir(paths.root));
    write_reports(paths, snapshot);
    std::cout << paths.reports_dir().string() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    nlohmann::json j{{"error", {{"kind", std::string(to_string(e.kind()))},
                                {"message", e.what()}}}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
    std::cerr << j.dump() << "\n";
    return 3;
  }
}
