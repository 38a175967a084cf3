#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

namespace {

// Identity adapter: findings come verbatim from a JSONL fixture. Used for
// offline evaluation runs and for exercising the pipeline end to end.
class ReplayAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::Replay; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument&, const AdapterConfig& cfg,
                    Transport&, CommandRunner&) override {
    if (cfg.findings_fixture.empty())
      throw_error(ErrorKind::Usage, "replay adapter needs a findings fixture path");

    adapter_detail::FindingCollector collector(ToolId::Replay, snapshot);
    for (const auto& row : read_jsonl_file(cfg.findings_fixture)) {
      try {
        auto finding = row.get<NormalizedFinding>();
        collector.add(std::move(finding));
      } catch (const std::exception& e) {
        collector.skip("decode", nlohmann::json{{"error", e.what()}, {"row", row}});
      }
    }
    auto result = collector.finish();
    result.raw_artifacts.push_back(
        nlohmann::json{{"fixture", cfg.findings_fixture.string()}});
    return result;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_replay_adapter() { return std::make_unique<ReplayAdapter>(); }

}  // namespace scabench
