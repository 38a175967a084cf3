#pragma once

#include "scabench/clients.hpp"
#include "scabench/snapshot.hpp"

namespace scabench {

// Applies the selection pipeline to a component's release list: yanked
// out, pre-releases out (unless admitted), date window, then the most
// recent `version_cap` survivors. NuGet instead takes an evenly distributed
// selection across the ordered survivors.
std::vector<VersionRef> select_versions(const ComponentRef& component,
                                        const std::vector<RegistryRelease>& releases,
                                        const BuildConfig& cfg);

// End-to-end snapshot construction: curated components -> registry version
// listings -> selection -> OSV mapping -> dedup -> per-ecosystem target ->
// balancing, stats and digest. Any client failure aborts the whole build.
Snapshot build_snapshot(const BuildConfig& cfg, OsvClient& osv, RegistryClient& registry);

}  // namespace scabench
