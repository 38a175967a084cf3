#pragma once

#include <string>
#include <vector>

#include "scabench/purl.hpp"
#include "scabench/snapshot.hpp"

namespace scabench {

struct SbomDocument {
  std::string bytes;           // exact emitted JSON
  std::string serial_number;   // urn:uuid:... derived from the snapshot digest
  std::string snapshot_digest;
  std::vector<PackageUrl> components;  // sorted by rendered purl

  std::string file_name() const;  // sbom-<digest-prefix>.cdx.json
};

// Deterministic CycloneDX 1.5 JSON: one component per unique (e,c,v),
// components sorted by purl, serial number and timestamp derived from the
// snapshot digest so repeated emission is byte-identical.
SbomDocument emit_sbom(const Snapshot& s);

}  // namespace scabench
