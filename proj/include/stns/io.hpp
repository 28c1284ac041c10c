#ifndef STNS_IO_HPP
#define STNS_IO_HPP

#include "stns/diagnostics.hpp"
#include "stns/grid.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stns {

// ---------------------------------------------------------------------------
// NDJSON record streams.  One JSON object per line; floats carry 17
// significant digits so a write/read round trip is value-exact.  A record
// file starts with the resolved-config echo object and ends with a summary
// object; intermediate lines are EnergyRecord rows.
// ---------------------------------------------------------------------------

std::string record_to_json(const EnergyRecord& r);
std::string summary_to_json(const TrajectorySummary& s);

EnergyRecord record_from_json(const std::string& line);

struct RecordFile {
    std::string config_line;  // raw config echo, if present
    std::vector<EnergyRecord> records;
    std::vector<std::string> other_lines;  // summaries and study tables, raw
};
RecordFile read_records(const std::string& path);

void write_records(const std::string& path, const std::string& config_line,
                   const std::vector<EnergyRecord>& records,
                   const std::string& summary_line);

// ---------------------------------------------------------------------------
// Binary snapshots ("STNS"): little-endian header
//   magic 'STNS' | u32 version | u32 N_g | f64 L | f64 t | u32 ncomp (=3)
// followed by 3 * N_g^3 f64 samples, component-major, x fastest.
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const std::string& path, const RealVectorField& u, double t);

struct Snapshot {
    RealVectorField field;
    double t = 0.0;
};
Snapshot read_snapshot(const std::string& path);

}  // namespace stns

#endif
