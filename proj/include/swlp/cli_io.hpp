#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swlp/scenarios.hpp"
#include "swlp/time_driver.hpp"

namespace swlp {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitSolver = 3,
    kExitAudit = 4,
};

/// User request before defaulting; empty optionals take the scenario's values.
struct RunManifest {
    std::string scenario;
    std::string scheme = "exex-loc";
    std::optional<std::size_t> cells;
    std::optional<double> cfl;
    std::optional<double> g;
    std::optional<double> t_end;
    std::optional<double> kappa;
    std::optional<double> dt_limit_factor;
    std::string out_dir;
    std::vector<double> snapshot_times;
    std::vector<std::string> audits;
    std::uint64_t seed = 20170101;
};

/// A manifest with every field decided.
struct ResolvedRun {
    RunManifest manifest;
    Scenario scenario;
    Grid1D grid;
    FlowState initial;
    SchemeConfig config;

    /// "key = value" lines echoed in output headers.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Throws ConfigError.
ResolvedRun resolve(const RunManifest& manifest);

/// Shortest representation that round-trips through strtod (17 significant digits).
std::string format_double(double v);

/// '#'-prefixed header, then one comma-separated row x,z,h,hu,u,h+z per cell.
void write_snapshot(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& header,
                    const Grid1D& grid, const FlowState& state);

struct Snapshot {
    std::vector<std::pair<std::string, std::string>> header;
    double time = 0.0;
    std::vector<double> x, z, h, hu, u, surface;

    std::size_t size() const noexcept { return x.size(); }
    double dx() const;
};

/// Throws ConfigError on malformed input.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

void write_step_header(std::ostream& os);
void write_step_record(std::ostream& os, const StepRecord& r);

struct DifferenceReport {
    std::size_t refinement_ratio = 1;
    std::size_t cells = 0;  ///< comparison resolution
    double l1_h = 0.0;
    double linf_h = 0.0;
    double l1_u = 0.0;
    double linf_u = 0.0;
    double l1_surface = 0.0;
    double rel_l1_surface = 0.0;  ///< l1 of the h+z difference over l1 of (h+z) of the coarser run
};

/// L1 (dx-weighted) and Linf differences. When one snapshot is an integer
/// refinement of the other, fine cells are averaged onto the coarse grid first.
/// Throws ConfigError for incompatible grids.
DifferenceReport compare_snapshots(const Snapshot& a, const Snapshot& b);

/// Snapshot view of an in-memory state (no file round trip).
Snapshot make_snapshot(const Grid1D& grid, const FlowState& state);

/// Worker cap from SWLP_THREADS (default: hardware concurrency, at least 1).
unsigned worker_limit();

}  // namespace swlp
