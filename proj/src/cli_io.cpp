#include "swlp/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "swlp/errors.hpp"

namespace swlp {

namespace {

const std::vector<std::string> kAudits{"entropy", "wb", "conservation", "whitham"};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, std::size_t line) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError(fmt::format("snapshot line {}: '{}' is not a number", line, t));
    }
    return v;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ResolvedRun::echo() const {
    const auto& c = config;
    return {
        {"scenario", scenario.name},
        {"scheme", to_string(c.variant)},
        {"cells", std::to_string(grid.n_cells)},
        {"x_min", format_double(grid.x_min)},
        {"x_max", format_double(grid.x_max)},
        {"g", format_double(c.g)},
        {"cfl", format_double(c.cfl_factor)},
        {"kappa", format_double(c.kappa)},
        {"t_end", format_double(c.t_end)},
        {"dt_limit_factor", c.dt_limit_factor ? format_double(*c.dt_limit_factor) : std::string("none")},
        {"bc_left", to_string(c.bc.left)},
        {"bc_right", to_string(c.bc.right)},
        {"seed", std::to_string(manifest.seed)},
    };
}

ResolvedRun resolve(const RunManifest& manifest) {
    ResolvedRun r;
    r.manifest = manifest;
    if (manifest.scenario.empty()) throw ConfigError("no scenario given");
    r.scenario = build_scenario(manifest.scenario, manifest.g);
    if (manifest.cells && *manifest.cells == 0) throw ConfigError("cells must be positive");
    r.grid = r.scenario.make_grid(manifest.cells);
    try {
        r.initial = r.scenario.initial_state(r.grid);
    } catch (const PositivityError& e) {
        throw ConfigError(fmt::format("scenario {} has an inadmissible initial state: {}", r.scenario.name, e.what()));
    }

    auto& c = r.config;
    c.variant = parse_scheme(manifest.scheme);
    c.kappa = manifest.kappa.value_or(kDefaultKappa);
    c.cfl_factor = manifest.cfl.value_or(r.scenario.cfl_factor);
    c.dt_limit_factor = manifest.dt_limit_factor ? manifest.dt_limit_factor : r.scenario.dt_limit_factor;
    c.g = r.scenario.g;
    c.t_end = manifest.t_end.value_or(r.scenario.t_end);
    c.bc = r.scenario.bc;
    c.validate();

    for (double t : manifest.snapshot_times) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError(fmt::format("invalid snapshot time {}", t));
    }
    for (const auto& a : manifest.audits) {
        if (std::find(kAudits.begin(), kAudits.end(), a) == kAudits.end()) {
            throw ConfigError(fmt::format("unknown audit '{}' (expected entropy, wb, conservation or whitham)", a));
        }
    }
    return r;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_snapshot(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& header,
                    const Grid1D& grid, const FlowState& state) {
    for (const auto& [k, v] : header) fmt::print(os, "# {} = {}\n", k, v);
    fmt::print(os, "# time = {}\n", format_double(state.time));
    fmt::print(os, "# x,z,h,hu,u,h+z\n");
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double h = state.h[j];
        const double hu = state.hu[j];
        fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", grid.cell_centers[j], grid.z[j], h, hu,
                   hu / h, h + grid.z[j]);
    }
}

double Snapshot::dx() const {
    if (x.size() >= 2) return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (const auto& [k, v] : header) {
        if (k == "x_max") {
            for (const auto& [k2, v2] : header) {
                if (k2 == "x_min") return std::strtod(v.c_str(), nullptr) - std::strtod(v2.c_str(), nullptr);
            }
        }
    }
    return 1.0;
}

Snapshot read_snapshot(std::istream& is) {
    Snapshot s;
    std::string line;
    std::size_t lineno = 0;
    bool saw_columns = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body == "x,z,h,hu,u,h+z") {
                saw_columns = true;
                continue;
            }
            if (body.rfind("FAILED", 0) == 0) throw ConfigError(fmt::format("snapshot marks a failed run: {}", body));
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                auto key = trim(body.substr(0, eq));
                auto value = trim(body.substr(eq + 1));
                if (key == "time") s.time = parse_number(value, lineno);
                s.header.emplace_back(std::move(key), std::move(value));
            }
            continue;
        }
        if (!saw_columns) throw ConfigError(fmt::format("snapshot line {}: data before the column header", lineno));
        std::stringstream ss(line);
        std::string field;
        std::vector<double> row;
        while (std::getline(ss, field, ',')) row.push_back(parse_number(field, lineno));
        if (row.size() != 6) {
            throw ConfigError(fmt::format("snapshot line {}: expected 6 columns, got {}", lineno, row.size()));
        }
        s.x.push_back(row[0]);
        s.z.push_back(row[1]);
        s.h.push_back(row[2]);
        s.hu.push_back(row[3]);
        s.u.push_back(row[4]);
        s.surface.push_back(row[5]);
    }
    if (s.x.empty()) throw ConfigError("snapshot holds no cells");
    return s;
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open snapshot '{}'", path));
    return read_snapshot(in);
}

void write_step_header(std::ostream& os) {
    os << "step,t,dt,dt_explicit_formula,dt_implicit_formula,total_mass,total_momentum,min_h,"
          "max_entropy_residual,whitham_violations,halvings,implicit_dt_fallback\n";
}

void write_step_record(std::ostream& os, const StepRecord& r) {
    fmt::print(os, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{},{}\n", r.step, r.t, r.dt,
               r.dt_explicit_formula, r.dt_implicit_formula, r.total_mass, r.total_momentum, r.min_h,
               r.max_entropy_residual, r.whitham_violations, r.halvings, r.implicit_dt_fallback ? 1 : 0);
}

Snapshot make_snapshot(const Grid1D& grid, const FlowState& state) {
    Snapshot s;
    s.time = state.time;
    s.header = {{"x_min", format_double(grid.x_min)}, {"x_max", format_double(grid.x_max)}};
    s.x = grid.cell_centers;
    s.z = grid.z;
    s.h = state.h;
    s.hu = state.hu;
    for (std::size_t j = 0; j < state.size(); ++j) {
        s.u.push_back(state.hu[j] / state.h[j]);
        s.surface.push_back(state.h[j] + grid.z[j]);
    }
    return s;
}

namespace {

// Averages groups of `r` consecutive cells.
Snapshot coarsen(const Snapshot& fine, std::size_t r) {
    Snapshot c;
    c.time = fine.time;
    c.header = fine.header;
    const std::size_t n = fine.size() / r;
    const double w = 1.0 / static_cast<double>(r);
    for (std::size_t i = 0; i < n; ++i) {
        double x = 0, z = 0, h = 0, hu = 0;
        for (std::size_t k = i * r; k < (i + 1) * r; ++k) {
            x += fine.x[k];
            z += fine.z[k];
            h += fine.h[k];
            hu += fine.hu[k];
        }
        c.x.push_back(x * w);
        c.z.push_back(z * w);
        c.h.push_back(h * w);
        c.hu.push_back(hu * w);
        c.u.push_back(hu / h);
        c.surface.push_back((h + z) * w);
    }
    return c;
}

}  // namespace

DifferenceReport compare_snapshots(const Snapshot& a, const Snapshot& b) {
    if (a.size() == 0 || b.size() == 0) throw ConfigError("cannot compare empty snapshots");
    const bool a_fine = a.size() >= b.size();
    const Snapshot& fine = a_fine ? a : b;
    const Snapshot& coarse = a_fine ? b : a;
    if (fine.size() % coarse.size() != 0) {
        throw ConfigError(fmt::format("grids of {} and {} cells are not integer refinements", a.size(), b.size()));
    }
    DifferenceReport rep;
    rep.refinement_ratio = fine.size() / coarse.size();
    rep.cells = coarse.size();
    const Snapshot avg = rep.refinement_ratio == 1 ? fine : coarsen(fine, rep.refinement_ratio);

    const double dx = coarse.dx();
    const double left_c = coarse.x.front() - 0.5 * dx;
    const double left_f = fine.x.front() - 0.5 * fine.dx();
    if (std::abs(left_c - left_f) > 1e-9 * std::max(1.0, std::abs(dx * coarse.size()))) {
        throw ConfigError("snapshots cover different domains");
    }

    double ref = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        const double dh = std::abs(avg.h[j] - coarse.h[j]);
        const double du = std::abs(avg.u[j] - coarse.u[j]);
        const double ds = std::abs(avg.surface[j] - coarse.surface[j]);
        rep.l1_h += dh * dx;
        rep.l1_u += du * dx;
        rep.l1_surface += ds * dx;
        rep.linf_h = std::max(rep.linf_h, dh);
        rep.linf_u = std::max(rep.linf_u, du);
        ref += std::abs(coarse.surface[j]) * dx;
    }
    rep.rel_l1_surface = ref > 0.0 ? rep.l1_surface / ref : 0.0;
    return rep;
}

unsigned worker_limit() {
    if (const char* env = std::getenv("SWLP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace swlp
