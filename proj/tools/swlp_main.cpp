#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "swlp/cli_io.hpp"
#include "swlp/diagnostics.hpp"
#include "swlp/errors.hpp"
#include "swlp/scenarios.hpp"
#include "swlp/time_driver.hpp"

namespace fs = std::filesystem;
using namespace swlp;

namespace {

void add_manifest_options(CLI::App* sub, RunManifest& m, bool scenario_required = true) {
    auto* opt = sub->add_option("--scenario", m.scenario, "scenario name (see list-scenarios)");
    if (scenario_required) opt->required();
    sub->add_option("--scheme", m.scheme, "exex-loc, exex-glob, imex-loc or imex-glob")->capture_default_str();
    sub->add_option("--cells", m.cells, "number of cells");
    sub->add_option("--cfl", m.cfl, "CFL factor in (0, 1]");
    sub->add_option("--g", m.g, "gravity");
    sub->add_option("--kappa", m.kappa, "relaxation safety factor (>= 1)");
    sub->add_option("--t-end", m.t_end, "final time");
    sub->add_option("--dt-limit-factor", m.dt_limit_factor, "cap implicit steps at this multiple of the explicit one");
    sub->add_option("--seed", m.seed, "random seed")->capture_default_str();
}

class SnapshotWriter : public StepObserver {
public:
    SnapshotWriter(fs::path dir, std::vector<std::pair<std::string, std::string>> header)
        : dir_(std::move(dir)), header_(std::move(header)) {}

    void on_snapshot(const Grid1D& grid, const FlowState& state) override {
        const fs::path path = dir_ / fmt::format("snapshot_t{:g}.csv", state.time);
        std::ofstream os(path);
        if (!os) throw ConfigError(fmt::format("cannot write {}", path.string()));
        write_snapshot(os, header_, grid, state);
        written.push_back(path.string());
    }

    std::vector<std::string> written;

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> header_;
};

class StepWriter : public StepObserver {
public:
    explicit StepWriter(const fs::path& path) : os_(path) {
        if (!os_) throw ConfigError(fmt::format("cannot write {}", path.string()));
        write_step_header(os_);
    }
    void on_step(StepData& data) override { write_step_record(os_, data.record); }

private:
    std::ofstream os_;
};

struct AuditLine {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<AuditLine> evaluate_audits(const ResolvedRun& r, const RunResult& res, const EntropyObserver* entropy_obs) {
    std::vector<AuditLine> out;
    for (const auto& a : r.manifest.audits) {
        if (a == "entropy") {
            out.push_back({a, entropy_obs->failures() == 0,
                           fmt::format("steps={} failures={} max_residual={:.3e} max_residual/tol={:.3e}",
                                       entropy_obs->steps_audited(), entropy_obs->failures(),
                                       entropy_obs->max_residual(), entropy_obs->max_ratio())});
        } else if (a == "wb") {
            const auto init = wellbalanced_residual(r.initial, r.grid);
            const auto fin = wellbalanced_residual(res.final_state, r.grid);
            double scale = 0.0;
            for (std::size_t j = 0; j < r.grid.size(); ++j) scale = std::max(scale, r.initial.h[j] + r.grid.z[j]);
            const bool at_rest = init.max_abs_u == 0.0 && init.surface_variation <= 1e-14 * scale;
            const bool pass = !at_rest || (fin.surface_variation <= 1e-12 * scale &&
                                           fin.max_abs_u <= 1e-12 * std::sqrt(r.config.g * scale));
            out.push_back({a, pass,
                           fmt::format("{} max|u|={:.3e} surface_variation={:.3e}",
                                       at_rest ? "lake-at-rest start:" : "not a lake-at-rest start (report only):",
                                       fin.max_abs_u, fin.surface_variation)});
        } else if (a == "conservation") {
            const auto rep = conservation_ledger(r.initial, r.grid.dx, res.records);
            const bool pass = rep.max_mass_imbalance <= 1e-12 && rep.max_momentum_imbalance <= 1e-10;
            out.push_back({a, pass,
                           fmt::format("mass_drift={:.3e} max_mass_imbalance={:.3e} max_momentum_imbalance={:.3e} "
                                       "net_boundary_mass={:.6g}",
                                       rep.mass_drift, rep.max_mass_imbalance, rep.max_momentum_imbalance,
                                       rep.net_mass_boundary)});
        } else if (a == "whitham") {
            std::size_t v = 0, steps = 0;
            for (const auto& rec : res.records) {
                v += rec.whitham_violations;
                if (rec.whitham_violations) ++steps;
            }
            out.push_back({a, v == 0, fmt::format("violations={} steps_with_violations={}", v, steps)});
        }
    }
    return out;
}

int execute(const RunManifest& m, const std::string& out_dir, bool quiet) {
    const ResolvedRun r = resolve(m);
    const bool want_entropy = std::find(m.audits.begin(), m.audits.end(), "entropy") != m.audits.end();
    if (want_entropy && speed_mode(r.config.variant) == RelaxSpeedPolicy::Mode::Local) {
        throw ConfigError("the entropy audit needs a global relaxation speed (exex-glob or imex-glob)");
    }

    std::vector<StepObserver*> observers;
    EntropyObserver entropy_obs;
    if (want_entropy) observers.push_back(&entropy_obs);
    std::unique_ptr<SnapshotWriter> snaps;
    std::unique_ptr<StepWriter> steps;
    fs::path dir;
    if (!out_dir.empty()) {
        dir = out_dir;
        fs::create_directories(dir);
        snaps = std::make_unique<SnapshotWriter>(dir, r.echo());
        steps = std::make_unique<StepWriter>(dir / "steps.csv");
        observers.push_back(snaps.get());
        observers.push_back(steps.get());
    }

    const auto write_summary = [&](const std::string& body) {
        if (dir.empty()) return;
        std::ofstream os(dir / "summary.txt");
        os << body;
    };

    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;
    try {
        res = run_to(r.grid, r.initial, r.config, observers, m.snapshot_times);
    } catch (const SolverError& e) {
        write_summary(fmt::format("# FAILED: {}\n", e.what()));
        throw;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto audits = evaluate_audits(r, res, &entropy_obs);
    std::string summary;
    for (const auto& [k, v] : r.echo()) summary += fmt::format("{} = {}\n", k, v);
    summary += fmt::format("final_time = {}\nsteps = {}\nmean_dt = {:.17g}\nwall_time_s = {:.6f}\n",
                           format_double(res.final_state.time), res.steps(), res.mean_dt(), wall);
    bool ok = true;
    for (const auto& a : audits) {
        summary += fmt::format("audit_{} = {} {}\n", a.name, a.pass ? "PASS" : "FAIL", a.detail);
        ok = ok && a.pass;
    }
    write_summary(summary);
    if (!quiet) std::cout << summary;
    return ok ? kExitOk : kExitAudit;
}

int compare_runs(const RunManifest& a, const RunManifest& b) {
    const auto run_one = [](const RunManifest& m) {
        const ResolvedRun r = resolve(m);
        const auto res = run_to(r.grid, r.initial, r.config);
        return make_snapshot(r.grid, res.final_state);
    };
    const auto rep = compare_snapshots(run_one(a), run_one(b));
    fmt::print("cells = {}\nrefinement_ratio = {}\nl1_h = {:.6e}\nlinf_h = {:.6e}\nl1_u = {:.6e}\nlinf_u = {:.6e}\n"
               "l1_surface = {:.6e}\nrel_l1_surface = {:.6e}\n",
               rep.cells, rep.refinement_ratio, rep.l1_h, rep.linf_h, rep.l1_u, rep.linf_u, rep.l1_surface,
               rep.rel_l1_surface);
    return kExitOk;
}

int efficiency(const RunManifest& base, const std::vector<std::string>& schemes) {
    struct Row {
        std::string scheme;
        std::size_t steps = 0;
        double mean_dt = 0.0;
        double wall = 0.0;
        std::string error;
    };
    std::vector<ResolvedRun> runs;
    for (const auto& s : schemes) {
        RunManifest m = base;
        m.scheme = s;
        runs.push_back(resolve(m));
    }
    std::vector<Row> rows(runs.size());
    std::size_t next = 0;
    std::mutex mu;
    const auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= runs.size()) return;
                i = next++;
            }
            Row& row = rows[i];
            row.scheme = to_string(runs[i].config.variant);
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const auto res = run_to(runs[i].grid, runs[i].initial, runs[i].config);
                row.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.steps = res.steps();
                row.mean_dt = res.mean_dt();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const unsigned n_workers = std::min<unsigned>(worker_limit(), static_cast<unsigned>(runs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    fmt::print("{:<10} {:>10} {:>14} {:>12}\n", "scheme", "steps", "mean_dt", "wall_s");
    bool failed = false;
    const Row* imex = nullptr;
    const Row* exex = nullptr;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            fmt::print("{:<10} FAILED: {}\n", row.scheme, row.error);
            failed = true;
            continue;
        }
        fmt::print("{:<10} {:>10} {:>14.6e} {:>12.3f}\n", row.scheme, row.steps, row.mean_dt, row.wall);
        if (row.scheme == "imex-loc") imex = &row;
        if (row.scheme == "exex-loc") exex = &row;
    }
    if (imex && exex) fmt::print("mean_dt ratio imex-loc/exex-loc = {:.4f}\n", imex->mean_dt / exex->mean_dt);
    return failed ? kExitSolver : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrange-projection solver for the 1D shallow-water equations with topography"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file with option values (use [run], [compare], ... sections)");

    RunManifest run_m;
    std::string run_out;
    auto* run = app.add_subcommand("run", "run one scenario and write snapshots");
    add_manifest_options(run, run_m);
    run->add_option("--out", run_out, "output directory")->required();
    run->add_option("--snapshot-times", run_m.snapshot_times, "extra snapshot times")->delimiter(',');
    run->add_option("--audit", run_m.audits, "entropy, wb, conservation, whitham")->delimiter(',');

    RunManifest audit_m;
    std::string audit_out;
    auto* audit = app.add_subcommand("audit", "run one scenario and report audits");
    add_manifest_options(audit, audit_m);
    audit->add_option("--audit", audit_m.audits, "entropy, wb, conservation, whitham (default: all applicable)")
        ->delimiter(',');
    audit->add_option("--out", audit_out, "optional output directory");

    RunManifest cmp_a;
    std::optional<std::string> scheme_b;
    std::optional<std::size_t> cells_b;
    std::vector<std::string> files;
    auto* cmp = app.add_subcommand("compare", "difference norms of two snapshots or two runs");
    cmp->add_option("files", files, "two snapshot files")->expected(0, 2);
    add_manifest_options(cmp, cmp_a, false);
    cmp->add_option("--scheme-b", scheme_b, "scheme of the second run (default: same)");
    cmp->add_option("--cells-b", cells_b, "cells of the second run (default: same)");

    RunManifest eff_m;
    std::vector<std::string> eff_schemes{"exex-loc", "exex-glob", "imex-loc", "imex-glob"};
    auto* eff = app.add_subcommand("efficiency", "steps, mean dt and wall time per scheme");
    add_manifest_options(eff, eff_m);
    eff->add_option("--schemes", eff_schemes, "schemes to compare")->delimiter(',')->capture_default_str();

    app.add_subcommand("list-scenarios", "print the scenario catalogue");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return execute(run_m, run_out, false);
        if (*audit) {
            if (audit_m.audits.empty()) {
                audit_m.audits = {"wb", "conservation", "whitham"};
                if (speed_mode(parse_scheme(audit_m.scheme)) == RelaxSpeedPolicy::Mode::Global) {
                    audit_m.audits.push_back("entropy");
                }
            }
            return execute(audit_m, audit_out, false);
        }
        if (*cmp) {
            if (files.size() == 2) {
                const auto rep = compare_snapshots(read_snapshot_file(files[0]), read_snapshot_file(files[1]));
                fmt::print("cells = {}\nrefinement_ratio = {}\nl1_h = {:.6e}\nlinf_h = {:.6e}\nl1_u = {:.6e}\n"
                           "linf_u = {:.6e}\nl1_surface = {:.6e}\nrel_l1_surface = {:.6e}\n",
                           rep.cells, rep.refinement_ratio, rep.l1_h, rep.linf_h, rep.l1_u, rep.linf_u,
                           rep.l1_surface, rep.rel_l1_surface);
                return kExitOk;
            }
            if (!files.empty()) throw ConfigError("compare takes exactly two snapshot files");
            if (cmp_a.scenario.empty()) throw ConfigError("compare needs two snapshot files or --scenario");
            RunManifest cmp_b = cmp_a;
            if (scheme_b) cmp_b.scheme = *scheme_b;
            if (cells_b) cmp_b.cells = *cells_b;
            return compare_runs(cmp_a, cmp_b);
        }
        if (*eff) return efficiency(eff_m, eff_schemes);
        for (const auto& name : scenario_names()) {
            const auto s = build_scenario(name);
            fmt::print("{:<28} {}\n", name, s.description);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        fmt::print(std::cerr, "configuration error: {}\n", e.what());
        return kExitConfig;
    } catch (const AuditUnavailable& e) {
        fmt::print(std::cerr, "configuration error: {}\n", e.what());
        return kExitConfig;
    } catch (const SolverError& e) {
        fmt::print(std::cerr, "solver failure: {}\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kExitSolver;
    }
}
