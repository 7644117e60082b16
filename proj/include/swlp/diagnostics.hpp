#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swlp/time_driver.hpp"

namespace swlp {

/// Non-conservative entropy U = (hu)^2 / (2h) + g h^2 / 2.
double entropy(double h, double hu, double g) noexcept;

/// Per-cell discrete entropy balance of one step,
///   residual_j = (U^{n+1} - U^n)/dt + (F_{j+1/2} - F_{j-1/2})/dx + g {hu d_x z}_j,
/// which must be non-positive up to round-off.
struct EntropyAudit {
    std::vector<double> entropy_before;
    std::vector<double> entropy_after;
    std::vector<double> flux;      ///< interfaces
    std::vector<double> source;    ///< cells, {hu d_x z}_j
    std::vector<double> residual;  ///< cells
    double max_residual = 0.0;
    std::size_t worst_cell = 0;
    double tolerance = 0.0;

    bool passes() const noexcept { return max_residual <= tolerance; }
};

/// 1e-10 g h_max^2 c_max over the state.
double entropy_tolerance(const FlowState& state, double g);

/// Requires a uniform relaxation speed; throws AuditUnavailable otherwise.
EntropyAudit entropy_audit(const StepData& step);

/// Auxiliary quantities of the Lagrangian entropy estimate (uniform a).
struct AuxEntropyQuantities {
    double a = 0.0;
    std::vector<double> eta;         ///< cells, ((w-)^2 + (w+)^2) / 2 at t^{n+1-}
    std::vector<double> q;           ///< interfaces, ((w+_j)^2 - (w-_{j+1})^2) / (4a)
    std::vector<double> pi_u_tilde;  ///< interfaces, pi* times the bracket-free velocity
    std::vector<double> I_before;    ///< cells, pi + a^2 tau at t^n
    std::vector<double> I_after;     ///< cells, at t^{n+1-}
    std::vector<double> energy;      ///< cells, u^2/2 + e(tau) at t^{n+1-}, e(tau) = g/(2 tau)
};
AuxEntropyQuantities aux_entropy_quantities(const StepData& step);

/// Bracket-free interface velocity u* + m_jump / (2a).
std::vector<double> bracket_free_velocity(const AcousticStepOutput& acoustic, const InterfaceSpeeds& speeds);

struct WellBalancedResidual {
    double max_abs_u = 0.0;
    double surface_variation = 0.0;  ///< max(h + z) - min(h + z)
};
WellBalancedResidual wellbalanced_residual(const FlowState& state, const Grid1D& grid);

struct ConservationReport {
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double momentum_initial = 0.0;
    double momentum_final = 0.0;
    double mass_drift = 0.0;            ///< |M_final - M_initial| / M_initial
    double momentum_drift = 0.0;        ///< relative to max |P| over the run (absolute if that is 0)
    double max_mass_imbalance = 0.0;    ///< per-step |dM - (flux in - out)| / M_initial
    double max_momentum_imbalance = 0.0;  ///< per step, relative to the largest term of the balance
    double net_mass_boundary = 0.0;
    double net_momentum_boundary = 0.0;
    double net_momentum_source = 0.0;
};

/// Per-step mass and momentum balance against the recorded boundary fluxes
/// and topography source.
ConservationReport conservation_ledger(const FlowState& initial, double dx, std::span<const StepRecord> records);

/// Runs the entropy audit on every step and stores the result in the record.
class EntropyObserver : public StepObserver {
public:
    void on_step(StepData& data) override;

    double max_residual() const noexcept { return max_residual_; }
    double max_ratio() const noexcept { return max_ratio_; }  ///< max residual / tolerance
    std::size_t steps_audited() const noexcept { return steps_; }
    std::size_t failures() const noexcept { return failures_; }

private:
    double max_residual_ = -std::numeric_limits<double>::infinity();
    double max_ratio_ = -std::numeric_limits<double>::infinity();
    std::size_t steps_ = 0;
    std::size_t failures_ = 0;
};

/// Tracks the minimum depth reached over a run.
class PositivityObserver : public StepObserver {
public:
    void on_start(const Grid1D& grid, const FlowState& state) override;
    void on_step(StepData& data) override;
    double min_h() const noexcept { return min_h_; }

private:
    double min_h_ = std::numeric_limits<double>::infinity();
};

}  // namespace swlp
