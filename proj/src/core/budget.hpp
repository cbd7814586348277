#pragma once

// Imperfection channels of the gate: Doppler dephasing, spontaneous emission,
// thermal spin-wave decoherence, storage/retrieval efficiency, laser
// intensity noise, and transverse beam inhomogeneity, plus the gate-speed
// sweep aggregating them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gate.hpp"

namespace rydcz::budget {

struct EnsembleParams {
    double temperature_k = 1e-6;
    double atomic_mass_kg = units::mass_rb87;
    double density_um3 = 100.0;  // 1e14 cm^-3
    double storage_wavelength_um = 0.795;
    double ground_spinwave_wavelength_um = 1e5;  // 10 cm
    // absent -> computed from the drive wavelengths, 1/(1/lambda1 - 1/lambda2)
    std::optional<double> rydberg_spinwave_wavelength_um;
    std::optional<double> cavity_finesse;

    void validate() const;
};

double rydberg_spinwave_wavelength(const EnsembleParams& ens, const gate::DriveParams& drive);

// 1/e half-width of the two-photon Doppler detuning distribution, rad/us.
double doppler_width(double temperature_k, const gate::DriveParams& drive, double mass_kg);

struct DopplerOptions {
    int quadrature_order = 20;
    double rel_tol = 1e-9;
    double blockade_v_over_omega = 1e6;
    int threads = 1;
};

// 1 - <F> with one independent thermal velocity per atom (2-D Gauss-Hermite);
// the phase compensation stays fixed at its zero-Doppler calibration.
double doppler_averaged_infidelity(const gate::DriveParams& drive, const gate::PulseShape& pulse,
                                   double temperature_k, double mass_kg,
                                   const DopplerOptions& options = {});

enum class DecayChannel { intermediate, rydberg };

// 1 - F with only the selected decay rate enabled (pessimistic: all
// scattering counted as loss).
double decay_infidelity(const gate::DriveParams& drive, const gate::PulseShape& pulse,
                        DecayChannel which, double rel_tol = 1e-10,
                        double blockade_v_over_omega = 1e6);

// Motional coherence factor eta_th(t) of a stored spin wave of wavelength
// lambda and profile width w at thermal speed v.
double thermal_coherence(double t_us, double spinwave_wavelength_um, double profile_width_um,
                         double thermal_speed_um_us);

// Storage+retrieval infidelity 1 - eta^retrievals with eta = 1 - 1/OD and
// OD = 4/3 rho R_b Lambda^2 (times finesse/pi in a cavity).  Throws
// OutOfRegime for OD <= 1.
double storage_infidelity(const EnsembleParams& ens, double blockade_radius_um,
                          int retrievals = 4);

double optical_depth(const EnsembleParams& ens, double blockade_radius_um);

// 1 - F ~= pi^2 (rms1/2 + rms2/2)^2 for relative intensity noise over a 2pi pulse.
double intensity_noise_infidelity(double rel_rms_1, double rel_rms_2);

// Transverse intensity profile exp(-2 (rho/width)^order).
struct TransverseProfile {
    double width_um = 1.0;
    int order = 10;
};

struct SpatialOptions {
    int quadrature_order = 20;
    double rel_tol = 1e-9;
    double blockade_v_over_omega = 1e6;
    // false: the two excitations sample transverse positions independently;
    // true: both sit at the same radius
    bool same_position = false;
    // average the gate matrix over geometry before the fidelity metric
    // instead of averaging the fidelity
    bool average_gate_matrix = false;
    int threads = 1;
};

// Gate infidelity from transverse laser-intensity inhomogeneity sampled over
// the photon profile, with local Rabi scaling Omega ~ sqrt(I).
double spatial_inhomogeneity_infidelity(const TransverseProfile& laser,
                                        const TransverseProfile& photon,
                                        const gate::DriveParams& drive,
                                        const gate::PulseShape& pulse,
                                        const SpatialOptions& options = {});

enum class Channel { e_p, e_r, e_dop, e_th, e_st, e_blockade, e_noise, e_spatial };

const char* channel_name(Channel c);

struct ErrorBudget {
    double omega_eff = 0.0;
    double blockade_radius_um = 0.0;
    std::map<Channel, double> errors;
    double total_fidelity = 1.0;
    double ground_spinwave_error = 0.0;  // computed for reference; negligible
    std::vector<std::string> flags;
};

struct SweepOptions {
    double delta_over_omega_eff = 1000.0;
    // dimensionless optimized pulse (width, t_gate in 1/omega_eff units)
    double pulse_ratio_peak = 0.0;  // 0 -> built-in optimized values
    double pulse_width_scaled = 0.0;
    double pulse_t_gate_scaled = 0.0;
    int doppler_order = 20;
    double rel_tol = 1e-9;
    std::pair<double, double> noise_rms{1e-3, 1e-3};
    int storage_retrievals = 1;  // per-cycle convention plotted by the budget
    bool include_spatial = false;
    bool include_blockade = false;
    double blockade_error = 0.0;  // used when include_blockade is set
    int threads = 0;
};

ErrorBudget evaluate_budget(const EnsembleParams& ens, double omega_eff, double c6,
                            const SweepOptions& options);

std::vector<ErrorBudget> budget_sweep(const EnsembleParams& ens,
                                      const std::vector<double>& omega_eff_grid, double c6,
                                      const SweepOptions& options);

// C6 calibrated from the published operating point (omega_eff = 2pi*2.3 MHz,
// R_b = 5.85 um), in rad/us * um^6.
double default_c6();

// Dimensionless optimized pulse parameters used as repo-wide defaults.
gate::PulseShape default_optimized_pulse(double omega_eff, double delta_over_omega_eff);

}  // namespace rydcz::budget
