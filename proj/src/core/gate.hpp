#pragma once

// Two-qubit CZ gate model: per-configuration Hamiltonians of the driven
// {|1>,|p>,|r>} ladder, the gate protocol runner, phase compensation, and the
// phase-sensitive fidelity metric.

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>

#include "hamiltonian.hpp"
#include "propagate.hpp"
#include "units.hpp"

namespace rydcz::gate {

// Two-photon excitation parameters.  Angular frequencies in rad/us, red
// intermediate detuning positive by convention.
struct DriveParams {
    double omega1_peak = 0.0;
    double omega2_peak = 0.0;
    double delta = 0.0;
    double lambda1_um = 0.4217;
    double lambda2_um = 1.006;
    double gamma_p = units::rate_from_lifetime_ns(129.0);
    double gamma_r = units::rate_from_lifetime_us(343.0);
    bool counter_propagating = true;

    void validate() const;

    // effective two-photon wavevector |k1 -+ k2| in um^-1
    double effective_wavevector() const;
};

enum class PulseFamily { constant, gaussian_ratio };

// Intensity-modulation profile under the constant two-photon drive
// constraint omega1(t)*omega2(t) = 2*delta*omega_eff for all t.
struct PulseShape {
    PulseFamily family = PulseFamily::constant;
    double omega_eff = 0.0;   // rad/us, held constant over the pulse
    double ratio_peak = 1.0;  // extremum of omega1/omega2 (reached at t_center)
    double width = 0.0;       // us, 1/e^2 width of the ratio modulation
    double t_center = 0.0;    // us
    double t_gate = 0.0;      // us

    void validate() const;

    double ratio(double t) const;

    // sampled Rabi frequencies at time t for intermediate detuning delta
    void rabi(double t, double delta, double& omega1, double& omega2) const;

    // profile with times specified in units of 1/omega_eff
    static PulseShape gaussian_scaled(double omega_eff, double ratio_peak, double width_scaled,
                                      double t_gate_scaled);
    static PulseShape constant_scaled(double omega_eff, double ratio, double t_gate_scaled);
};

// Paper defaults at a given operating point (detuning ratio and gate speed).
DriveParams default_drive(double delta_over_omega_eff, double omega_eff);

// Two-qubit computational configurations in basis order (00, 01, 10, 11).
enum class Config { c00 = 0, c01 = 1, c10 = 2, c11 = 3 };

struct ConfigAmplitude {
    Config config = Config::c00;
    Complex return_amplitude{1.0, 0.0};
    double max_rydberg_population = 0.0;     // max over time of <n_r>
    double max_p_population = 0.0;           // max over time of <n_p>
    double integrated_rydberg_population = 0.0;  // integral of <n_r> dt, us
    double integrated_p_population = 0.0;        // integral of <n_p> dt, us
};

using ConfigAmplitudes = std::map<Config, ConfigAmplitude>;

// 4x4 complex gate matrix over (00, 01, 10, 11).
struct GateMatrix {
    Eigen::Matrix4cd entries = Eigen::Matrix4cd::Identity();
};

GateMatrix cz_target();

// Single-atom 3x3 Hamiltonian on {|1>,|p>,|r>}: omega1/2 on 1<->p, omega2/2
// on p<->r, delta on the p diagonal, doppler_shift on the r diagonal.
HamiltonianPtr build_single_hamiltonian(const DriveParams& drive, const PulseShape& pulse,
                                        double doppler_shift);

// Two-atom 9x9 tensor sum plus V on |rr><rr|; basis index 3*a + b.
HamiltonianPtr build_pair_hamiltonian(const DriveParams& drive, const PulseShape& pulse, double v,
                                      std::pair<double, double> doppler_shifts);

// Pair Hamiltonian in the hard-blockade limit: |rr> removed (8x8).  Valid for
// V far above every other energy scale; the neglected admixture is of order
// (omega_eff / (sqrt(2) V))^2.
HamiltonianPtr build_pair_hamiltonian_blockaded(const DriveParams& drive, const PulseShape& pulse,
                                                std::pair<double, double> doppler_shifts);

struct RunGateOptions {
    double rel_tol = 1e-10;
    bool with_decay = false;
    int output_points = 400;
    // V/omega_eff at which the |rr> level is dropped instead of integrated
    double hard_blockade_ratio = 1e5;
    // per-atom Rabi-frequency scale factors (spatial inhomogeneity studies)
    std::pair<double, double> rabi_scale{1.0, 1.0};
};

struct GateRun {
    ConfigAmplitudes amplitudes;
    double phi01 = 0.0;  // arg of the 01 return amplitude, (-pi, pi]
    double phi11 = 0.0;
    // |rr> phase-leakage integral phi = int P_rr V dt of the 11 run
    double leakage_phase = 0.0;
    // trajectories kept for diagnostics (11 and 01 runs)
    Trajectory traj01, traj11;
};

// Run the protocol for all four configurations.  00 is analytic (amplitude
// 1); 10 reuses the 01 propagation when the Doppler pair is symmetric and the
// Rabi scales match.
GateRun run_gate(const DriveParams& drive, const PulseShape& pulse, double v,
                 std::pair<double, double> doppler, const RunGateOptions& options = {});

// diag(a00, a01, a10, a11) from a complete set of amplitudes.
GateMatrix assemble_gate(const ConfigAmplitudes& amps);

// Appendix-style single-qubit phase correction: multiply by
// diag(1, e^{i d}, e^{i d}, e^{2 i d}) with d = pi - phi01.
GateMatrix compensate_single_qubit_phase(const GateMatrix& g, double phi01);

// Phase-sensitive average gate fidelity, F = [Tr(MM+) + |Tr M|^2] / 20 with
// M = ideal^dagger * gate.
double fidelity(const GateMatrix& gate, const GateMatrix& ideal);

// principal value of phi11 - 2*phi01 + pi (the CZ phase condition residual)
double phase_mismatch(double phi01, double phi11);

double wrap_angle(double x);

// Time-integrated Rydberg population of the reference protocols, for the
// suppression comparison: a resonant pi - gap(2pi) - pi blockade sequence
// spends 3*pi/omega_eff atom-us in the Rydberg state; a single resonant
// 2pi pulse at the blockade-enhanced rate spends pi/(sqrt(2)*omega_eff).
double reference_pi_gap_pi_rydberg_exposure(double omega_eff);
double reference_2pi_pulse_rydberg_exposure(double omega_eff);

}  // namespace rydcz::gate
