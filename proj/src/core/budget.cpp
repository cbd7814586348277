#include "budget.hpp"

#include <algorithm>
#include <cmath>

#include "analytic.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace rydcz::budget {

void EnsembleParams::validate() const {
    if (!(temperature_k > 0.0)) throw ContractViolation("EnsembleParams: temperature must be positive");
    if (!(atomic_mass_kg > 0.0)) throw ContractViolation("EnsembleParams: mass must be positive");
    if (!(density_um3 > 0.0)) throw ContractViolation("EnsembleParams: density must be positive");
    if (!(storage_wavelength_um > 0.0) || !(ground_spinwave_wavelength_um > 0.0))
        throw ContractViolation("EnsembleParams: wavelengths must be positive");
    if (rydberg_spinwave_wavelength_um && !(*rydberg_spinwave_wavelength_um > 0.0))
        throw ContractViolation("EnsembleParams: rydberg spin-wave wavelength must be positive");
    if (cavity_finesse && !(*cavity_finesse > 0.0))
        throw ContractViolation("EnsembleParams: cavity finesse must be positive");
}

double rydberg_spinwave_wavelength(const EnsembleParams& ens, const gate::DriveParams& drive) {
    if (ens.rydberg_spinwave_wavelength_um) return *ens.rydberg_spinwave_wavelength_um;
    // k_r = k1 - k2 for counter-propagating excitation beams
    return units::two_pi / drive.effective_wavevector();
}

double doppler_width(double temperature_k, const gate::DriveParams& drive, double mass_kg) {
    if (!(temperature_k > 0.0)) throw ContractViolation("doppler_width: temperature must be positive");
    if (!(mass_kg > 0.0)) throw ContractViolation("doppler_width: mass must be positive");
    const double v = std::sqrt(2.0 * units::k_boltzmann * temperature_k / mass_kg);  // um/us
    return v * drive.effective_wavevector();
}

namespace {

// fixed compensation calibrated on the unperturbed gate
double fidelity_with_fixed_compensation(const gate::ConfigAmplitudes& amps, double phi01_ref) {
    gate::GateMatrix g = gate::assemble_gate(amps);
    g = gate::compensate_single_qubit_phase(g, phi01_ref);
    return gate::fidelity(g, gate::cz_target());
}

}  // namespace

double doppler_averaged_infidelity(const gate::DriveParams& drive, const gate::PulseShape& pulse,
                                   double temperature_k, double mass_kg,
                                   const DopplerOptions& options) {
    if (options.quadrature_order < 3)
        throw ContractViolation("doppler_averaged_infidelity: quadrature order must be >= 3");
    const double w_1e = doppler_width(temperature_k, drive, mass_kg);
    const double v = options.blockade_v_over_omega * pulse.omega_eff;

    gate::RunGateOptions ropt;
    ropt.rel_tol = options.rel_tol;
    ropt.output_points = 2;

    // zero-Doppler calibration of the single-qubit phase correction
    gate::GateRun ref = gate::run_gate(drive, pulse, v, {0.0, 0.0}, ropt);
    const double phi01_ref = ref.phi01;

    const auto& gh = quadrature::gauss_hermite(options.quadrature_order);
    const int n = options.quadrature_order;

    // single-atom amplitudes per node
    std::vector<Complex> single(n);
    parallel_for(static_cast<size_t>(n), options.threads, [&](size_t k) {
        double shift = w_1e * gh.nodes[k];
        gate::GateRun r = gate::run_gate(drive, pulse, v, {0.0, shift}, ropt);
        single[k] = r.amplitudes.at(gate::Config::c01).return_amplitude;
    });

    // pair amplitudes, exploiting symmetry under node exchange
    struct PairJob { int i, j; };
    std::vector<PairJob> jobs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) jobs.push_back({i, j});
    std::vector<Complex> pair(jobs.size());
    parallel_for(jobs.size(), options.threads, [&](size_t k) {
        double si = w_1e * gh.nodes[jobs[k].i];
        double sj = w_1e * gh.nodes[jobs[k].j];
        gate::GateRun r = gate::run_gate(drive, pulse, v, {si, sj}, ropt);
        pair[k] = r.amplitudes.at(gate::Config::c11).return_amplitude;
    });

    const double norm = 1.0 / M_PI;  // 2-D Gauss-Hermite normalization
    double mean_f = 0.0, mean_w = 0.0;
    for (size_t k = 0; k < jobs.size(); ++k) {
        int i = jobs[k].i, j = jobs[k].j;
        double w = gh.weights[i] * gh.weights[j] * norm * (i == j ? 1.0 : 2.0);
        gate::ConfigAmplitudes amps;
        gate::ConfigAmplitude a;
        a.config = gate::Config::c00;
        amps[gate::Config::c00] = a;
        a.config = gate::Config::c01;
        a.return_amplitude = single[j];
        amps[gate::Config::c01] = a;
        a.config = gate::Config::c10;
        a.return_amplitude = single[i];
        amps[gate::Config::c10] = a;
        a.config = gate::Config::c11;
        a.return_amplitude = pair[k];
        amps[gate::Config::c11] = a;
        mean_f += w * fidelity_with_fixed_compensation(amps, phi01_ref);
        mean_w += w;
    }
    return 1.0 - mean_f / mean_w;
}

double decay_infidelity(const gate::DriveParams& drive, const gate::PulseShape& pulse,
                        DecayChannel which, double rel_tol, double blockade_v_over_omega) {
    gate::DriveParams d = drive;
    if (which == DecayChannel::intermediate)
        d.gamma_r = 0.0;
    else
        d.gamma_p = 0.0;
    gate::RunGateOptions opt;
    opt.rel_tol = rel_tol;
    opt.with_decay = true;
    opt.output_points = 2;
    gate::GateRun run = gate::run_gate(d, pulse, blockade_v_over_omega * pulse.omega_eff,
                                       {0.0, 0.0}, opt);
    gate::GateMatrix g = gate::assemble_gate(run.amplitudes);
    g = gate::compensate_single_qubit_phase(g, run.phi01);
    return 1.0 - gate::fidelity(g, gate::cz_target());
}

double thermal_coherence(double t_us, double spinwave_wavelength_um, double profile_width_um,
                         double thermal_speed_um_us) {
    if (t_us < 0.0) throw ContractViolation("thermal_coherence: time must be nonnegative");
    if (!(spinwave_wavelength_um > 0.0) || !(profile_width_um > 0.0) ||
        !(thermal_speed_um_us > 0.0))
        throw ContractViolation("thermal_coherence: parameters must be positive");
    const double tau = spinwave_wavelength_um / (units::two_pi * thermal_speed_um_us);
    const double xi = profile_width_um / thermal_speed_um_us;
    const double b = 1.0 + (t_us / xi) * (t_us / xi);
    return std::exp(-(t_us * t_us) / (tau * tau) / b) / (b * b);
}

double optical_depth(const EnsembleParams& ens, double blockade_radius_um) {
    ens.validate();
    if (!(blockade_radius_um > 0.0)) throw ContractViolation("optical_depth: R_b must be positive");
    double od = 4.0 / 3.0 * ens.density_um3 * blockade_radius_um * ens.storage_wavelength_um *
                ens.storage_wavelength_um;
    if (ens.cavity_finesse) od *= *ens.cavity_finesse / M_PI;
    return od;
}

double storage_infidelity(const EnsembleParams& ens, double blockade_radius_um, int retrievals) {
    if (retrievals < 1) throw ContractViolation("storage_infidelity: retrievals must be >= 1");
    const double od = optical_depth(ens, blockade_radius_um);
    if (od <= 1.0)
        throw OutOfRegime("storage_infidelity: optical depth " + std::to_string(od) +
                          " <= 1, no storage regime");
    const double eta = 1.0 - 1.0 / od;
    return 1.0 - std::pow(eta, retrievals);
}

double intensity_noise_infidelity(double rel_rms_1, double rel_rms_2) {
    if (rel_rms_1 < 0.0 || rel_rms_2 < 0.0)
        throw ContractViolation("intensity_noise_infidelity: RMS values must be nonnegative");
    const double s = 0.5 * rel_rms_1 + 0.5 * rel_rms_2;
    return M_PI * M_PI * s * s;
}

double spatial_inhomogeneity_infidelity(const TransverseProfile& laser,
                                        const TransverseProfile& photon,
                                        const gate::DriveParams& drive,
                                        const gate::PulseShape& pulse,
                                        const SpatialOptions& options) {
    if (!(laser.width_um > 0.0) || !(photon.width_um > 0.0))
        throw ContractViolation("spatial_inhomogeneity_infidelity: widths must be positive");
    const double v = options.blockade_v_over_omega * pulse.omega_eff;

    gate::RunGateOptions ropt;
    ropt.rel_tol = options.rel_tol;
    ropt.output_points = 2;

    gate::GateRun ref = gate::run_gate(drive, pulse, v, {0.0, 0.0}, ropt);
    const double phi01_ref = ref.phi01;

    // radial quadrature over the photon density exp(-2 (rho/w)^p) rho drho
    const int n = options.quadrature_order;
    const double cutoff = photon.width_um * (photon.order == 2 ? 3.0 : 1.6);
    auto gl = quadrature::gauss_legendre(n, 0.0, cutoff);
    std::vector<double> weight(n), scale(n);
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) {
        double rho = gl.nodes[k];
        weight[k] = gl.weights[k] * rho *
                    std::exp(-2.0 * std::pow(rho / photon.width_um, photon.order));
        wsum += weight[k];
        scale[k] = std::exp(-std::pow(rho / laser.width_um, laser.order));
    }
    for (double& w : weight) w /= wsum;

    if (options.same_position) {
        std::vector<gate::ConfigAmplitudes> amps(n);
        parallel_for(static_cast<size_t>(n), options.threads, [&](size_t k) {
            gate::RunGateOptions o = ropt;
            o.rabi_scale = {scale[k], scale[k]};
            amps[k] = gate::run_gate(drive, pulse, v, {0.0, 0.0}, o).amplitudes;
        });
        if (options.average_gate_matrix) {
            Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
            for (int k = 0; k < n; ++k) {
                gate::GateMatrix g = gate::assemble_gate(amps[k]);
                acc += weight[k] * gate::compensate_single_qubit_phase(g, phi01_ref).entries;
            }
            gate::GateMatrix mean;
            mean.entries = acc;
            return 1.0 - gate::fidelity(mean, gate::cz_target());
        }
        double mean_f = 0.0;
        for (int k = 0; k < n; ++k)
            mean_f += weight[k] * fidelity_with_fixed_compensation(amps[k], phi01_ref);
        return 1.0 - mean_f;
    }

    // independent transverse positions for the two excitations
    std::vector<Complex> single(n);
    parallel_for(static_cast<size_t>(n), options.threads, [&](size_t k) {
        gate::RunGateOptions o = ropt;
        o.rabi_scale = {1.0, scale[k]};
        gate::GateRun r = gate::run_gate(drive, pulse, v, {0.0, 0.0}, o);
        single[k] = r.amplitudes.at(gate::Config::c01).return_amplitude;
    });
    struct PairJob { int i, j; };
    std::vector<PairJob> jobs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) jobs.push_back({i, j});
    std::vector<Complex> pair(jobs.size());
    parallel_for(jobs.size(), options.threads, [&](size_t k) {
        gate::RunGateOptions o = ropt;
        o.rabi_scale = {scale[jobs[k].i], scale[jobs[k].j]};
        gate::GateRun r = gate::run_gate(drive, pulse, v, {0.0, 0.0}, o);
        pair[k] = r.amplitudes.at(gate::Config::c11).return_amplitude;
    });

    Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
    double mean_f = 0.0;
    for (size_t k = 0; k < jobs.size(); ++k) {
        int i = jobs[k].i, j = jobs[k].j;
        double w = weight[i] * weight[j] * (i == j ? 1.0 : 2.0);
        gate::ConfigAmplitudes amps;
        gate::ConfigAmplitude a;
        a.config = gate::Config::c00;
        amps[gate::Config::c00] = a;
        a.config = gate::Config::c01;
        a.return_amplitude = single[j];
        amps[gate::Config::c01] = a;
        a.config = gate::Config::c10;
        a.return_amplitude = single[i];
        amps[gate::Config::c10] = a;
        a.config = gate::Config::c11;
        a.return_amplitude = pair[k];
        amps[gate::Config::c11] = a;
        if (options.average_gate_matrix) {
            gate::GateMatrix g = gate::assemble_gate(amps);
            acc += w * gate::compensate_single_qubit_phase(g, phi01_ref).entries;
        } else {
            mean_f += w * fidelity_with_fixed_compensation(amps, phi01_ref);
        }
    }
    if (options.average_gate_matrix) {
        gate::GateMatrix mean;
        mean.entries = acc;
        return 1.0 - gate::fidelity(mean, gate::cz_target());
    }
    return 1.0 - mean_f;
}

const char* channel_name(Channel c) {
    switch (c) {
        case Channel::e_p: return "E_p";
        case Channel::e_r: return "E_r";
        case Channel::e_dop: return "E_dop";
        case Channel::e_th: return "E_th";
        case Channel::e_st: return "E_st";
        case Channel::e_blockade: return "E_blockade";
        case Channel::e_noise: return "E_noise";
        case Channel::e_spatial: return "E_spatial";
    }
    return "?";
}

double default_c6() {
    const double omega = units::mhz_to_rad_us(2.3);
    const double rb = 5.85;
    return omega * std::pow(rb, 6);
}

gate::PulseShape default_optimized_pulse(double omega_eff, double delta_over_omega_eff) {
    // calibrated optimum of the gaussian-ratio family (see pulse optimizer);
    // the dimensionless parameters depend only on delta/omega_eff
    if (delta_over_omega_eff >= 650.0)
        return gate::PulseShape::gaussian_scaled(omega_eff, 2.358, 2.464, 7.613);
    return gate::PulseShape::gaussian_scaled(omega_eff, 2.356, 2.463, 7.610);
}

ErrorBudget evaluate_budget(const EnsembleParams& ens, double omega_eff, double c6,
                            const SweepOptions& options) {
    ens.validate();
    ErrorBudget out;
    out.omega_eff = omega_eff;
    out.blockade_radius_um = analytic::blockade_radius(c6, omega_eff);

    gate::DriveParams drive = gate::default_drive(options.delta_over_omega_eff, omega_eff);
    gate::PulseShape pulse =
        options.pulse_ratio_peak > 0.0
            ? gate::PulseShape::gaussian_scaled(omega_eff, options.pulse_ratio_peak,
                                                options.pulse_width_scaled,
                                                options.pulse_t_gate_scaled)
            : default_optimized_pulse(omega_eff, options.delta_over_omega_eff);

    out.errors[Channel::e_p] =
        decay_infidelity(drive, pulse, DecayChannel::intermediate, options.rel_tol);
    out.errors[Channel::e_r] =
        decay_infidelity(drive, pulse, DecayChannel::rydberg, options.rel_tol);

    DopplerOptions dop;
    dop.quadrature_order = options.doppler_order;
    dop.rel_tol = options.rel_tol;
    dop.threads = options.threads;
    out.errors[Channel::e_dop] =
        doppler_averaged_infidelity(drive, pulse, ens.temperature_k, ens.atomic_mass_kg, dop);

    // thermal dephasing of the Rydberg spin wave, weighted by the fraction of
    // the gate the excitations actually spend in the Rydberg level
    {
        gate::RunGateOptions ropt;
        ropt.rel_tol = options.rel_tol;
        ropt.output_points = 200;
        gate::GateRun run = gate::run_gate(drive, pulse, 1e6 * omega_eff, {0.0, 0.0}, ropt);
        double exposure = 0.0;
        for (auto c : {gate::Config::c01, gate::Config::c10, gate::Config::c11})
            exposure += run.amplitudes.at(c).integrated_rydberg_population;
        exposure /= 4.0 * pulse.t_gate;
        const double v_th = units::thermal_speed(ens.temperature_k, ens.atomic_mass_kg);
        const double lambda_r = rydberg_spinwave_wavelength(ens, drive);
        const double eta =
            thermal_coherence(pulse.t_gate, lambda_r, out.blockade_radius_um, v_th);
        out.errors[Channel::e_th] = (1.0 - eta) * exposure;
        out.ground_spinwave_error =
            1.0 - thermal_coherence(pulse.t_gate, ens.ground_spinwave_wavelength_um,
                                    out.blockade_radius_um, v_th);
    }

    try {
        out.errors[Channel::e_st] =
            storage_infidelity(ens, out.blockade_radius_um, options.storage_retrievals);
    } catch (const OutOfRegime& e) {
        out.errors[Channel::e_st] = 1.0;
        out.flags.push_back(std::string("storage: ") + e.what());
    }

    out.errors[Channel::e_noise] =
        intensity_noise_infidelity(options.noise_rms.first, options.noise_rms.second);

    if (options.include_spatial) {
        TransverseProfile laser{1.3 * out.blockade_radius_um, 10};
        TransverseProfile photon{0.8 * out.blockade_radius_um, 10};
        SpatialOptions sopt;
        sopt.rel_tol = options.rel_tol;
        sopt.threads = options.threads;
        out.errors[Channel::e_spatial] =
            spatial_inhomogeneity_infidelity(laser, photon, drive, pulse, sopt);
    }
    if (options.include_blockade) out.errors[Channel::e_blockade] = options.blockade_error;

    double total = 1.0;
    for (const auto& [c, e] : out.errors) total *= 1.0 - std::clamp(e, 0.0, 1.0);
    out.total_fidelity = total;
    return out;
}

std::vector<ErrorBudget> budget_sweep(const EnsembleParams& ens,
                                      const std::vector<double>& omega_eff_grid, double c6,
                                      const SweepOptions& options) {
    if (omega_eff_grid.empty()) throw ContractViolation("budget_sweep: empty grid");
    std::vector<ErrorBudget> budgets(omega_eff_grid.size());
    SweepOptions inner = options;
    inner.threads = 1;
    parallel_for(omega_eff_grid.size(), options.threads, [&](size_t k) {
        budgets[k] = evaluate_budget(ens, omega_eff_grid[k], c6, inner);
    });
    return budgets;
}

}  // namespace rydcz::budget
