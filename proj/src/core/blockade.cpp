#include "blockade.hpp"

#include <cmath>

#include "errors.hpp"
#include "parallel.hpp"

namespace rydcz::blockade {

double pair_infidelity(double d_over_rb, const gate::DriveParams& drive,
                       const gate::PulseShape& pulse, double rel_tol) {
    if (!(d_over_rb > 0.0)) throw ContractViolation("pair_infidelity: D/R_b must be positive");
    const double v = pulse.omega_eff / std::pow(d_over_rb, 6);
    gate::RunGateOptions opt;
    opt.rel_tol = rel_tol;
    opt.output_points = 2;
    gate::GateRun run = gate::run_gate(drive, pulse, v, {0.0, 0.0}, opt);
    gate::GateMatrix g = gate::assemble_gate(run.amplitudes);
    g = gate::compensate_single_qubit_phase(g, run.phi01);
    return 1.0 - gate::fidelity(g, gate::cz_target());
}

namespace {

struct NodeResult {
    Complex a11;
    double leak_phase;
};

SpinwaveResult evaluate(const SpinWaveProfile& profile, const InteractionModel& model,
                        const gate::DriveParams& drive, const gate::PulseShape& pulse,
                        const SpinwaveOptions& options, const SeparationSampler& sampler) {
    SeparationDistribution dist = separation_distribution(profile, model, sampler);
    const double vb = model.c6 / std::pow(model.rb_par, 6);

    gate::RunGateOptions ropt;
    ropt.rel_tol = options.rel_tol;
    ropt.output_points = 400;  // dense output feeds the leakage-phase integral

    // the single-atom channel does not see the interaction
    gate::GateRun ref = gate::run_gate(drive, pulse, 1e8 * pulse.omega_eff, {0.0, 0.0}, ropt);
    const Complex a01 = ref.amplitudes.at(gate::Config::c01).return_amplitude;
    const double phi01 = ref.phi01;

    std::vector<NodeResult> nodes(dist.nodes.size());
    parallel_for(dist.nodes.size(), options.threads, [&](size_t k) {
        const double u = dist.nodes[k].u;
        const double v = vb / std::pow(u, 6);
        gate::GateRun run = gate::run_gate(drive, pulse, v, {0.0, 0.0}, ropt);
        nodes[k] = {run.amplitudes.at(gate::Config::c11).return_amplitude, run.leakage_phase};
    });

    SpinwaveResult out;
    out.raw_weight_sum = dist.raw_weight_sum;

    // blockade infidelity
    if (options.average_fidelity) {
        double mean_f = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k) {
            gate::ConfigAmplitudes amps;
            gate::ConfigAmplitude a;
            amps[gate::Config::c00] = a;
            a.config = gate::Config::c01;
            a.return_amplitude = a01;
            amps[gate::Config::c01] = a;
            a.config = gate::Config::c10;
            amps[gate::Config::c10] = a;
            a.config = gate::Config::c11;
            a.return_amplitude = nodes[k].a11;
            amps[gate::Config::c11] = a;
            gate::GateMatrix g = gate::assemble_gate(amps);
            g = gate::compensate_single_qubit_phase(g, phi01);
            mean_f += dist.nodes[k].weight * gate::fidelity(g, gate::cz_target());
        }
        out.infidelity = 1.0 - mean_f;
    } else {
        Complex a11_mean = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k)
            a11_mean += dist.nodes[k].weight * nodes[k].a11;
        gate::ConfigAmplitudes amps;
        gate::ConfigAmplitude a;
        amps[gate::Config::c00] = a;
        a.config = gate::Config::c01;
        a.return_amplitude = a01;
        amps[gate::Config::c01] = a;
        a.config = gate::Config::c10;
        amps[gate::Config::c10] = a;
        a.config = gate::Config::c11;
        a.return_amplitude = a11_mean;
        amps[gate::Config::c11] = a;
        gate::GateMatrix g = gate::assemble_gate(amps);
        g = gate::compensate_single_qubit_phase(g, phi01);
        out.infidelity = 1.0 - gate::fidelity(g, gate::cz_target());
    }

    // inhomogeneous phase from |rr> leakage; the modulus of the weighted
    // phase sum is insensitive to a common phase offset
    Complex phase_sum = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k)
        phase_sum += dist.nodes[k].weight * std::exp(Complex(0.0, -nodes[k].leak_phase));
    const double r = std::abs(phase_sum);
    out.leakage_phase_error = (1.0 - r) * (4.0 + r) / 10.0;
    return out;
}

}  // namespace

SpinwaveResult spinwave_study(const SpinWaveProfile& profile, const InteractionModel& model,
                              const gate::DriveParams& drive, const gate::PulseShape& pulse,
                              const SpinwaveOptions& options) {
    SpinwaveResult out = evaluate(profile, model, drive, pulse, options, options.sampler);
    if (options.check_convergence) {
        SeparationSampler half = options.sampler;
        half.radial_order = std::max(8, options.sampler.radial_order / 2);
        half.angular_order = std::max(4, options.sampler.angular_order / 2);
        SpinwaveResult coarse = evaluate(profile, model, drive, pulse, options, half);
        double scale = std::max({out.infidelity, coarse.infidelity, 1e-12});
        if (std::abs(out.infidelity - coarse.infidelity) > 0.05 * scale)
            out.warning = "separation sampler not converged: halving the resolution moves the "
                          "blockade error by more than 5%";
    }
    return out;
}

double spinwave_infidelity(const SpinWaveProfile& profile, const InteractionModel& model,
                           const gate::DriveParams& drive, const gate::PulseShape& pulse,
                           const SpinwaveOptions& options) {
    return spinwave_study(profile, model, drive, pulse, options).infidelity;
}

double leakage_phase_error(const SpinWaveProfile& profile, const InteractionModel& model,
                           const gate::DriveParams& drive, const gate::PulseShape& pulse,
                           const SpinwaveOptions& options) {
    return spinwave_study(profile, model, drive, pulse, options).leakage_phase_error;
}

}  // namespace rydcz::blockade
