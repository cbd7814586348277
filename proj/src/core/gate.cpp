#include "gate.hpp"

#include <cmath>

#include "errors.hpp"

namespace rydcz::gate {

namespace {
constexpr Complex kI{0.0, 1.0};

// expected Rydberg / p-state occupation per pair basis index 3a+b
double pair_occupation(int index, int level) {
    int a = index / 3, b = index % 3;
    return (a == level ? 1.0 : 0.0) + (b == level ? 1.0 : 0.0);
}
}  // namespace

void DriveParams::validate() const {
    if (!(delta > 0.0)) throw ContractViolation("DriveParams: delta must be positive");
    if (omega1_peak < 0.0 || omega2_peak < 0.0)
        throw ContractViolation("DriveParams: Rabi peaks must be nonnegative");
    if (!(lambda1_um > 0.0) || !(lambda2_um > 0.0))
        throw ContractViolation("DriveParams: wavelengths must be positive");
    if (gamma_p < 0.0 || gamma_r < 0.0)
        throw ContractViolation("DriveParams: decay rates must be nonnegative");
}

double DriveParams::effective_wavevector() const {
    double k1 = units::wavevector_um(lambda1_um);
    double k2 = units::wavevector_um(lambda2_um);
    return counter_propagating ? std::abs(k1 - k2) : k1 + k2;
}

void PulseShape::validate() const {
    if (!(omega_eff > 0.0)) throw ContractViolation("PulseShape: omega_eff must be positive");
    if (!(ratio_peak > 0.0)) throw ContractViolation("PulseShape: ratio_peak must be positive");
    if (!(t_gate > 0.0)) throw ContractViolation("PulseShape: t_gate must be positive");
    if (family == PulseFamily::gaussian_ratio && !(width > 0.0))
        throw ContractViolation("PulseShape: width must be positive");
}

double PulseShape::ratio(double t) const {
    if (family == PulseFamily::constant) return ratio_peak;
    const double u = (t - t_center) / width;
    return 1.0 + (ratio_peak - 1.0) * std::exp(-2.0 * u * u);
}

void PulseShape::rabi(double t, double delta, double& omega1, double& omega2) const {
    const double r = ratio(t);
    const double product = 2.0 * delta * omega_eff;  // omega1 * omega2
    omega1 = std::sqrt(product * r);
    omega2 = std::sqrt(product / r);
}

PulseShape PulseShape::gaussian_scaled(double omega_eff, double ratio_peak, double width_scaled,
                                       double t_gate_scaled) {
    PulseShape p;
    p.family = PulseFamily::gaussian_ratio;
    p.omega_eff = omega_eff;
    p.ratio_peak = ratio_peak;
    p.width = width_scaled / omega_eff;
    p.t_gate = t_gate_scaled / omega_eff;
    p.t_center = 0.5 * p.t_gate;
    p.validate();
    return p;
}

PulseShape PulseShape::constant_scaled(double omega_eff, double ratio, double t_gate_scaled) {
    PulseShape p;
    p.family = PulseFamily::constant;
    p.omega_eff = omega_eff;
    p.ratio_peak = ratio;
    p.t_gate = t_gate_scaled / omega_eff;
    p.t_center = 0.5 * p.t_gate;
    p.validate();
    return p;
}

DriveParams default_drive(double delta_over_omega_eff, double omega_eff) {
    DriveParams d;
    d.delta = delta_over_omega_eff * omega_eff;
    d.omega1_peak = d.omega2_peak = std::sqrt(2.0 * d.delta * omega_eff);
    d.validate();
    return d;
}

GateMatrix cz_target() {
    GateMatrix g;
    g.entries = Eigen::Vector4cd(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return g;
}

// ---------------------------------------------------------------------------
// Hamiltonian builders
// ---------------------------------------------------------------------------

namespace {

class SingleAtomHamiltonian final : public HamiltonianProvider {
public:
    SingleAtomHamiltonian(DriveParams drive, PulseShape pulse, double doppler, double scale)
        : drive_(drive), pulse_(pulse), doppler_(doppler), scale_(scale) {}

    int dimension() const override { return 3; }
    bool is_constant() const override {
        return pulse_.family == PulseFamily::constant;
    }
    void evaluate(double t, MatrixXc& out) const override {
        double o1, o2;
        pulse_.rabi(t, drive_.delta, o1, o2);
        o1 *= scale_;
        o2 *= scale_;
        out.setZero(3, 3);
        out(0, 1) = out(1, 0) = 0.5 * o1;
        out(1, 2) = out(2, 1) = 0.5 * o2;
        out(1, 1) = drive_.delta;
        out(2, 2) = doppler_;
    }

private:
    DriveParams drive_;
    PulseShape pulse_;
    double doppler_;
    double scale_;
};

class PairHamiltonian final : public HamiltonianProvider {
public:
    PairHamiltonian(DriveParams drive, PulseShape pulse, double v,
                    std::pair<double, double> doppler, std::pair<double, double> scale,
                    bool drop_rr)
        : drive_(drive), pulse_(pulse), v_(v), doppler_(doppler), scale_(scale),
          drop_rr_(drop_rr) {}

    int dimension() const override { return drop_rr_ ? 8 : 9; }
    bool is_constant() const override { return pulse_.family == PulseFamily::constant; }

    void evaluate(double t, MatrixXc& out) const override {
        double o1, o2;
        pulse_.rabi(t, drive_.delta, o1, o2);
        const int n = dimension();
        out.setZero(n, n);
        // single-atom pieces, atom A on the first index, atom B on the second
        const double oa1 = o1 * scale_.first, oa2 = o2 * scale_.first;
        const double ob1 = o1 * scale_.second, ob2 = o2 * scale_.second;
        auto put = [&](int row, int col, Complex val) {
            if (drop_rr_ && (row == 8 || col == 8)) return;
            out(row, col) += val;
        };
        for (int b = 0; b < 3; ++b) {
            // atom A couplings: (a,b) <-> (a',b)
            put(0 * 3 + b, 1 * 3 + b, 0.5 * oa1);
            put(1 * 3 + b, 0 * 3 + b, 0.5 * oa1);
            put(1 * 3 + b, 2 * 3 + b, 0.5 * oa2);
            put(2 * 3 + b, 1 * 3 + b, 0.5 * oa2);
            put(1 * 3 + b, 1 * 3 + b, drive_.delta);
            put(2 * 3 + b, 2 * 3 + b, doppler_.first);
            // atom B couplings: (b,a) <-> (b,a')
            put(b * 3 + 0, b * 3 + 1, 0.5 * ob1);
            put(b * 3 + 1, b * 3 + 0, 0.5 * ob1);
            put(b * 3 + 1, b * 3 + 2, 0.5 * ob2);
            put(b * 3 + 2, b * 3 + 1, 0.5 * ob2);
            put(b * 3 + 1, b * 3 + 1, drive_.delta);
            put(b * 3 + 2, b * 3 + 2, doppler_.second);
        }
        if (!drop_rr_) out(8, 8) += v_;
    }

private:
    DriveParams drive_;
    PulseShape pulse_;
    double v_;
    std::pair<double, double> doppler_;
    std::pair<double, double> scale_;
    bool drop_rr_;
};

}  // namespace

HamiltonianPtr build_single_hamiltonian(const DriveParams& drive, const PulseShape& pulse,
                                        double doppler_shift) {
    drive.validate();
    pulse.validate();
    return std::make_shared<SingleAtomHamiltonian>(drive, pulse, doppler_shift, 1.0);
}

HamiltonianPtr build_pair_hamiltonian(const DriveParams& drive, const PulseShape& pulse, double v,
                                      std::pair<double, double> doppler_shifts) {
    drive.validate();
    pulse.validate();
    if (!std::isfinite(v)) throw ContractViolation("build_pair_hamiltonian: V must be finite");
    return std::make_shared<PairHamiltonian>(drive, pulse, v, doppler_shifts,
                                             std::pair{1.0, 1.0}, false);
}

HamiltonianPtr build_pair_hamiltonian_blockaded(const DriveParams& drive, const PulseShape& pulse,
                                                std::pair<double, double> doppler_shifts) {
    drive.validate();
    pulse.validate();
    return std::make_shared<PairHamiltonian>(drive, pulse, 0.0, doppler_shifts,
                                             std::pair{1.0, 1.0}, true);
}

// ---------------------------------------------------------------------------
// Gate protocol
// ---------------------------------------------------------------------------

namespace {

struct SingleRunResult {
    ConfigAmplitude amp;
    Trajectory traj;
};

SingleRunResult run_single(const DriveParams& drive, const PulseShape& pulse, double doppler,
                           double scale, const RunGateOptions& opt, Config config) {
    auto h = std::make_shared<SingleAtomHamiltonian>(drive, pulse, doppler, scale);
    HamiltonianPtr hp = h;
    if (opt.with_decay)
        hp = apply_phenomenological_decay(hp, {{1, drive.gamma_p}, {2, drive.gamma_r}});
    TimeGrid grid(0.0, pulse.t_gate, opt.output_points);
    Trajectory traj = propagate(*hp, StateVector::basis_state(3, 0), grid, opt.rel_tol);

    SingleRunResult out;
    out.amp.config = config;
    out.amp.return_amplitude = traj.final_state()(0);
    out.amp.max_rydberg_population = traj.max_population(2);
    out.amp.max_p_population = traj.max_population(1);
    out.amp.integrated_rydberg_population = traj.integrated_population(2);
    out.amp.integrated_p_population = traj.integrated_population(1);
    out.traj = std::move(traj);
    return out;
}

// occupation-weighted population sums over a pair trajectory
void pair_populations(const Trajectory& traj, bool has_rr, ConfigAmplitude& amp) {
    const int n = has_rr ? 9 : 8;
    std::vector<double> nr(n), np(n);
    for (int i = 0; i < n; ++i) {
        nr[i] = pair_occupation(i, 2);
        np[i] = pair_occupation(i, 1);
    }
    double int_r = 0.0, int_p = 0.0, max_r = 0.0, max_p = 0.0;
    std::vector<double> prev(2, 0.0);
    for (size_t k = 0; k < traj.states.size(); ++k) {
        double er = 0.0, ep = 0.0;
        for (int i = 0; i < n; ++i) {
            double pop = std::norm(traj.states[k](i));
            er += nr[i] * pop;
            ep += np[i] * pop;
        }
        max_r = std::max(max_r, er);
        max_p = std::max(max_p, ep);
        if (k > 0) {
            double dt = traj.times[k] - traj.times[k - 1];
            int_r += 0.5 * (prev[0] + er) * dt;
            int_p += 0.5 * (prev[1] + ep) * dt;
        }
        prev[0] = er;
        prev[1] = ep;
    }
    amp.max_rydberg_population = max_r;
    amp.max_p_population = max_p;
    amp.integrated_rydberg_population = int_r;
    amp.integrated_p_population = int_p;
}

}  // namespace

GateRun run_gate(const DriveParams& drive, const PulseShape& pulse, double v,
                 std::pair<double, double> doppler, const RunGateOptions& options) {
    drive.validate();
    pulse.validate();
    if (v < 0.0) throw ContractViolation("run_gate: V must be nonnegative");

    GateRun run;

    // 00: no atom is driven
    ConfigAmplitude a00;
    a00.config = Config::c00;
    run.amplitudes[Config::c00] = a00;

    // 01 drives the second atom, 10 the first
    SingleRunResult r01;
    try {
        r01 = run_single(drive, pulse, doppler.second, options.rabi_scale.second, options,
                         Config::c01);
    } catch (const IntegrationFailure& e) {
        throw IntegrationFailure(std::string("run_gate[01]: ") + e.what(), e.t_last_good);
    }
    run.amplitudes[Config::c01] = r01.amp;

    if (doppler.first == doppler.second && options.rabi_scale.first == options.rabi_scale.second) {
        ConfigAmplitude a10 = r01.amp;
        a10.config = Config::c10;
        run.amplitudes[Config::c10] = a10;
    } else {
        try {
            SingleRunResult r10 = run_single(drive, pulse, doppler.first,
                                             options.rabi_scale.first, options, Config::c10);
            run.amplitudes[Config::c10] = r10.amp;
        } catch (const IntegrationFailure& e) {
            throw IntegrationFailure(std::string("run_gate[10]: ") + e.what(), e.t_last_good);
        }
    }

    // 11: pair model; far above every other scale the |rr> level is dropped
    const bool hard = v > options.hard_blockade_ratio * pulse.omega_eff;
    auto h11 = std::make_shared<PairHamiltonian>(drive, pulse, v, doppler, options.rabi_scale,
                                                 hard);
    HamiltonianPtr hp11 = h11;
    if (options.with_decay) {
        std::vector<DecayTerm> terms;
        for (int i = 0; i < h11->dimension(); ++i) {
            double rate = drive.gamma_p * pair_occupation(i, 1) +
                          drive.gamma_r * pair_occupation(i, 2);
            if (rate > 0.0) terms.push_back({i, rate});
        }
        hp11 = apply_phenomenological_decay(hp11, std::move(terms));
    }
    TimeGrid grid(0.0, pulse.t_gate, options.output_points);
    Trajectory traj11;
    try {
        traj11 = propagate(*hp11, StateVector::basis_state(h11->dimension(), 0), grid,
                           options.rel_tol);
    } catch (const IntegrationFailure& e) {
        throw IntegrationFailure(std::string("run_gate[11]: ") + e.what(), e.t_last_good);
    }

    ConfigAmplitude a11;
    a11.config = Config::c11;
    a11.return_amplitude = traj11.final_state()(0);
    pair_populations(traj11, !hard, a11);
    run.amplitudes[Config::c11] = a11;

    if (!hard && v > 0.0) {
        run.leakage_phase = v * traj11.integrated_population(8);
    } else if (hard && v > 0.0 && std::isfinite(v)) {
        // adiabatic |rr> weight (omega_eff |c_w| / (sqrt(2) V))^2 integrated
        run.leakage_phase =
            pulse.omega_eff * pulse.omega_eff / (2.0 * v) * a11.integrated_rydberg_population;
    }

    run.phi01 = std::arg(run.amplitudes[Config::c01].return_amplitude);
    run.phi11 = std::arg(a11.return_amplitude);
    run.traj01 = std::move(r01.traj);
    run.traj11 = std::move(traj11);
    return run;
}

GateMatrix assemble_gate(const ConfigAmplitudes& amps) {
    for (Config c : {Config::c00, Config::c01, Config::c10, Config::c11})
        if (amps.find(c) == amps.end())
            throw ContractViolation("assemble_gate: missing configuration amplitude");
    GateMatrix g;
    g.entries.setZero();
    g.entries(0, 0) = amps.at(Config::c00).return_amplitude;
    g.entries(1, 1) = amps.at(Config::c01).return_amplitude;
    g.entries(2, 2) = amps.at(Config::c10).return_amplitude;
    g.entries(3, 3) = amps.at(Config::c11).return_amplitude;
    return g;
}

GateMatrix compensate_single_qubit_phase(const GateMatrix& g, double phi01) {
    const double d = M_PI - phi01;
    GateMatrix out;
    Eigen::Vector4cd corr(1.0, std::polar(1.0, d), std::polar(1.0, d), std::polar(1.0, 2.0 * d));
    out.entries = corr.asDiagonal() * g.entries;
    return out;
}

double fidelity(const GateMatrix& gate, const GateMatrix& ideal) {
    const Eigen::Matrix4cd m = ideal.entries.adjoint() * gate.entries;
    const double tr_mmd = (m * m.adjoint()).trace().real();
    const Complex tr_m = m.trace();
    return (tr_mmd + std::norm(tr_m)) / 20.0;
}

double wrap_angle(double x) {
    x = std::fmod(x, units::two_pi);
    if (x > M_PI) x -= units::two_pi;
    if (x <= -M_PI) x += units::two_pi;
    return x;
}

double phase_mismatch(double phi01, double phi11) {
    return wrap_angle(phi11 - 2.0 * phi01 + M_PI);
}

double reference_pi_gap_pi_rydberg_exposure(double omega_eff) {
    return 3.0 * M_PI / omega_eff;
}

double reference_2pi_pulse_rydberg_exposure(double omega_eff) {
    return M_PI / (std::sqrt(2.0) * omega_eff);
}

}  // namespace rydcz::gate
