#include "propagate.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace rydcz {

namespace {

constexpr Complex kI{0.0, 1.0};

bool nearly_hermitian(const MatrixXc& h) {
    double scale = std::max(1e-300, h.cwiseAbs().maxCoeff());
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

std::vector<double> output_times(const TimeGrid& grid) {
    std::vector<double> ts(grid.output_points);
    for (int k = 0; k < grid.output_points; ++k) ts[k] = grid.time_at(k);
    ts.back() = grid.t_end;
    return ts;
}

// ---------------------------------------------------------------------------
// Exact propagation for constant Hermitian H via one eigendecomposition.
// ---------------------------------------------------------------------------
Trajectory propagate_constant_hermitian(const MatrixXc& h, const StateVector& psi0,
                                        const TimeGrid& grid) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    const VectorXc coeffs = es.eigenvectors().adjoint() * psi0.amplitudes;
    Trajectory traj;
    traj.basis_labels = psi0.basis_labels;
    traj.times = output_times(grid);
    traj.states.reserve(traj.times.size());
    for (double t : traj.times) {
        VectorXc phases =
            (-kI * (t - grid.t_start) * es.eigenvalues().array()).exp().matrix().cwiseProduct(coeffs);
        traj.states.push_back(es.eigenvectors() * phases);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Adaptive embedded Runge-Kutta (Cash-Karp 5(4) from odeint) with
// error-per-unit-step control so the global drift stays near rel_tol.
// ---------------------------------------------------------------------------
struct SchrodingerRhs {
    const HamiltonianProvider* h;
    mutable MatrixXc work;

    void operator()(const std::vector<Complex>& x, std::vector<Complex>& dxdt, double t) const {
        const auto n = static_cast<Eigen::Index>(x.size());
        h->evaluate(t, work);
        Eigen::Map<const VectorXc> xin(x.data(), n);
        Eigen::Map<VectorXc> xout(dxdt.data(), n);
        xout.noalias() = -kI * (work * xin);
    }
};

Trajectory propagate_rk(const HamiltonianProvider& h, const StateVector& psi0,
                        const TimeGrid& grid, double rel_tol, double abs_tol) {
    using state_type = std::vector<Complex>;
    boost::numeric::odeint::runge_kutta_cash_karp54<state_type> stepper;
    SchrodingerRhs rhs{&h, MatrixXc(h.dimension(), h.dimension())};

    const double span = grid.t_end - grid.t_start;
    const double h_min = 1e-14 * span;
    const int n = h.dimension();

    state_type x(psi0.amplitudes.data(), psi0.amplitudes.data() + n);
    state_type x_new(n), x_err(n);

    Trajectory traj;
    traj.basis_labels = psi0.basis_labels;
    traj.times = output_times(grid);
    traj.states.reserve(traj.times.size());
    traj.states.push_back(psi0.amplitudes);

    double t = grid.t_start;
    double dt = span / 100.0;
    for (size_t k = 1; k < traj.times.size(); ++k) {
        const double t_target = traj.times[k];
        while (t < t_target) {
            double step = std::min(dt, t_target - t);
            stepper.do_step(rhs, x, t, x_new, step, x_err);

            double err = 0.0, amp = 0.0;
            for (int i = 0; i < n; ++i) {
                err = std::max(err, std::abs(x_err[i]));
                amp = std::max(amp, std::abs(x_new[i]));
            }
            // error-per-unit-step: budget the global tolerance across the span
            double tol = (abs_tol + rel_tol * std::max(amp, 1.0)) * (step / span);
            if (err <= tol) {
                x.swap(x_new);
                t += step;
                double grow = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
                dt = step * std::clamp(grow, 0.3, 4.0);
            } else {
                dt = step * std::clamp(0.9 * std::pow(tol / err, 0.25), 0.1, 0.9);
                if (dt < h_min)
                    throw IntegrationFailure("propagate: step-size underflow (rk)", t);
            }
        }
        traj.states.emplace_back(Eigen::Map<const VectorXc>(x.data(), n));
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Fourth-order commutator-free Magnus integrator (two exponentials per step,
// Gauss-Legendre nodes).  Exact for constant H at any step size, so the large
// static detuning/blockade diagonals cost nothing; accuracy is set by the
// time variation of the couplings.  Adapted by step doubling.
// ---------------------------------------------------------------------------
struct Cf4Workspace {
    MatrixXc a1, a2, b;
};

void cf4_step(const HamiltonianProvider& h, double t, double dt, const VectorXc& in, VectorXc& out,
              Cf4Workspace& w) {
    static const double node1 = 0.5 - std::sqrt(3.0) / 6.0;
    static const double node2 = 0.5 + std::sqrt(3.0) / 6.0;
    static const double w1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
    static const double w2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

    h.evaluate(t + node1 * dt, w.a1);
    h.evaluate(t + node2 * dt, w.a2);
    w.b = (-kI * dt) * (w2 * w.a1 + w1 * w.a2);
    out.noalias() = w.b.exp() * in;
    w.b = (-kI * dt) * (w1 * w.a1 + w2 * w.a2);
    out = w.b.exp() * out;
}

Trajectory propagate_magnus(const HamiltonianProvider& h, const StateVector& psi0,
                            const TimeGrid& grid, double rel_tol, double abs_tol) {
    const int n = h.dimension();
    Cf4Workspace w{MatrixXc(n, n), MatrixXc(n, n), MatrixXc(n, n)};

    const double span = grid.t_end - grid.t_start;
    const double h_min = 1e-14 * span;

    Trajectory traj;
    traj.basis_labels = psi0.basis_labels;
    traj.times = output_times(grid);
    traj.states.reserve(traj.times.size());
    traj.states.push_back(psi0.amplitudes);

    VectorXc x = psi0.amplitudes, y_full(n), y_half(n), y2(n);
    double t = grid.t_start;
    double dt = span / 200.0;
    for (size_t k = 1; k < traj.times.size(); ++k) {
        const double t_target = traj.times[k];
        while (t < t_target) {
            double step = std::min(dt, t_target - t);
            cf4_step(h, t, step, x, y_full, w);
            cf4_step(h, t, 0.5 * step, x, y_half, w);
            cf4_step(h, t + 0.5 * step, 0.5 * step, y_half, y2, w);

            double err = (y_full - y2).cwiseAbs().maxCoeff();
            double amp = y2.cwiseAbs().maxCoeff();
            double tol = abs_tol + rel_tol * std::max(amp, 1.0);
            if (err <= tol) {
                x.swap(y2);
                t += step;
                double grow = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
                dt = step * std::clamp(grow, 0.3, 3.0);
            } else {
                dt = step * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
                if (dt < h_min)
                    throw IntegrationFailure("propagate: step-size underflow (magnus)", t);
            }
        }
        traj.states.push_back(x);
    }
    return traj;
}

}  // namespace

// Decay wrapper ------------------------------------------------------------

namespace {

class DecayHamiltonian final : public HamiltonianProvider {
public:
    DecayHamiltonian(HamiltonianPtr base, std::vector<DecayTerm> terms)
        : base_(std::move(base)), terms_(std::move(terms)) {
        for (const auto& term : terms_) {
            if (term.basis_index < 0 || term.basis_index >= base_->dimension())
                throw ContractViolation("apply_phenomenological_decay: basis index out of range");
            if (term.rate < 0.0)
                throw ContractViolation("apply_phenomenological_decay: negative decay rate");
        }
    }

    int dimension() const override { return base_->dimension(); }
    bool is_constant() const override { return base_->is_constant(); }
    void evaluate(double t, MatrixXc& out) const override {
        base_->evaluate(t, out);
        for (const auto& term : terms_)
            out(term.basis_index, term.basis_index) -= kI * (0.5 * term.rate);
    }

private:
    HamiltonianPtr base_;
    std::vector<DecayTerm> terms_;
};

}  // namespace

HamiltonianPtr apply_phenomenological_decay(HamiltonianPtr base, std::vector<DecayTerm> terms) {
    return std::make_shared<DecayHamiltonian>(std::move(base), std::move(terms));
}

// Entry point ----------------------------------------------------------------

Trajectory propagate(const HamiltonianProvider& h, const StateVector& psi0, const TimeGrid& grid,
                     double rel_tol, const PropagateOptions& options) {
    if (psi0.dimension() != h.dimension())
        throw ContractViolation("propagate: state dimension does not match Hamiltonian");
    if (!(rel_tol > 0.0) || rel_tol > 1e-3)
        throw ContractViolation("propagate: rel_tol must lie in (0, 1e-3]");

    const double abs_tol = rel_tol * options.abs_tol_factor;

    IntegratorMethod method = options.method;
    if (method == IntegratorMethod::automatic) {
        if (h.is_constant()) {
            MatrixXc h0 = h.at(grid.t_start);
            if (nearly_hermitian(h0)) return propagate_constant_hermitian(h0, psi0, grid);
            method = IntegratorMethod::magnus_cf4;
        } else {
            // accumulated diagonal phase decides whether the oscillatory terms
            // are cheaper handled exactly inside matrix exponentials
            double diag = 0.0;
            for (double t : {grid.t_start, 0.5 * (grid.t_start + grid.t_end), grid.t_end}) {
                MatrixXc ht = h.at(t);
                diag = std::max(diag, ht.diagonal().cwiseAbs().maxCoeff());
            }
            method = diag * (grid.t_end - grid.t_start) > 2.0e3 ? IntegratorMethod::magnus_cf4
                                                                : IntegratorMethod::rk_cash_karp;
        }
    }

    if (method == IntegratorMethod::magnus_cf4) return propagate_magnus(h, psi0, grid, rel_tol, abs_tol);
    return propagate_rk(h, psi0, grid, rel_tol, abs_tol);
}

}  // namespace rydcz
