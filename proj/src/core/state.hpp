#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rydcz {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

// Complex amplitudes on an ordered basis.  Labels are optional bookkeeping;
// when present their count must match the dimension.
struct StateVector {
    VectorXc amplitudes;
    std::vector<std::string> basis_labels;

    StateVector() = default;
    explicit StateVector(VectorXc amps, std::vector<std::string> labels = {})
        : amplitudes(std::move(amps)), basis_labels(std::move(labels)) {
        if (!basis_labels.empty() &&
            static_cast<Eigen::Index>(basis_labels.size()) != amplitudes.size())
            throw ContractViolation("StateVector: label count does not match dimension");
    }

    Eigen::Index dimension() const { return amplitudes.size(); }
    double squared_norm() const { return amplitudes.squaredNorm(); }

    static StateVector basis_state(Eigen::Index dim, Eigen::Index index) {
        if (index < 0 || index >= dim)
            throw ContractViolation("StateVector::basis_state: index out of range");
        VectorXc v = VectorXc::Zero(dim);
        v(index) = 1.0;
        return StateVector(std::move(v));
    }
};

// Output sampling for a propagation.  Times are in us.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int output_points = 2;

    TimeGrid() = default;
    TimeGrid(double t0, double t1, int points) : t_start(t0), t_end(t1), output_points(points) {
        if (!(t_end > t_start)) throw ContractViolation("TimeGrid: t_end must exceed t_start");
        if (output_points < 2) throw ContractViolation("TimeGrid: need at least 2 output points");
    }

    double time_at(int k) const {
        return t_start + (t_end - t_start) * static_cast<double>(k) / (output_points - 1);
    }
};

// Dense propagation output: states.at(k) is the state at times.at(k).
struct Trajectory {
    std::vector<double> times;
    std::vector<VectorXc> states;
    std::vector<std::string> basis_labels;

    const VectorXc& final_state() const { return states.back(); }

    // trapezoid integral of |amplitude(index)|^2 over the trajectory
    double integrated_population(Eigen::Index index) const {
        double acc = 0.0;
        for (size_t k = 0; k + 1 < times.size(); ++k) {
            double pa = std::norm(states[k](index));
            double pb = std::norm(states[k + 1](index));
            acc += 0.5 * (pa + pb) * (times[k + 1] - times[k]);
        }
        return acc;
    }

    double max_population(Eigen::Index index) const {
        double m = 0.0;
        for (const auto& s : states) m = std::max(m, std::norm(s(index)));
        return m;
    }
};

}  // namespace rydcz
