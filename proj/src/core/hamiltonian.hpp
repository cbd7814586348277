#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "state.hpp"

namespace rydcz {

// Time-dependent Hamiltonian evaluator, H(t) in rad/us on a fixed basis.
class HamiltonianProvider {
public:
    virtual ~HamiltonianProvider() = default;

    virtual int dimension() const = 0;

    // Fill `out` (resized by the caller to dimension x dimension) with H(t).
    virtual void evaluate(double t, MatrixXc& out) const = 0;

    // True when H(t) does not depend on t; enables exact one-shot propagation.
    virtual bool is_constant() const { return false; }

    MatrixXc at(double t) const {
        MatrixXc h(dimension(), dimension());
        evaluate(t, h);
        return h;
    }
};

using HamiltonianPtr = std::shared_ptr<const HamiltonianProvider>;

// Wrap a callable (double t, MatrixXc& out).
class CallableHamiltonian final : public HamiltonianProvider {
public:
    using Fn = std::function<void(double, MatrixXc&)>;
    CallableHamiltonian(int dim, Fn fn, bool constant = false)
        : dim_(dim), fn_(std::move(fn)), constant_(constant) {}

    int dimension() const override { return dim_; }
    void evaluate(double t, MatrixXc& out) const override { fn_(t, out); }
    bool is_constant() const override { return constant_; }

private:
    int dim_;
    Fn fn_;
    bool constant_;
};

class ConstantHamiltonian final : public HamiltonianProvider {
public:
    explicit ConstantHamiltonian(MatrixXc h) : h_(std::move(h)) {
        if (h_.rows() != h_.cols()) throw ContractViolation("ConstantHamiltonian: matrix not square");
    }
    int dimension() const override { return static_cast<int>(h_.rows()); }
    void evaluate(double, MatrixXc& out) const override { out = h_; }
    bool is_constant() const override { return true; }
    const MatrixXc& matrix() const { return h_; }

private:
    MatrixXc h_;
};

// Phenomenological loss: (index, Gamma) pairs, Gamma >= 0 in rad/us.  The
// population of a decoupled level with rate Gamma decays as exp(-Gamma t).
struct DecayTerm {
    int basis_index = 0;
    double rate = 0.0;
};

// Returns a provider equal to `base` with -i*Gamma/2 added to the named
// diagonal entries.  With all rates zero the result reproduces `base` exactly.
HamiltonianPtr apply_phenomenological_decay(HamiltonianPtr base, std::vector<DecayTerm> terms);

}  // namespace rydcz
