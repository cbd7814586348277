#pragma once

// Imperfect-blockade gate errors: localized pairs, delocalized spin waves,
// and the leakage-induced inhomogeneous-phase error.

#include <optional>
#include <string>

#include "gate.hpp"
#include "spinwave.hpp"

namespace rydcz::blockade {

// Gate infidelity for two localized atoms at separation D, V = omega_eff/(D/R_b)^6.
double pair_infidelity(double d_over_rb, const gate::DriveParams& drive,
                       const gate::PulseShape& pulse, double rel_tol = 1e-9);

struct SpinwaveOptions {
    SeparationSampler sampler;
    bool average_fidelity = false;  // default averages the gate matrix, then Eq. 3
    bool check_convergence = false;
    double rel_tol = 1e-9;
    int threads = 1;
};

struct SpinwaveResult {
    double infidelity = 0.0;           // spin-wave blockade error
    double leakage_phase_error = 0.0;  // inhomogeneous-phase gate error
    double raw_weight_sum = 0.0;       // pre-normalization sampler capture
    std::optional<std::string> warning;
};

// Both spin-wave blockade quantities from one sweep over the pair-separation
// distribution: the blockade infidelity (gate matrix averaged over geometry,
// then the fidelity metric) and the phase error from |rr> leakage,
// (1-r)(4+r)/10 with r = |sum_k w_k exp(-i phi_k)| (only the 11 channel
// accrues the phase; the mean phase drops out as compensable).
SpinwaveResult spinwave_study(const SpinWaveProfile& profile, const InteractionModel& model,
                              const gate::DriveParams& drive, const gate::PulseShape& pulse,
                              const SpinwaveOptions& options = {});

double spinwave_infidelity(const SpinWaveProfile& profile, const InteractionModel& model,
                           const gate::DriveParams& drive, const gate::PulseShape& pulse,
                           const SpinwaveOptions& options = {});

double leakage_phase_error(const SpinWaveProfile& profile, const InteractionModel& model,
                           const gate::DriveParams& drive, const gate::PulseShape& pulse,
                           const SpinwaveOptions& options = {});

}  // namespace rydcz::blockade
