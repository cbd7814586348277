#pragma once

// Spin-wave excitation-density profiles and the distribution of pair
// separations for two excitations stored in the same profile.

#include <vector>

#include "errors.hpp"

namespace rydcz::blockade {

enum class ProfileShape { gaussian, super_gaussian_10 };

// 3-D excitation density |C1(x)|^2 = exp(-2 x_par^p / w_par^p) *
// exp(-2 |x_perp|^p / w_perp^p) / N with p = 2 or 10, normalized to unit
// integral.  Widths are 1/e^2 half-widths in um.
struct SpinWaveProfile {
    ProfileShape shape = ProfileShape::gaussian;
    double w_par = 1.0;
    double w_perp = 1.0;

    void validate() const;
    int order() const { return shape == ProfileShape::gaussian ? 2 : 10; }

    // unnormalized density and the numerically computed normalizer
    double unnormalized_density(double x_par, double x_perp) const;
    double normalization() const;  // integral of the unnormalized density, um^3
};

// Anisotropic van der Waals interaction.  In normalized_anisotropic mode the
// same scaled distance u, u^2 = (x_par/Rb_par)^2 + (x_perp/Rb_perp)^2, is
// used in every direction and V = V_b / u^6 with V_b = C6 / Rb_par^6 (the
// drive scale at the blockade radius).
struct InteractionModel {
    double c6 = 1.0;  // rad/us * um^6
    double rb_par = 1.0;
    double rb_perp = 1.0;
    enum class Mode { isotropic, normalized_anisotropic } mode = Mode::normalized_anisotropic;

    void validate() const;
};

// V(x_ij) in rad/us for separation (x_par, x_perp); throws on zero separation.
double vdw_interaction(double x_par, double x_perp, const InteractionModel& model);

struct SeparationSampler {
    int radial_order = 64;
    int angular_order = 16;
};

// One node of the pair-separation quadrature, expressed in blockade-scaled
// coordinates: u is the scaled radius entering V = V_b/u^6.
struct SeparationNode {
    double u = 0.0;
    double weight = 0.0;
};

// Deterministic quadrature over the distribution of x_i - x_j for two
// independent excitations drawn from `profile`, radially reduced in the
// blockade-scaled frame of `model`.  Weights sum to 1 after normalization;
// raw_weight_sum reports the pre-normalization sum (a capture check).
struct SeparationDistribution {
    std::vector<SeparationNode> nodes;
    double raw_weight_sum = 0.0;
};

SeparationDistribution separation_distribution(const SpinWaveProfile& profile,
                                               const InteractionModel& model,
                                               const SeparationSampler& sampler);

}  // namespace rydcz::blockade
