#pragma once

// Closed-form reference models: adiabatic-elimination amplitudes of the
// two-photon ladder (the main oracle for the numerical propagator), laser
// power -> Rabi frequency conversion, dipole matrix elements, and the
// blockade radius.

#include <complex>

namespace rydcz::analytic {

struct AdiabaticAmplitudes {
    std::complex<double> c_ground;   // amplitude on the stored qubit state
    std::complex<double> c_rydberg;  // amplitude on the Rydberg state
};

// Constant-drive amplitudes after adiabatic elimination of the intermediate
// state.  omega1, omega2, delta in rad/us, t in us.  |c_ground|^2 +
// |c_rydberg|^2 == 1 identically.
AdiabaticAmplitudes adiabatic_amplitudes(double omega1, double omega2, double delta, double t);

// Peak Rydberg population (2r/(1+r^2))^2 as a function of the drive ratio
// r = omega1/omega2; equals 1 iff r == 1, symmetric under r -> 1/r.
double max_rydberg_population(double ratio);

// Transverse beam specification.  waist is the half-width at 1/e^2 maximum
// intensity, profile_order 2 (Gaussian) or 10 (super-Gaussian).
struct BeamSpec {
    double power_w = 0.0;
    double waist_um = 1.0;
    int profile_order = 2;
    double wavelength_um = 1.006;
};

// Effective beam area (the integral of the normalized intensity profile) in
// um^2.  pi*w^2/2 for a Gaussian; evaluated by quadrature for order 10.
double effective_beam_area_um2(double waist_um, int profile_order);

// Peak Rabi frequency e*E0*<r>/hbar in rad/us, with E0 from the power
// integral over the declared transverse profile.
double power_to_rabi(const BeamSpec& beam, double dipole_matrix_element_a0);

enum class Transition { s5_p6_32, s5_p6_12, p6_nd };

// Published matrix elements: 0.528 a0 (5S-6P3/2), 0.235 a0 (5S-6P1/2),
// 0.035*(53/n)^(3/2) a0 (6P-nD).
double dipole_element(Transition transition, int principal_n = 0);

// R_b = (C6 / omega_eff)^(1/6), C6 in rad/us*um^6, result in um.
double blockade_radius(double c6, double omega_eff);

}  // namespace rydcz::analytic
