#include "analytic.hpp"

#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"
#include "units.hpp"

namespace rydcz::analytic {

AdiabaticAmplitudes adiabatic_amplitudes(double omega1, double omega2, double delta, double t) {
    const double s = omega1 * omega1 + omega2 * omega2;
    if (!(s > 0.0)) throw ContractViolation("adiabatic_amplitudes: omega1 = omega2 = 0");
    if (delta == 0.0) throw ContractViolation("adiabatic_amplitudes: delta must be nonzero");

    const std::complex<double> i(0.0, 1.0);
    const double d = omega1 * omega1 - omega2 * omega2;
    AdiabaticAmplitudes out;
    out.c_ground =
        (omega2 * omega2 + omega1 * omega1 * std::exp(i * (t * s / (4.0 * delta)))) / s;
    out.c_rydberg = (2.0 * omega1 * omega2 / s) * std::exp(i * (t * d / (8.0 * delta))) *
                    std::sin(s * t / (8.0 * delta));
    return out;
}

double max_rydberg_population(double ratio) {
    if (!(ratio > 0.0)) throw ContractViolation("max_rydberg_population: ratio must be positive");
    const double q = 2.0 * ratio / (1.0 + ratio * ratio);
    return q * q;
}

double effective_beam_area_um2(double waist_um, int profile_order) {
    if (!(waist_um > 0.0)) throw ContractViolation("effective_beam_area: waist must be positive");
    if (profile_order == 2) return M_PI * waist_um * waist_um / 2.0;
    if (profile_order != 10)
        throw ContractViolation("effective_beam_area: profile order must be 2 or 10");
    // integral of exp(-2 (r/w)^10) 2 pi r dr; the integrand is dead past 1.5 w
    const auto& gl = quadrature::gauss_legendre(64, 0.0, 2.0);
    double acc = 0.0;
    for (size_t k = 0; k < gl.nodes.size(); ++k) {
        double u = gl.nodes[k];
        acc += gl.weights[k] * std::exp(-2.0 * std::pow(u, 10)) * units::two_pi * u;
    }
    return acc * waist_um * waist_um;
}

double power_to_rabi(const BeamSpec& beam, double dipole_matrix_element_a0) {
    if (beam.power_w < 0.0) throw ContractViolation("power_to_rabi: power must be nonnegative");
    if (!(dipole_matrix_element_a0 > 0.0))
        throw ContractViolation("power_to_rabi: dipole element must be positive");
    const double area_m2 = effective_beam_area_um2(beam.waist_um, beam.profile_order) * 1e-12;
    const double e0 = std::sqrt(2.0 * units::vacuum_impedance * beam.power_w / area_m2);  // V/m
    const double omega_rad_s = units::elementary_charge * e0 * dipole_matrix_element_a0 *
                               units::bohr_radius / units::hbar;
    return omega_rad_s * 1e-6;  // rad/s -> rad/us
}

double dipole_element(Transition transition, int principal_n) {
    switch (transition) {
        case Transition::s5_p6_32:
            return 0.528;
        case Transition::s5_p6_12:
            return 0.235;
        case Transition::p6_nd:
            if (principal_n < 20)
                throw ContractViolation("dipole_element: 6P-nD needs principal n >= 20");
            return 0.035 * std::pow(53.0 / principal_n, 1.5);
    }
    throw ContractViolation("dipole_element: unknown transition");
}

double blockade_radius(double c6, double omega_eff) {
    if (!(c6 > 0.0) || !(omega_eff > 0.0))
        throw ContractViolation("blockade_radius: inputs must be positive");
    return std::pow(c6 / omega_eff, 1.0 / 6.0);
}

}  // namespace rydcz::analytic
