#include "spinwave.hpp"

#include <cmath>

#include "quadrature.hpp"
#include "units.hpp"

namespace rydcz::blockade {

namespace {

// 1-D normalization of exp(-2 (u/w)^p)
double norm_1d(double w, int p) {
    if (p == 2) return w * std::sqrt(M_PI / 2.0);
    auto gl = quadrature::gauss_legendre(64, 0.0, 1.6 * w);
    double acc = 0.0;
    for (size_t k = 0; k < gl.nodes.size(); ++k)
        acc += gl.weights[k] * std::exp(-2.0 * std::pow(gl.nodes[k] / w, p));
    return 2.0 * acc;
}

// 2-D (radial) normalization of exp(-2 (rho/w)^p)
double norm_2d(double w, int p) {
    if (p == 2) return M_PI * w * w / 2.0;
    auto gl = quadrature::gauss_legendre(64, 0.0, 1.6 * w);
    double acc = 0.0;
    for (size_t k = 0; k < gl.nodes.size(); ++k)
        acc += gl.weights[k] * std::exp(-2.0 * std::pow(gl.nodes[k] / w, p)) * units::two_pi *
               gl.nodes[k];
    return acc;
}

// normalized 1-D autocorrelation of the longitudinal density at lag s
double autocorr_1d(double s, double w, int p) {
    if (p == 2) return std::exp(-s * s / (w * w)) / (w * std::sqrt(M_PI));
    const double cut = 1.4 * w;
    auto gl = quadrature::gauss_legendre(64, -cut - std::abs(s), cut);
    double acc = 0.0;
    for (size_t k = 0; k < gl.nodes.size(); ++k) {
        double u = gl.nodes[k];
        acc += gl.weights[k] * std::exp(-2.0 * (std::pow(std::abs(u) / w, p) +
                                                std::pow(std::abs(u + s) / w, p)));
    }
    double n = norm_1d(w, p);
    return acc / (n * n);
}

// normalized 2-D autocorrelation of the transverse density at lag s
double autocorr_2d(double s, double w, int p) {
    if (p == 2) return std::exp(-s * s / (w * w)) / (M_PI * w * w);
    const double cut = 1.4 * w;
    auto glr = quadrature::gauss_legendre(48, 0.0, cut);
    auto gla = quadrature::gauss_legendre(48, 0.0, M_PI);
    double acc = 0.0;
    for (size_t i = 0; i < glr.nodes.size(); ++i) {
        double rho = glr.nodes[i];
        double inner = 0.0;
        for (size_t j = 0; j < gla.nodes.size(); ++j) {
            double r2 = std::sqrt(rho * rho + s * s + 2.0 * rho * s * std::cos(gla.nodes[j]));
            inner += gla.weights[j] * std::exp(-2.0 * std::pow(r2 / w, p));
        }
        acc += glr.weights[i] * rho * std::exp(-2.0 * std::pow(rho / w, p)) * 2.0 * inner;
    }
    double n = norm_2d(w, p);
    return acc / (n * n);
}

}  // namespace

void SpinWaveProfile::validate() const {
    if (!(w_par > 0.0) || !(w_perp > 0.0))
        throw ContractViolation("SpinWaveProfile: widths must be positive");
}

double SpinWaveProfile::unnormalized_density(double x_par, double x_perp) const {
    const int p = order();
    return std::exp(-2.0 * (std::pow(std::abs(x_par) / w_par, p) +
                            std::pow(std::abs(x_perp) / w_perp, p)));
}

double SpinWaveProfile::normalization() const {
    validate();
    return norm_1d(w_par, order()) * norm_2d(w_perp, order());
}

void InteractionModel::validate() const {
    if (!(c6 > 0.0) || !(rb_par > 0.0) || !(rb_perp > 0.0))
        throw ContractViolation("InteractionModel: parameters must be positive");
}

double vdw_interaction(double x_par, double x_perp, const InteractionModel& model) {
    model.validate();
    if (model.mode == InteractionModel::Mode::isotropic) {
        double r2 = x_par * x_par + x_perp * x_perp;
        if (!(r2 > 0.0)) throw ContractViolation("vdw_interaction: zero separation");
        return model.c6 / (r2 * r2 * r2);
    }
    double upar = x_par / model.rb_par, uperp = x_perp / model.rb_perp;
    double u2 = upar * upar + uperp * uperp;
    if (!(u2 > 0.0)) throw ContractViolation("vdw_interaction: zero separation");
    double vb = model.c6 / std::pow(model.rb_par, 6);
    return vb / (u2 * u2 * u2);
}

SeparationDistribution separation_distribution(const SpinWaveProfile& profile,
                                               const InteractionModel& model,
                                               const SeparationSampler& sampler) {
    profile.validate();
    model.validate();
    if (sampler.radial_order < 8 || sampler.angular_order < 4)
        throw ContractViolation("separation_distribution: sampler under-resolved (needs >= 8 x 4)");
    if (model.mode == InteractionModel::Mode::isotropic &&
        std::abs(model.rb_par - model.rb_perp) > 1e-12 * model.rb_par)
        throw ContractViolation(
            "separation_distribution: isotropic interaction needs rb_par == rb_perp");

    // everything in blockade-scaled coordinates
    const double wpar = profile.w_par / model.rb_par;
    const double wperp = profile.w_perp / model.rb_perp;
    const int p = profile.order();
    const double umax = (p == 2 ? 4.5 : 2.6) * std::max(wpar, wperp);

    auto glr = quadrature::gauss_legendre(sampler.radial_order, 0.0, umax);
    auto gla = quadrature::gauss_legendre(sampler.angular_order, 0.0, M_PI);

    SeparationDistribution dist;
    dist.nodes.resize(glr.nodes.size());
    double sum = 0.0;
    for (size_t k = 0; k < glr.nodes.size(); ++k) {
        const double u = glr.nodes[k];
        double w = 0.0;
        for (size_t l = 0; l < gla.nodes.size(); ++l) {
            const double th = gla.nodes[l];
            const double spar = u * std::cos(th);
            const double sperp = u * std::sin(th);
            w += gla.weights[l] * std::sin(th) * autocorr_1d(spar, wpar, p) *
                 autocorr_2d(sperp, wperp, p);
        }
        w *= glr.weights[k] * units::two_pi * u * u;
        dist.nodes[k] = {u, w};
        sum += w;
    }
    dist.raw_weight_sum = sum;
    for (auto& node : dist.nodes) node.weight /= sum;
    return dist;
}

}  // namespace rydcz::blockade
