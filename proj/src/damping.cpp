#include "fracwave/damping.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracwave {

DampingProfile::DampingProfile(double beta_, double b1_) : beta(beta_), b1(b1_) {
    if (!(beta >= -1.0 && beta <= 1.0))
        throw std::invalid_argument("damping: beta must lie in [-1, 1], got " +
                                    std::to_string(beta));
    if (!(b1 > 0.0) || !std::isfinite(b1))
        throw std::invalid_argument("damping: b1 must be positive");
}

double b_at(const DampingProfile& p, double t) {
    return p.b1 * std::pow(1.0 + t, -p.beta);
}

double db_dt(const DampingProfile& p, double t) {
    return -p.beta * p.b1 * std::pow(1.0 + t, -p.beta - 1.0);
}

double damping_integral(const DampingProfile& p, double t) {
    if (p.beta == 1.0) return p.b1 * std::log1p(t);
    double g = 1.0 - p.beta;
    return p.b1 * std::expm1(g * std::log1p(t)) / g;
}

double damping_integral_between(const DampingProfile& p, double t, double s) {
    if (p.beta == 1.0) return p.b1 * std::log1p(s / (1.0 + t));
    double g = 1.0 - p.beta;
    // (1+t+s)^g - (1+t)^g without cancellation
    return p.b1 * std::pow(1.0 + t, g) * std::expm1(g * std::log1p(s / (1.0 + t))) / g;
}

double comparison_B(const DampingProfile& p, double t) {
    if (t < 0.0) throw std::invalid_argument("comparison_B: t must be >= 0");
    if (p.beta == -1.0) return std::log1p(t) / p.b1;
    double g = 1.0 + p.beta;
    return std::expm1(g * std::log1p(t)) / (p.b1 * g);
}

double comparison_B_inverse(const DampingProfile& p, double tau) {
    if (!(tau >= 0.0))
        throw std::invalid_argument("comparison_B_inverse: tau outside the range of B");
    if (p.beta == -1.0) return std::expm1(p.b1 * tau);
    double g = 1.0 + p.beta;
    return std::expm1(std::log1p(p.b1 * g * tau) / g);
}

double compute_B0(const DampingProfile& p, double abs_tol) {
    if (p.beta == 1.0 && p.b1 <= 1.0)
        throw std::invalid_argument(
            "compute_B0: divergent integral; beta = 1 requires b1 > 1 (b1 = " +
            std::to_string(p.b1) + ")");
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double v = integrator.integrate([&](double t) { return std::exp(-damping_integral(p, t)); },
                                    abs_tol, &err);
    if (err > 1e-10 * std::max(1.0, v))
        throw std::runtime_error("compute_B0: quadrature failed to converge");
    return v;
}

double g_value(const DampingProfile& p, double t) {
    if (t < 0.0) throw std::invalid_argument("g_value: t must be >= 0");
    if (p.beta == 1.0 && p.b1 <= 1.0)
        throw std::invalid_argument("g_value: profile has divergent B0 (beta = 1, b1 <= 1)");
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(
        [&](double s) { return std::exp(-damping_integral_between(p, t, s)); }, 1e-13);
}

AuxiliaryFunctions::AuxiliaryFunctions(const DampingProfile& p)
    : profile_(p), B0_(compute_B0(p)) {
    mesh_t_ = {0.0};
    cum_G_ = {0.0};
    cum_Gamma_ = {0.0};
}

namespace {

// 15-point Gauss-Legendre of f over [a, b]
template <class F>
double segment_integral(F f, double a, double b) {
    return boost::math::quadrature::gauss<double, 15>::integrate(f, a, b);
}

} // namespace

void AuxiliaryFunctions::extend_to(double t) const {
    while (mesh_t_.back() < t) {
        double a = mesh_t_.back();
        double b = std::max(a + 0.25, a * 1.2);
        auto g = [this](double s) { return g_value(profile_, s); };
        auto ig = [this](double s) { return 1.0 / g_value(profile_, s); };
        cum_G_.push_back(cum_G_.back() + segment_integral(g, a, b));
        cum_Gamma_.push_back(cum_Gamma_.back() + segment_integral(ig, a, b));
        mesh_t_.push_back(b);
    }
}

double AuxiliaryFunctions::G_at(double t) const {
    if (t < 0.0) throw std::invalid_argument("G_at: t must be >= 0");
    std::lock_guard<std::mutex> lock(mu_);
    extend_to(t);
    auto it = std::lower_bound(mesh_t_.begin(), mesh_t_.end(), t);
    std::size_t i = it - mesh_t_.begin();
    if (mesh_t_[i] == t) return cum_G_[i];
    double a = mesh_t_[i - 1];
    auto g = [this](double s) { return g_value(profile_, s); };
    return cum_G_[i - 1] + segment_integral(g, a, t);
}

double AuxiliaryFunctions::Gamma_at(double t) const {
    if (t < 0.0) throw std::invalid_argument("Gamma_at: t must be >= 0");
    std::lock_guard<std::mutex> lock(mu_);
    extend_to(t);
    auto it = std::lower_bound(mesh_t_.begin(), mesh_t_.end(), t);
    std::size_t i = it - mesh_t_.begin();
    if (mesh_t_[i] == t) return cum_Gamma_[i];
    double a = mesh_t_[i - 1];
    auto ig = [this](double s) { return 1.0 / g_value(profile_, s); };
    return cum_Gamma_[i - 1] + segment_integral(ig, a, t);
}

double AuxiliaryFunctions::ode_residual(double t) const {
    double h = 1e-3 * std::max(1.0, t);
    if (t < 2.0 * h) h = std::max(t / 2.0, 1e-4);
    double gp;
    if (t >= 2.0 * h) {
        double gm2 = g_at(t - 2 * h), gm1 = g_at(t - h), gp1 = g_at(t + h), gp2 = g_at(t + 2 * h);
        gp = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
    } else {
        gp = (g_at(t + h) - g_at(std::max(t - h, 0.0))) / (h + std::min(t, h));
    }
    return -gp + b_at(profile_, t) * g_at(t) - 1.0;
}

} // namespace fracwave
