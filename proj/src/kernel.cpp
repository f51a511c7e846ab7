#include "fracwave/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracwave {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double SQRT_2_OVER_PI = 0.79788456080286535588; // sqrt(2/pi)

// Frequency cutoff with exp(-Xi^sigma) < 1e-18.
double freq_cutoff(double sigma) { return std::pow(41.5, 1.0 / sigma); }

double& ooura_result_err() {
    thread_local double e = 0.0;
    return e;
}

// int_0^inf f(s) cos(w s) ds and the sin analogue; w = 0 handled directly.
template <class F>
double fourier_cos(F f, double w, double cutoff) {
    if (w < 1e-9) {
        double err = 0.0;
        double v = gauss_kronrod<double, 61>::integrate(f, 0.0, cutoff, 12, 1e-14, &err);
        ooura_result_err() = err;
        return v;
    }
    thread_local boost::math::quadrature::ooura_fourier_cos<double> integrator(1e-13);
    auto [v, rel] = integrator.integrate(f, w);
    ooura_result_err() = std::abs(v) * rel;
    return v;
}

template <class F>
double fourier_sin(F f, double w) {
    thread_local boost::math::quadrature::ooura_fourier_sin<double> integrator(1e-13);
    auto [v, rel] = integrator.integrate(f, w);
    ooura_result_err() = std::abs(v) * rel;
    return v;
}

// int_0^cutoff f(s) J_nu(s r) ds split at the (asymptotic) Bessel zeros.
template <class F>
double bessel_integral(F f, int nu, double r, double cutoff) {
    if (r * cutoff < 20.0) {
        double err = 0.0;
        auto g = [&](double s) { return f(s) * boost::math::cyl_bessel_j(nu, s * r); };
        return gauss_kronrod<double, 31>::integrate(g, 0.0, cutoff, 12, 1e-13, &err);
    }
    double step = M_PI / r;
    double acc = 0.0, comp = 0.0;
    double a = 0.0;
    auto g = [&](double s) { return f(s) * boost::math::cyl_bessel_j(nu, s * r); };
    while (a < cutoff) {
        double b = std::min(a + step, cutoff);
        double piece = boost::math::quadrature::gauss<double, 15>::integrate(g, a, b);
        double y = piece - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        a = b;
    }
    return acc;
}

} // namespace

double heat_kernel_phi(double r, double sigma, int dim) {
    if (!(sigma > 0.0) || sigma > 2.0)
        throw std::invalid_argument("heat_kernel_phi: sigma must lie in (0, 2]");
    if (!std::isfinite(r)) throw std::domain_error("heat_kernel_phi: non-finite radius");
    r = std::abs(r);
    double cutoff = freq_cutoff(sigma);
    if (dim == 1) {
        auto f = [sigma](double xi) { return std::exp(-std::pow(xi, sigma)); };
        return SQRT_2_OVER_PI * fourier_cos(f, r, cutoff);
    }
    if (dim == 2) {
        auto f = [sigma](double s) { return s * std::exp(-std::pow(s, sigma)); };
        return bessel_integral(f, 0, r, cutoff);
    }
    throw std::invalid_argument("heat_kernel_phi: dim must be 1 or 2");
}

double heat_kernel_grad_dot_x(double r, double sigma, int dim) {
    r = std::abs(r);
    double cutoff = freq_cutoff(sigma);
    if (dim == 1) {
        if (r == 0.0) return 0.0;
        auto f = [sigma](double xi) { return xi * std::exp(-std::pow(xi, sigma)); };
        return -r * SQRT_2_OVER_PI * fourier_sin(f, r);
    }
    if (dim == 2) {
        if (r == 0.0) return 0.0;
        auto f = [sigma](double s) { return s * s * std::exp(-std::pow(s, sigma)); };
        return -r * bessel_integral(f, 1, r, cutoff);
    }
    throw std::invalid_argument("heat_kernel_grad_dot_x: dim must be 1 or 2");
}

double heat_kernel_laplacian(double r, double sigma, int dim) {
    r = std::abs(r);
    double cutoff = freq_cutoff(sigma);
    if (dim == 1) {
        auto f = [sigma](double xi) { return xi * xi * std::exp(-std::pow(xi, sigma)); };
        return -SQRT_2_OVER_PI * fourier_cos(f, r, cutoff);
    }
    if (dim == 2) {
        auto f = [sigma](double s) { return s * s * s * std::exp(-std::pow(s, sigma)); };
        return -bessel_integral(f, 0, r, cutoff);
    }
    throw std::invalid_argument("heat_kernel_laplacian: dim must be 1 or 2");
}

namespace {

// Box mass int_{|x| <= T} phi dx, exact in x (Fubini over the finite window):
//   N=1:  2 sqrt(2/pi) int_0^inf e^{-xi^sigma} sin(xi T)/xi dxi
//   N=2:  2 pi T int_0^inf e^{-s^sigma} J_1(s T) ds
double box_mass(double T, double sigma, int dim) {
    double cutoff = freq_cutoff(sigma);
    if (dim == 1) {
        auto f = [sigma](double xi) { return std::exp(-std::pow(xi, sigma)) / xi; };
        return 2.0 * SQRT_2_OVER_PI * fourier_sin(f, T);
    }
    auto f = [sigma](double s) { return std::exp(-std::pow(s, sigma)); };
    return 2.0 * M_PI * T * bessel_integral(f, 1, T, cutoff);
}

// Full-space mass by Richardson extrapolation of the box mass with the known
// tail exponents {k sigma}. For sigma = 2 the tail is Gaussian and a single
// wide window suffices.
double full_mass(double sigma, int dim, double* err_out) {
    if (sigma > 1.999999) {
        double v = box_mass(40.0, sigma, dim);
        if (err_out) *err_out = 1e-13 * std::abs(v);
        return v;
    }
    const int levels = 7;
    double R[levels][levels];
    double T = 20.0;
    for (int j = 0; j < levels; ++j) {
        R[j][0] = box_mass(T * std::pow(2.0, j), sigma, dim);
        for (int mdeg = 1; mdeg <= j; ++mdeg) {
            double f = std::pow(2.0, mdeg * sigma) - 1.0;
            R[j][mdeg] = R[j][mdeg - 1] + (R[j][mdeg - 1] - R[j - 1][mdeg - 1]) / f;
        }
    }
    if (err_out)
        *err_out = std::abs(R[levels - 1][levels - 1] - R[levels - 1][levels - 2]);
    return R[levels - 1][levels - 1];
}

} // namespace

KernelIntegrals kernel_integrals(double sigma, int dim, double tol) {
    if (!(sigma > 0.0) || sigma > 2.0)
        throw std::invalid_argument("kernel_integrals: sigma must lie in (0, 2]");
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("kernel_integrals: dim must be 1 or 2");

    double err_total = 0.0;

    double mass_err = 0.0;
    double mass = full_mass(sigma, dim, &mass_err);
    err_total += mass_err;

    // Window edge where the integrands have settled into their one-sign tails.
    double T = 20.0;
    auto tail_mass = [&](double Tv) { return mass - box_mass(Tv, sigma, dim); };

    if (sigma < 1.999999) {
        for (int tries = 0; tries < 4; ++tries) {
            bool ok = true;
            for (double rr : {T, 1.5 * T, 2.5 * T}) {
                if (!(heat_kernel_phi(rr, sigma, dim) > 0.0)) ok = false;
                if (!(heat_kernel_grad_dot_x(rr, sigma, dim) < 0.0)) ok = false;
                if (!(heat_kernel_laplacian(rr, sigma, dim) > 0.0)) ok = false;
            }
            if (ok) break;
            T *= 2.0;
        }
    }

    double err = 0.0;
    double grad_interior, lap_interior;
    if (dim == 1) {
        auto g1 = [&](double r) { return std::abs(heat_kernel_grad_dot_x(r, sigma, 1)); };
        grad_interior = 2.0 * gauss_kronrod<double, 31>::integrate(g1, 0.0, T, 10, 1e-10, &err);
        err_total += err;
        auto g2 = [&](double r) { return r * r * std::abs(heat_kernel_laplacian(r, sigma, 1)); };
        lap_interior = 2.0 * gauss_kronrod<double, 31>::integrate(g2, 0.0, T, 10, 1e-10, &err);
        err_total += err;
    } else {
        auto g1 = [&](double r) { return r * std::abs(heat_kernel_grad_dot_x(r, sigma, 2)); };
        grad_interior =
            2.0 * M_PI * gauss_kronrod<double, 31>::integrate(g1, 0.0, T, 10, 1e-9, &err);
        err_total += err;
        auto g2 = [&](double r) {
            return r * r * r * std::abs(heat_kernel_laplacian(r, sigma, 2));
        };
        lap_interior =
            2.0 * M_PI * gauss_kronrod<double, 31>::integrate(g2, 0.0, T, 10, 1e-9, &err);
        err_total += err;
    }

    // Tail closures by parts, using phi > 0, phi' < 0 and the sign-settled
    // second radial derivative checked above.
    double phiT = heat_kernel_phi(T, sigma, dim);
    double dphiT = heat_kernel_grad_dot_x(T, sigma, dim) / T; // phi'(T)
    double grad_tail, lap_tail;
    double mt = std::max(tail_mass(T), 0.0);
    if (dim == 1) {
        grad_tail = 2.0 * (T * phiT + mt / 2.0);
        lap_tail = 2.0 * (-T * T * dphiT + 2.0 * T * phiT + mt);
    } else {
        grad_tail = 2.0 * M_PI * (T * T * phiT) + 2.0 * mt;
        lap_tail = 2.0 * M_PI * (-T * T * T * dphiT + 2.0 * T * T * phiT) + 4.0 * mt;
    }
    if (sigma > 1.999999) { // Gaussian tails beyond T are negligible
        grad_tail = (dim == 1) ? 2.0 * T * phiT : 2.0 * M_PI * T * T * phiT;
        lap_tail = 0.0;
    }

    KernelIntegrals out;
    out.integral_phi = mass;
    out.integral_grad_x = grad_interior + grad_tail;
    out.integral_x2_lap = lap_interior + lap_tail;
    out.est_error = err_total;
    out.converged = err_total < tol * std::max(1.0, std::abs(mass));
    return out;
}

RadialKernelTable::RadialKernelTable(double sigma, int dim, double r_max, int n)
    : sigma_(sigma), dim_(dim), r_max_(r_max), dr_(r_max / (n - 1)), val_(n) {
    for (int i = 0; i < n; ++i) val_[i] = heat_kernel_phi(i * dr_, sigma, dim);
    double edge = val_[n - 1];
    tail_c_ = (sigma < 1.999999) ? edge * std::pow(r_max, dim + sigma) : 0.0;
}

double RadialKernelTable::operator()(double r) const {
    r = std::abs(r);
    if (r >= r_max_) {
        if (tail_c_ == 0.0) return 0.0;
        return tail_c_ * std::pow(r, -(dim_ + sigma_));
    }
    double u = r / dr_;
    int i = int(u);
    double f = u - i;
    // cubic Catmull-Rom with clamped ends
    int n = int(val_.size());
    int im1 = std::max(i - 1, 0), ip1 = std::min(i + 1, n - 1), ip2 = std::min(i + 2, n - 1);
    double p0 = val_[im1], p1 = val_[i], p2 = val_[ip1], p3 = val_[ip2];
    double a0 = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    double a1 = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    double a2 = -0.5 * p0 + 0.5 * p2;
    return ((a0 * f + a1) * f + a2) * f + p1;
}

std::shared_ptr<const RadialKernelTable> kernel_table(double sigma, int dim, double r_max) {
    static std::mutex mu;
    static std::map<std::tuple<double, int, double>, std::shared_ptr<const RadialKernelTable>> cache;
    // bucket r_max upward to powers of two to maximize reuse
    double bucket = 8.0;
    while (bucket < r_max) bucket *= 2.0;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(sigma, dim, bucket);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const RadialKernelTable>(sigma, dim, bucket,
                                                       std::max(4096, int(bucket * 48)));
    cache[key] = t;
    return t;
}

} // namespace fracwave
