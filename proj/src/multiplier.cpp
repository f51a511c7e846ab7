#include "fracwave/multiplier.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracwave {

double multiplier_symbol(const MultiplierSpec& spec, double k_abs) {
    double t = spec.time;
    switch (spec.kind) {
        case MultiplierKind::frac_laplacian:
            return std::pow(k_abs, spec.sigma);
        case MultiplierKind::wave_sine: {
            double w = std::pow(k_abs, spec.sigma / 2.0);
            return w == 0.0 ? t : std::sin(t * w) / w; // sin(tx)/x -> t
        }
        case MultiplierKind::wave_cosine:
        case MultiplierKind::wave_sine_dt:
            return std::cos(t * std::pow(k_abs, spec.sigma / 2.0));
        case MultiplierKind::heat:
            return std::exp(-t * std::pow(k_abs, spec.sigma));
    }
    return 0.0;
}

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSpec& spec) {
    if (!(spec.sigma > 0.0) || spec.sigma > 2.0)
        throw std::invalid_argument("apply_multiplier: sigma must lie in (0, 2]");
    if (spec.kind != MultiplierKind::frac_laplacian && spec.time < 0.0)
        throw std::invalid_argument("apply_multiplier: time must be >= 0");
    const auto& v = field.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::domain_error("apply_multiplier: non-finite input value at index " +
                                    std::to_string(i));

    std::vector<Complex> c = field.coeffs();
    const Grid& g = field.grid();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= multiplier_symbol(spec, g.k_abs(i));
    return SpectralField::from_coeffs(g, c);
}

namespace {

double angle_weight(double r2, double q) { return std::pow(1.0 + r2, -q / 2.0); }

// W(w) = int_w^inf (1+y^2)^{-q/2} dy via y = tan(theta).
double angle_weight_tail_integral(double w, double q) {
    using boost::math::quadrature::gauss;
    double a = std::atan(w), b = M_PI / 2.0;
    auto f = [&](double th) {
        double c = std::cos(th);
        return std::pow(c, q - 2.0);
    };
    return gauss<double, 31>::integrate(f, a, b);
}

double angle_weight_deriv(double y, double q) {
    return -q * y * std::pow(1.0 + y * y, -q / 2.0 - 1.0);
}

// One-sided lattice tail sum_{m >= m0} f(x + 2Lm) by Euler-Maclaurin.
double lattice_tail_1d(double x, double L, double q, int m0) {
    double s = x + 2.0 * L * (m0 - 0.5);
    double integral = angle_weight_tail_integral(s, q) / (2.0 * L);
    double deriv = (2.0 * L / 24.0) * angle_weight_deriv(s, q);
    return integral + deriv;
}

} // namespace

SpectralField periodized_angle_weight(const Grid& g, double q) {
    if (!(q > g.dim))
        throw std::invalid_argument("periodized_angle_weight: q must exceed the dimension");
    double L = g.half_length;
    if (g.dim == 1) {
        const int m0 = 64;
        std::vector<double> v(g.size());
        for (int j = 0; j < g.m; ++j) {
            double x = g.coord(j);
            double s = 0.0;
            for (int mm = -m0; mm <= m0; ++mm) {
                double y = x + 2.0 * L * mm;
                s += angle_weight(y * y, q);
            }
            s += lattice_tail_1d(x, L, q, m0 + 1);
            s += lattice_tail_1d(-x, L, q, m0 + 1);
            v[j] = s;
        }
        return SpectralField(g, std::move(v));
    }
    const int m0 = 24;
    std::vector<double> v(g.size());
    double r0 = 2.0 * L * (m0 + 0.5);
    // ring tail approximated by the radial integral over |y| > r0
    double ring = (q > 2.0)
                      ? 2.0 * M_PI / (4.0 * L * L) * std::pow(1.0 + r0 * r0, 1.0 - q / 2.0) /
                            (q - 2.0)
                      : 0.0;
    for (int j0 = 0; j0 < g.m; ++j0) {
        double x0 = g.coord(j0);
        for (int j1 = 0; j1 < g.m; ++j1) {
            double x1 = g.coord(j1);
            double s = 0.0;
            for (int a = -m0; a <= m0; ++a) {
                double y0 = x0 + 2.0 * L * a;
                for (int b = -m0; b <= m0; ++b) {
                    double y1 = x1 + 2.0 * L * b;
                    s += angle_weight(y0 * y0 + y1 * y1, q);
                }
            }
            v[std::size_t(j0) * g.m + j1] = s + ring;
        }
    }
    return SpectralField(g, std::move(v));
}

SpectralField frac_laplacian_weight(double q, const Grid& g, double sigma) {
    if (!(q > g.dim))
        throw std::invalid_argument(
            "frac_laplacian_weight: q <= N gives a non-integrable weight (q = " +
            std::to_string(q) + ", N = " + std::to_string(g.dim) + ")");
    SpectralField w = periodized_angle_weight(g, q);
    return apply_multiplier(w, {MultiplierKind::frac_laplacian, sigma, 0.0});
}

} // namespace fracwave
