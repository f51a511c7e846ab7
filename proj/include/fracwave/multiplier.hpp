#ifndef FRACWAVE_MULTIPLIER_HPP
#define FRACWAVE_MULTIPLIER_HPP

#include "fracwave/grid.hpp"

namespace fracwave {

/// Fourier multipliers used throughout: the fractional Laplacian symbol and
/// the propagators of the linear fractional wave / heat equations.
enum class MultiplierKind {
    frac_laplacian, // |k|^sigma
    wave_sine,      // sin(t |k|^{sigma/2}) / |k|^{sigma/2}, value t at k = 0
    wave_cosine,    // cos(t |k|^{sigma/2})
    wave_sine_dt,   // d/dt of wave_sine = cos(t |k|^{sigma/2})
    heat,           // exp(-t |k|^sigma)
};

struct MultiplierSpec {
    MultiplierKind kind;
    double sigma; // in (0, 2]
    double time = 0.0;
};

/// Symbol m(|k|); real for every kind.
double multiplier_symbol(const MultiplierSpec& spec, double k_abs);

/// Apply the multiplier spectrally. Rejects non-finite input values with a
/// diagnostic naming the first offending index. Real input gives real output.
SpectralField apply_multiplier(const SpectralField& field, const MultiplierSpec& spec);

/// Periodization of <x>^{-q} on the grid's box: sum over lattice images with
/// an Euler-Maclaurin tail so the sampled function is smooth on the torus.
SpectralField periodized_angle_weight(const Grid& g, double q);

/// (-Delta)^{sigma/2} <x>^{-q} sampled on the grid, computed spectrally from
/// the periodized weight. Requires q > N (integrable weight).
SpectralField frac_laplacian_weight(double q, const Grid& g, double sigma);

} // namespace fracwave

#endif
