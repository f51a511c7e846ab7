#ifndef FRACWAVE_GRID_HPP
#define FRACWAVE_GRID_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace fracwave {

/// Periodic box [-L, L)^N sampled with M points per axis, M a power of two.
/// Wavenumbers are k_j = pi*j/L for integer j in [-M/2, M/2).
struct Grid {
    int dim;            // N in {1, 2}
    int m;              // points per axis
    double half_length; // L

    Grid(int dim_, int m_, double half_length_);

    double spacing() const { return 2.0 * half_length / m; }
    std::size_t size() const { return dim == 1 ? std::size_t(m) : std::size_t(m) * m; }
    /// Cell volume h^N used by the rectangle rule (spectrally exact on the torus).
    double cell_volume() const;

    /// Physical coordinate of sample index j along one axis.
    double coord(int j) const { return -half_length + j * spacing(); }
    /// Signed integer frequency for spectral bin j along one axis (j in [0, m)).
    int freq_index(int j) const { return j <= m / 2 ? j : j - m; }
    /// Wavenumber of spectral bin j along one axis.
    double wavenumber(int j) const;

    /// |k| for a flattened spectral bin index.
    double k_abs(std::size_t flat) const;
    /// Position vector of a flattened sample index.
    std::array<double, 2> point(std::size_t flat) const;

    bool operator==(const Grid& o) const {
        return dim == o.dim && m == o.m && half_length == o.half_length;
    }
};

using Complex = std::complex<double>;

/// Normalized analysis transform: c_k = (1/M^N) sum_j f_j e^{-i k x_j}
/// (bins in FFT order). Synthesis is the unnormalized adjoint.
void fft_analyze(const Grid& g, const std::vector<Complex>& in, std::vector<Complex>& out);
void fft_synthesize(const Grid& g, const std::vector<Complex>& in, std::vector<Complex>& out);

/// Real grid sample of a field on a periodic box. Immutable value object;
/// all operations are pure and thread-safe.
class SpectralField {
  public:
    SpectralField(Grid grid, std::vector<double> values);

    static SpectralField zeros(const Grid& g);
    static SpectralField from_function(const Grid& g, const std::function<double(double)>& f);
    static SpectralField from_function2(const Grid& g,
                                        const std::function<double(double, double)>& f);
    /// Inverse transform of normalized spectral bins; imaginary residue is discarded
    /// after verifying it is at rounding level.
    static SpectralField from_coeffs(const Grid& g, const std::vector<Complex>& coeffs);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

    /// Normalized spectral coefficients (FFT bin order, Hermitian for real data).
    std::vector<Complex> coeffs() const;

    double sup_norm() const;
    double l2_norm() const; // sqrt(h^N sum u^2)
    /// h^N sum u_j  (box integral; exact for the periodization of decaying data)
    double integral() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator*=(double a);

  private:
    Grid grid_;
    std::vector<double> values_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Zero-pad normalized spectrum from m to 2m per axis (Nyquist split in half),
/// and the adjoint fold back to m per axis.
std::vector<Complex> pad_spectrum(const Grid& coarse, const std::vector<Complex>& c);
std::vector<Complex> truncate_spectrum(const Grid& coarse, const std::vector<Complex>& fine);

/// Evaluate a pointwise map of the field on a 2x oversampled grid and project
/// back onto the retained spectrum (generalized 1/2-rule dealiasing).
SpectralField dealiased_pointwise(const SpectralField& f,
                                  const std::function<double(double)>& pointwise);

} // namespace fracwave

#endif
