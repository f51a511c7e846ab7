#include "fracwave/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fracwave {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// FFTW planner is not thread-safe; executions on distinct arrays are.
// Plans are created FFTW_UNALIGNED so they can run on any std::vector buffer.
struct PlanPair {
    fftw_plan fwd{nullptr};
    fftw_plan bwd{nullptr};
};

class PlanCache {
  public:
    PlanPair get(int dim, int m) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(dim, m);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        std::size_t n = dim == 1 ? std::size_t(m) : std::size_t(m) * m;
        std::vector<Complex> a(n), b(n);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        PlanPair p;
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (dim == 1) {
            p.fwd = fftw_plan_dft_1d(m, pa, pb, FFTW_FORWARD, flags);
            p.bwd = fftw_plan_dft_1d(m, pa, pb, FFTW_BACKWARD, flags);
        } else {
            p.fwd = fftw_plan_dft_2d(m, m, pa, pb, FFTW_FORWARD, flags);
            p.bwd = fftw_plan_dft_2d(m, m, pa, pb, FFTW_BACKWARD, flags);
        }
        cache_[key] = p;
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, int>, PlanPair> cache_;
};

PlanCache& plans() {
    static PlanCache c;
    return c;
}

} // namespace

Grid::Grid(int dim_, int m_, double half_length_)
    : dim(dim_), m(m_), half_length(half_length_) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid: dim must be 1 or 2, got " + std::to_string(dim));
    if (m < 8 || !is_power_of_two(m))
        throw std::invalid_argument("grid: points_per_axis must be a power of two >= 8, got " +
                                    std::to_string(m));
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw std::invalid_argument("grid: half_length must be positive and finite");
}

double Grid::cell_volume() const {
    double h = spacing();
    return dim == 1 ? h : h * h;
}

double Grid::wavenumber(int j) const {
    return M_PI * freq_index(j) / half_length;
}

double Grid::k_abs(std::size_t flat) const {
    if (dim == 1) return std::abs(wavenumber(int(flat)));
    int j0 = int(flat / m), j1 = int(flat % m);
    double k0 = wavenumber(j0), k1 = wavenumber(j1);
    return std::sqrt(k0 * k0 + k1 * k1);
}

std::array<double, 2> Grid::point(std::size_t flat) const {
    if (dim == 1) return {coord(int(flat)), 0.0};
    return {coord(int(flat / m)), coord(int(flat % m))};
}

void fft_analyze(const Grid& g, const std::vector<Complex>& in, std::vector<Complex>& out) {
    out.resize(in.size());
    PlanPair p = plans().get(g.dim, g.m);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    double scale = 1.0 / double(g.size());
    for (auto& c : out) c *= scale;
}

void fft_synthesize(const Grid& g, const std::vector<Complex>& in, std::vector<Complex>& out) {
    out.resize(in.size());
    PlanPair p = plans().get(g.dim, g.m);
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

SpectralField::SpectralField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("SpectralField: value array size does not match grid");
}

SpectralField SpectralField::zeros(const Grid& g) {
    return SpectralField(g, std::vector<double>(g.size(), 0.0));
}

SpectralField SpectralField::from_function(const Grid& g, const std::function<double(double)>& f) {
    if (g.dim != 1) throw std::invalid_argument("from_function: 1-d grid required");
    std::vector<double> v(g.size());
    for (int j = 0; j < g.m; ++j) v[j] = f(g.coord(j));
    return SpectralField(g, std::move(v));
}

SpectralField SpectralField::from_function2(const Grid& g,
                                            const std::function<double(double, double)>& f) {
    if (g.dim != 2) throw std::invalid_argument("from_function2: 2-d grid required");
    std::vector<double> v(g.size());
    for (int j0 = 0; j0 < g.m; ++j0)
        for (int j1 = 0; j1 < g.m; ++j1)
            v[std::size_t(j0) * g.m + j1] = f(g.coord(j0), g.coord(j1));
    return SpectralField(g, std::move(v));
}

SpectralField SpectralField::from_coeffs(const Grid& g, const std::vector<Complex>& coeffs) {
    if (coeffs.size() != g.size())
        throw std::invalid_argument("from_coeffs: coefficient array size does not match grid");
    std::vector<Complex> synth;
    fft_synthesize(g, coeffs, synth);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < synth.size(); ++i) v[i] = synth[i].real();
    return SpectralField(g, std::move(v));
}

std::vector<Complex> SpectralField::coeffs() const {
    std::vector<Complex> in(values_.size()), out;
    for (std::size_t i = 0; i < values_.size(); ++i) in[i] = values_[i];
    fft_analyze(grid_, in, out);
    return out;
}

double SpectralField::sup_norm() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s * grid_.cell_volume());
}

double SpectralField::integral() const {
    double s = 0.0, c = 0.0;
    for (double v : values_) { // Kahan
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s * grid_.cell_volume();
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("field addition: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& v : values_) v *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

namespace {

// Per-axis bin mapping for zero-padding m -> 2m. A source bin maps to one
// target bin, except the Nyquist bin which splits into two half-weight bins.
struct AxisMap {
    int tgt[2];
    double w[2];
    int n;
};

AxisMap pad_map(int m, int j) {
    AxisMap a{};
    int f = j <= m / 2 ? j : j - m;
    if (j == m / 2) {
        a.n = 2;
        a.tgt[0] = m / 2;
        a.w[0] = 0.5;
        a.tgt[1] = 2 * m - m / 2;
        a.w[1] = 0.5;
    } else {
        a.n = 1;
        a.tgt[0] = f >= 0 ? f : 2 * m + f;
        a.w[0] = 1.0;
    }
    return a;
}

} // namespace

std::vector<Complex> pad_spectrum(const Grid& coarse, const std::vector<Complex>& c) {
    int m = coarse.m;
    if (coarse.dim == 1) {
        std::vector<Complex> out(std::size_t(2) * m, Complex(0.0));
        for (int j = 0; j < m; ++j) {
            AxisMap a = pad_map(m, j);
            for (int s = 0; s < a.n; ++s) out[a.tgt[s]] += a.w[s] * c[j];
        }
        return out;
    }
    std::vector<Complex> out(std::size_t(2 * m) * (2 * m), Complex(0.0));
    for (int j0 = 0; j0 < m; ++j0) {
        AxisMap a0 = pad_map(m, j0);
        for (int j1 = 0; j1 < m; ++j1) {
            AxisMap a1 = pad_map(m, j1);
            Complex v = c[std::size_t(j0) * m + j1];
            for (int s0 = 0; s0 < a0.n; ++s0)
                for (int s1 = 0; s1 < a1.n; ++s1)
                    out[std::size_t(a0.tgt[s0]) * (2 * m) + a1.tgt[s1]] += a0.w[s0] * a1.w[s1] * v;
        }
    }
    return out;
}

std::vector<Complex> truncate_spectrum(const Grid& coarse, const std::vector<Complex>& fine) {
    int m = coarse.m;
    if (coarse.dim == 1) {
        std::vector<Complex> out(std::size_t(m), Complex(0.0));
        for (int j = 0; j < m; ++j) {
            AxisMap a = pad_map(m, j);
            for (int s = 0; s < a.n; ++s) out[j] += fine[a.tgt[s]];
        }
        return out;
    }
    std::vector<Complex> out(std::size_t(m) * m, Complex(0.0));
    for (int j0 = 0; j0 < m; ++j0) {
        AxisMap a0 = pad_map(m, j0);
        for (int j1 = 0; j1 < m; ++j1) {
            AxisMap a1 = pad_map(m, j1);
            Complex acc(0.0);
            for (int s0 = 0; s0 < a0.n; ++s0)
                for (int s1 = 0; s1 < a1.n; ++s1)
                    acc += fine[std::size_t(a0.tgt[s0]) * (2 * m) + a1.tgt[s1]];
            out[std::size_t(j0) * m + j1] = acc;
        }
    }
    return out;
}

SpectralField dealiased_pointwise(const SpectralField& f,
                                  const std::function<double(double)>& pointwise) {
    const Grid& g = f.grid();
    Grid fine(g.dim, 2 * g.m, g.half_length);
    std::vector<Complex> cf = pad_spectrum(g, f.coeffs());
    std::vector<Complex> vals;
    fft_synthesize(fine, cf, vals);
    for (auto& z : vals) z = Complex(pointwise(z.real()), 0.0);
    std::vector<Complex> cf2;
    fft_analyze(fine, vals, cf2);
    return SpectralField::from_coeffs(g, truncate_spectrum(g, cf2));
}

} // namespace fracwave
