#ifndef FRACWAVE_KERNEL_HPP
#define FRACWAVE_KERNEL_HPP

#include <memory>
#include <vector>

namespace fracwave {

/// phi(x) = F^{-1}[exp(-|xi|^sigma)] under the symmetric (2pi)^{-N/2}
/// convention, evaluated at radius r by deterministic quadrature of the
/// radially reduced Fourier integral.
double heat_kernel_phi(double r, double sigma, int dim);

/// r * phi'(r)  (= grad phi . x for radial phi)
double heat_kernel_grad_dot_x(double r, double sigma, int dim);

/// Laplacian of phi at radius r.
double heat_kernel_laplacian(double r, double sigma, int dim);

struct KernelIntegrals {
    double integral_phi;      // int phi dx            (= (2pi)^{N/2})
    double integral_grad_x;   // int |grad phi . x| dx
    double integral_x2_lap;   // int |x|^2 |Delta phi| dx
    double est_error;         // aggregate quadrature error estimate
    bool converged;           // est_error within the requested tolerance
};

/// Lemma-style kernel integrals by quadrature; throws nothing, reports
/// non-convergence through the converged flag.
KernelIntegrals kernel_integrals(double sigma, int dim, double tol = 1e-9);

/// Radial lookup table of phi for fast dilated-kernel evaluation on grids.
/// Values are cubic-interpolated; beyond r_max the algebraic tail model
/// c / r^{N+sigma} fitted at the table edge is used (sigma < 2), or 0.
class RadialKernelTable {
  public:
    RadialKernelTable(double sigma, int dim, double r_max, int n = 4096);
    double operator()(double r) const;
    double sigma() const { return sigma_; }
    int dim() const { return dim_; }
    double r_max() const { return r_max_; }

  private:
    double sigma_;
    int dim_;
    double r_max_;
    double dr_;
    double tail_c_;
    std::vector<double> val_;
};

/// Shared per-(sigma, dim, r_max-bucket) table cache used by the solver.
std::shared_ptr<const RadialKernelTable> kernel_table(double sigma, int dim, double r_max);

} // namespace fracwave

#endif
