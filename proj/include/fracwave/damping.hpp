#ifndef FRACWAVE_DAMPING_HPP
#define FRACWAVE_DAMPING_HPP

#include <memory>
#include <mutex>
#include <vector>

namespace fracwave {

/// Time-dependent damping coefficient b(t) = b1 (1+t)^{-beta}. This is the
/// canonical representative of the envelope b1(1+t)^{-beta} <= b(t) <=
/// b2(1+t)^{-beta} with b1 = b2 and |b'| <= |beta| (1+t)^{-1} b.
struct DampingProfile {
    double beta; // in [-1, 1]
    double b1;   // > 0

    DampingProfile(double beta_, double b1_);
};

double b_at(const DampingProfile& p, double t);
double db_dt(const DampingProfile& p, double t);

/// int_0^t b(s) ds  (the exponent of the integrating factor used by g and B0)
double damping_integral(const DampingProfile& p, double t);
/// Stable evaluation of damping_integral(t + s) - damping_integral(t).
double damping_integral_between(const DampingProfile& p, double t, double s);

/// B(t) = int_0^t ds / b(s), the comparison clock of the lifespan bound, and
/// its exact inverse. tau < 0 or tau outside the range of B is rejected.
double comparison_B(const DampingProfile& p, double t);
double comparison_B_inverse(const DampingProfile& p, double tau);

/// B0 = int_0^inf exp(-int_0^t b) dt; diverges for beta = 1 with b1 <= 1,
/// which is rejected with a diagnostic.
double compute_B0(const DampingProfile& p, double abs_tol = 1e-12);

/// g solves -g' + b g = 1 with g(0) = B0; evaluated through the
/// cancellation-free tail form g(t) = int_0^inf exp(-(D(t+s)-D(t))) ds of the
/// explicit solution, which is its exact log-space rearrangement.
double g_value(const DampingProfile& p, double t);

/// Cached cumulative integrals G(t) = int_0^t g and Gamma(t) = int_0^t 1/g on
/// an auto-extending mesh. Thread-safe; reads may trigger mesh extension.
class AuxiliaryFunctions {
  public:
    explicit AuxiliaryFunctions(const DampingProfile& p);

    const DampingProfile& profile() const { return profile_; }
    double B0() const { return B0_; }

    double g_at(double t) const { return g_value(profile_, t); }
    double G_at(double t) const;
    double Gamma_at(double t) const;

    /// Residual -g' + b g - 1 with a five-point finite-difference g'.
    double ode_residual(double t) const;

  private:
    void extend_to(double t) const;

    DampingProfile profile_;
    double B0_;
    mutable std::mutex mu_;
    mutable std::vector<double> mesh_t_, cum_G_, cum_Gamma_;
};

} // namespace fracwave

#endif
