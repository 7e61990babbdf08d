#ifndef CUBICWAVE_PDESIM_HPP
#define CUBICWAVE_PDESIM_HPP

#include <stdexcept>
#include <vector>

#include "cubicwave/resonant.hpp"

namespace cubicwave::pdesim {

// Sine-basis coefficients of f(t, psi) = sum_m a_m(t) sin((m+1) psi) and the
// velocities; the representation enforces f(t, 0) = f(t, pi) = 0.
struct SpectralState {
    double t = 0.0;
    std::vector<double> a;
    std::vector<double> v;
};

struct EnergyReport {
    double kinetic = 0.0;    // int |df/dt|^2             = (pi/2) sum v_m^2
    double gradient = 0.0;   // int |df/dpsi|^2           = (pi/2) sum omega_m^2 a_m^2
    double potential = 0.0;  // (1/2) int (f^2/sin psi)^2 = (1/2) int sin^2(psi) g^4
    double total() const { return kinetic + gradient + potential; }
};

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pseudospectral evaluator for  -d_t^2 f + d_psi^2 f = f^3 / sin^2(psi).
// The nonlinearity is regularized analytically: on the sine-basis span,
// g = f / sin(psi) is a polynomial in cos(psi) (Chebyshev U), so
// f^3/sin^2 = sin(psi) g^3 is smooth and its sine coefficients are computed
// by an exact discrete sine transform on a dealiased collocation grid.
class Simulator {
  public:
    // grid subintervals M = dealias_factor * n_modes; M - 1 interior nodes,
    // exact for sine polynomials of frequency <= M - 1 >= 3(n_modes) - 2.
    explicit Simulator(int n_modes, int dealias_factor = 4);

    int n_modes() const { return n_; }

    // Sine coefficients (first n_modes) of f^3/sin^2 psi for coefficients a.
    std::vector<double> nonlinearity(const std::vector<double>& a) const;

    // da = v, dv_m = -(m+1)^2 a_m - nonlinearity(a)_m.
    void rhs(const SpectralState& s, std::vector<double>& da, std::vector<double>& dv) const;

    // Classical RK4, fixed step; throws BlowupError when the coefficient norm
    // explodes. dt must resolve the top retained frequency (dt * N <~ 1).
    SpectralState simulate(const SpectralState& s0, double t_end, double dt) const;
    SpectralState step(const SpectralState& s, double dt) const;

    // Kinetic/gradient by Parseval, potential by Gauss-Chebyshev quadrature
    // exact for the degree of g^4 (quad_points = 0 picks that default).
    EnergyReport energy_report(const SpectralState& s, int quad_points = 0) const;

    // f(t, psi) from the coefficients.
    double eval(const SpectralState& s, double psi) const;

    // Ratio (int |f|^p sin^{2-p})^{1/p} / (||f'||_2 + ||f||_2), p in [1, 6];
    // 0 for the zero state. Bounded-ratio sanity monitor.
    double hardy_diagnostic(const SpectralState& s, int p) const;

    // Drop the cubic term (linearized evolution); test hook.
    void set_nonlinear(bool on) { nonlinear_ = on; }

  private:
    double collocation_g(const std::vector<double>& a, std::size_t r) const;
    int n_;        // retained modes
    int grid_m_;   // subintervals of [0, pi]
    bool nonlinear_ = true;
    std::vector<double> cos_psi_, sin_psi_;  // interior nodes r = 1..M-1
    std::vector<double> sine_table_;         // sin((m+1) psi_r), m-major
};

// H1 x L2 norm (kinetic + gradient parts) of the difference of two states.
double state_distance(const SpectralState& s1, const SpectralState& s2);

// Initial data from the order-truncated expansion:
//   a_m = sum_{lambda <= order} eps^lambda f_lambda^(m)(0), v = 0.
// order = -1 means every stored order.
SpectralState project_initial(const resonant::PerturbativeState& state, double eps, int n_modes,
                              int order = -1);

// Evolve the order-L initial data for one predicted period T = 2 pi / Omega(eps)
// (Omega truncated at the same order) and return the H1 x L2 distance between
// the final and initial states.
double periodicity_error(const resonant::PerturbativeState& state, double eps, int order,
                         int n_modes, double dt);

}  // namespace cubicwave::pdesim

#endif
