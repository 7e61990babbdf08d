#ifndef CUBICWAVE_DUFFING_HPP
#define CUBICWAVE_DUFFING_HPP

#include <vector>

namespace cubicwave::duffing {

// One-mode reduction G'' + G + G^3 = 0 as the dynamical system
//   X' = Y, Y' = -X (1 + X^2),
// with conserved energy  E(X, Y) = Y^2 + X^2 + X^4/2.

struct PhasePoint {
    double x = 0.0;
    double y = 0.0;
};

inline double energy(PhasePoint p) { return p.y * p.y + p.x * p.x + 0.5 * p.x * p.x * p.x * p.x; }

inline PhasePoint vector_field(PhasePoint p) { return {p.y, -p.x * (1.0 + p.x * p.x)}; }

// Sampled trajectory from (X0, 0): samples.front() = {t = 0, (X0, 0)}.
struct Orbit {
    double x0 = 0.0;
    std::vector<double> t;
    std::vector<PhasePoint> p;
};

// Classical RK4 with a fixed step chosen from the tolerance so the relative
// energy drift over [0, t_end] stays within it (validated by tests).
Orbit integrate(double x0, double t_end, double tol = 1e-12);

// Exact period of the orbit through (X0, 0):
//   T = 4 int_0^{Xmax} dX / sqrt(a^2 - X^2 - X^4/2),  a^2 = X0^2 + X0^4/2,
// with Xmax = |X0| the turning point. The substitution X = Xmax sin(phi)
// removes the endpoint square-root singularity, leaving
//   T = 4 int_0^{pi/2} dphi / sqrt(1 + (Xmax^2/2)(1 + sin^2 phi)),
// an analytic integrand evaluated by Gauss-Legendre. X0 != 0.
double period(double x0, int quad_points = 64);

// The closed level-set parametrization of {E = a^2}:
//   gamma_a(t) = ( a sqrt(2) cos t / sqrt(1 + sqrt(1 + 2 a^2 cos^2 t)), a sin t ).
// Geometric only; not the time flow. a != 0.
PhasePoint level_set_point(double a, double t);

// d/dt gamma_a(t), never zero (the level set is a 1-manifold).
PhasePoint level_set_tangent(double a, double t);

struct Closure {
    bool found = false;
    double return_time = 0.0;
    double gap = 0.0;  // |X(return) - X0|
};

// First return of the flow from (X0, 0) to the section {Y = 0, X*X0 > 0}:
// sign-change bracketing along the RK4 orbit plus bisection refinement of the
// crossing inside the bracketing step. Fails (found = false) when no return
// shows up within 10 estimated periods.
Closure orbit_closure(double x0, double tol = 1e-12);

}  // namespace cubicwave::duffing

#endif
