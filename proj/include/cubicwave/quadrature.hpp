#ifndef CUBICWAVE_QUADRATURE_HPP
#define CUBICWAVE_QUADRATURE_HPP

#include <vector>

namespace cubicwave::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
// Nodes by Newton iteration on P_n with the interlacing cosine start.
Rule gauss_legendre(int n);

// The same rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

}  // namespace cubicwave::quadrature

#endif
