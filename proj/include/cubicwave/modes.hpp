#ifndef CUBICWAVE_MODES_HPP
#define CUBICWAVE_MODES_HPP

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace cubicwave::modes {

// Dirichlet eigenbasis on [0, pi]: e_m(psi) = sin((m+1) psi), eigenfrequency
// omega_m = m + 1.
inline int omega(int m) { return m + 1; }

// sin((m+1) psi); psi must lie in [0, pi].
double eigen_eval(int m, double psi);

// Chebyshev polynomial of the second kind U_n(y), stable three-term
// recurrence; satisfies sin((n+1) psi) = sin(psi) U_n(cos psi). y in [-1, 1].
double chebyshev_u_eval(int n, double y);

// Quartic interaction coefficient
//   C_ijk^(m) = (2/pi) int_0^pi e_i e_j e_k e_m / sin^2(psi) dpsi,
// a nonnegative integer, fully symmetric in (i, j, k, m).

// Closed double-sum count: sort within the pairs (i,j) and (k,m), then count
// solutions of 2(alpha - beta) = (m-k) - (j-i) with alpha <= i, beta <= k.
std::int64_t interaction_coeff(int i, int j, int k, int m);

// Equivalent stepped-range count over p in {j-i, j-i+2, ..., j+i} and
// q in {m-k, ..., m+k}: number of common values. Alternate closed path.
std::int64_t interaction_coeff_stepped(int i, int j, int k, int m);

// Quadrature oracle: substitute y = cos psi and integrate
// U_i U_j U_k U_m against sqrt(1-y^2) with a Gauss-Chebyshev-U rule exact
// for the product degree, so the result is exact up to rounding.
double interaction_coeff_quadrature(int i, int j, int k, int m);

// Memoizing table; safe for concurrent reads and insert-if-absent.
class InteractionTable {
  public:
    std::int64_t operator()(int i, int j, int k, int m) const;

  private:
    using Key = std::tuple<int, int, int, int>;
    mutable std::map<Key, std::int64_t> cache_;
    mutable std::shared_mutex mutex_;
};

}  // namespace cubicwave::modes

#endif
