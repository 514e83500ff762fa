#ifndef BO_QUADRATURE_HPP
#define BO_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bo {

/// Nodes/weights on [-1, 1] for the Jacobi weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1, computed by Golub-Welsch on the three-term recurrence.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

QuadRule gauss_jacobi(int n, double alpha, double beta);

QuadRule gauss_legendre(int n);  // alpha = beta = 0

/// Integral of f over (a, b) by tanh-sinh quadrature.  Endpoint algebraic
/// singularities are fine; f receives (dist_a, dist_b), the exact distances
/// to each endpoint, so integrands can be evaluated without cancellation.
double tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double tol = 1e-12);

}  // namespace bo

#endif
