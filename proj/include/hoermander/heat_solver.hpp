#pragma once

// Spectral Petrov-Galerkin solver for d_t u - u_xx = f on (0,1) x (0,tau)
// with u(0,t) = g0, u(1,t) = g1, u(x,0) = h. Grid data are first fitted by
// Legendre polynomials; the lift (1 - x) g0 + x g1 removes the boundary data
// and the remainder is expanded in phi_i = L_i - L_{i+2} (x) times L_j (t).

#include <Eigen/Core>

#include "hoermander/grid.hpp"
#include "hoermander/parabolic.hpp"

namespace hoermander {

struct HeatSolverOptions {
  int x_modes = 10;    // phi_0 .. phi_{x_modes - 1}
  int t_modes = 8;     // L_0 .. L_{t_modes - 1}
  int fit_degree = 8;  // Legendre degree of the data fits
};

/// Solution samples on Omega-bar. Requires the interval geometry, the heat
/// operator and Dirichlet conditions.
Eigen::VectorXcd solve_heat(const DiscreteOperator& op, const ProblemData& data,
                            const HeatSolverOptions& options = {});

}  // namespace hoermander
