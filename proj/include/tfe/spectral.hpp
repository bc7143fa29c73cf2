#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tfe/params.hpp"
#include "tfe/profiles.hpp"
#include "tfe/series.hpp"

namespace tfe {

// Spectrum of the linearized operator around the similarity profile
// (self-adjoint case n=1): eigenvalues indexed by even k, polynomial
// eigenfunctions of degree k+2 vanishing at r=1, orthonormal in L2 with
// weight rho(r) = 1/(1-r^2).
struct Spectrum {
  ProblemParams params;
  std::vector<int> indices;                       // k = 0, 2, 4, ...
  std::vector<double> eigenvalues;                // lambda_k
  std::vector<std::vector<double>> eigenfunctions;  // coeffs of r^j, ascending
  double b0 = 0;       // psi_0 = b0 (r^2 - 1), b0 = -sqrt((N+2)/(2 omega_N))
  double omega_N = 0;  // volume of the unit ball
};

// lambda_k for n=1.  m=2: c0 k(k+2)(k+N)(k+N+2).  m >= 3: the printed
// general-order product formula (leading minus sign kept as printed; the
// discretized operator arbitrates the sign empirically).  k must be even
// and >= max(0, 2(m-3)).
double eigenvalue_closed_form(int m, int N, int k);

// Non-radial sector constant nu_k = k(k+N-2) of the spherical Laplacian.
double sector_constant(int k, int N);

// Polynomial eigenfunctions psi_k for k = 0..K (even), n=1, m=2.
Spectrum polynomial_eigenfunctions(int N, int K);

// Evaluate a polynomial coefficient array (powers of r, ascending) at r.
double eval_poly(const std::vector<double>& coeffs, double r);

// L2_rho inner product over the unit ball of two polynomials.
double poly_inner_rho(const std::vector<double>& f,
                      const std::vector<double>& g, int N);

// Finite-volume discretization on cell centers r_i = (i+1/2)/M of the
// n=1 radial operator -c0 [Lap(a Lap psi) + 2N Lap psi] = rho lambda psi,
// assembled from quadratic forms so the matrix is exactly symmetric.
// Returns the standard-form symmetric matrix B = M^-1/2 A M^-1/2 whose
// eigenvalues approximate lambda_k.
Eigen::MatrixXd discretize_operator_n1(int N, int grid_size);

// First `count` discrete eigenvalues (ascending) of the n=1 operator.
// Throws if the leading nonzero eigenvalue misses the closed form by more
// than 5% (grid too coarse).
std::vector<double> discrete_eigenvalues_n1(int N, int grid_size, int count);

// General-n radial operator of the linearized problem,
//   A'(F) Y = -(r^(1-N)) (r^(N-1) F^n (Lap Y)')' + (1-n) beta (r^(1-N)) (r^(N-1) r Y)',
// discretized on cell centers against the profile rescaled to interface 1.
// Non-symmetric for n != 1.  Returns the dense matrix acting on cell values.
Eigen::MatrixXd discretize_operator_general(const Profile& profile,
                                            int grid_size);

// Zero-mode of the scaling group: psi_0 = (4/n) F - F' zeta on the profile
// grid.  Throws if interior negativity is detected.
std::vector<double> zero_eigenfunction_general_n(const Profile& profile);

// Relative residual || L psi_0 || / || L || ||psi_0|| of the discretized
// general-n operator applied to the sampled zero-mode.
double zero_mode_residual(const Profile& profile, int grid_size);

}  // namespace tfe
