#include "tfe/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "tfe/eig.hpp"
#include "tfe/quadrature.hpp"

namespace tfe {

namespace {

// x = r^2 polynomial helpers for the closed-form eigenfunctions
using XPoly = std::vector<double>;  // coefficient of x^j at index j

// radial Laplacian on even polynomials: r^(2j) -> 2j(2j+N-2) r^(2j-2)
XPoly xlap(const XPoly& p, int N) {
  XPoly out(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (size_t j = 1; j < p.size(); ++j)
    out[j - 1] += p[j] * radial_lap_factor(int(2 * j), N);
  return out;
}

XPoly xmul_one_minus(const XPoly& p) {  // (1 - x) p
  XPoly out(p.size() + 1, 0.0);
  for (size_t j = 0; j < p.size(); ++j) {
    out[j] += p[j];
    out[j + 1] -= p[j];
  }
  return out;
}

// The eigenproblem -c0 [lap((1-x) lap psi) + 2N lap psi] = rho lambda psi
// with psi = (1-x) q(x) (vanishing at r=1) becomes, after multiplying by
// 1/rho = (1-x), an endomorphism q -> img on the q-coefficients: the
// operator image of (1-x) q is (1-x) img.  Matrix on q-space, degree <= dq.
Eigen::MatrixXd operator_matrix_q(int N, int dq) {
  const double c0 = ProblemParams{1.0, N, 2, 6.0}.c0();
  const int d = dq + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    XPoly q(d, 0.0);
    q[j] = 1.0;
    XPoly psi = xmul_one_minus(q);
    XPoly lap1 = xlap(psi, N);
    XPoly t1 = xlap(xmul_one_minus(lap1), N);
    XPoly img(d, 0.0);
    for (size_t r = 0; r < t1.size() && r < img.size(); ++r)
      img[r] += -c0 * t1[r];
    for (size_t r = 0; r < lap1.size() && r < img.size(); ++r)
      img[r] += -c0 * 2.0 * N * lap1[r];
    for (int r = 0; r < d; ++r) M(r, j) = img[r];
  }
  return M;
}

std::vector<double> x_to_r(const XPoly& p) {
  std::vector<double> out(2 * (p.size() - 1) + 1, 0.0);
  for (size_t j = 0; j < p.size(); ++j) out[2 * j] = p[j];
  return out;
}

// profile rescaled to interface radius 1 via the scaling family
struct UnitProfile {
  const Profile& p;
  double a, s;
  UnitProfile(const Profile& pr)
      : p(pr), a(pr.interface_a), s(std::pow(pr.interface_a, -4.0 / pr.params.n)) {}
  double value(double r) const { return s * interp(r * a, 0); }
  double deriv(double r) const { return s * a * interp(r * a, 1); }
  // C^2 quintic Hermite from the stored value/derivative columns; linear
  // interpolation leaves slope kinks that third differences amplify to O(1)
  double interp(double y, int order) const {
    const auto& g = p.grid;
    if (y <= g.front()) y = g.front();
    if (y >= g.back()) return 0.0;
    size_t lo = 0, hi = g.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (g[mid] <= y ? lo : hi) = mid;
    }
    const double L = g[hi] - g[lo], t = (y - g[lo]) / L;
    const double f0 = p.values[lo], f1 = p.values[hi];
    const double d0 = p.d1[lo] * L, d1 = p.d1[hi] * L;
    const double s0 = p.d2[lo] * L * L, s1 = p.d2[hi] * L * L;
    const double A = f1 - (f0 + d0 + 0.5 * s0);
    const double B = d1 - (d0 + s0);
    const double C = s1 - s0;
    const double c3 = 10 * A - 4 * B + 0.5 * C;
    const double c4 = -15 * A + 7 * B - C;
    const double c5 = 6 * A - 3 * B + 0.5 * C;
    if (order == 0)
      return f0 + t * (d0 + t * (0.5 * s0 + t * (c3 + t * (c4 + t * c5))));
    return (d0 + t * (s0 + t * (3 * c3 + t * (4 * c4 + t * 5 * c5)))) / L;
  }
};

}  // namespace

double eigenvalue_closed_form(int m, int N, int k) {
  if (k % 2 != 0) throw std::invalid_argument("spectrum indexed by even k");
  if (k < std::max(0, 2 * (m - 3)))
    throw std::invalid_argument("k below the validity range");
  const double c0 = ProblemParams{1.0, N, m, 6.0}.c0();
  double prod = 1.0;
  for (int i = 0; i < m; ++i)
    prod *= double(k + 2 - 2 * i) * double(k + N + 2 - 2 * i);
  // m=2 convention: positive spectrum c0 k(k+2)(k+N)(k+N+2); the general-
  // order product formula carries a leading minus as recorded
  return m == 2 ? c0 * prod : -c0 * prod;
}

double sector_constant(int k, int N) { return double(k) * (k + N - 2); }

double eval_poly(const std::vector<double>& coeffs, double r) {
  double v = 0;
  for (size_t j = coeffs.size(); j-- > 0;) v = v * r + coeffs[j];
  return v;
}

double poly_inner_rho(const std::vector<double>& f,
                      const std::vector<double>& g, int N) {
  // both polynomials vanish at r=1 (and are even), so the product carries a
  // factor (1 - r^2); divide it out exactly and integrate the quotient
  // monomial by monomial
  std::vector<double> p(f.size() + g.size() - 1, 0.0);
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) p[i + j] += f[i] * g[j];
  // synthetic division by (1 - r^2): p = (1 - r^2) q + c1 r + c0
  std::vector<double> q(p.size() > 2 ? p.size() - 2 : 1, 0.0);
  for (int k = int(p.size()) - 1; k >= 2; --k) {
    q[k - 2] = -p[k];
    p[k - 2] += p[k];
    p[k] = 0.0;
  }
  double scale = 1.0;
  for (double c : q) scale = std::max(scale, std::abs(c));
  if (std::abs(p[0]) + (p.size() > 1 ? std::abs(p[1]) : 0.0) > 1e-9 * scale)
    throw std::invalid_argument("poly_inner_rho: arguments must vanish at 1");
  double total = 0.0;
  for (size_t j = 0; j < q.size(); ++j) total += q[j] / double(j + N);
  return N * unit_ball_volume(N) * total;
}

Spectrum polynomial_eigenfunctions(int N, int K) {
  if (K % 2 != 0 || K < 0) throw std::invalid_argument("K must be even >= 0");
  Spectrum sp;
  sp.params = ProblemParams{1.0, N, 2, 6.0};
  sp.omega_N = unit_ball_volume(N);
  sp.b0 = -std::sqrt((N + 2) / (2.0 * sp.omega_N));
  const int dq = K / 2;
  Eigen::MatrixXd M = operator_matrix_q(N, dq);
  for (int k = 0; k <= K; k += 2) {
    // the assembled operator's spectrum is -lambda_k (the discretization
    // arbitrates the sign); the reported eigenvalues keep the positive
    // closed-form convention
    const double lam = eigenvalue_closed_form(2, N, k);
    Eigen::MatrixXd A = M + lam * Eigen::MatrixXd::Identity(dq + 1, dq + 1);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-9);
    Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() != 1)
      throw std::runtime_error("eigenfunction kernel not one-dimensional");
    XPoly qc(dq + 1);
    for (int j = 0; j <= dq; ++j) qc[j] = ker(j, 0);
    qc.resize(k / 2 + 1);  // expected degree of q is k/2
    XPoly xc = xmul_one_minus(qc);
    std::vector<double> rc = x_to_r(xc);
    const double nrm = std::sqrt(poly_inner_rho(rc, rc, N));
    double sign = eval_poly(rc, 0.0) >= 0 ? 1.0 : -1.0;
    for (auto& c : rc) c *= sign / nrm;
    sp.indices.push_back(k);
    sp.eigenvalues.push_back(lam);
    sp.eigenfunctions.push_back(std::move(rc));
  }
  return sp;
}

Eigen::MatrixXd discretize_operator_n1(int N, int grid_size) {
  const int M = grid_size;
  const double h = 1.0 / M;
  const double c0 = ProblemParams{1.0, N, 2, 6.0}.c0();
  auto cell = [&](int i) { return (i + 0.5) * h; };
  auto facew = [&](int j) {  // r^(N-1) at face j (0^0 = 1 for N=1)
    const double f = j * h;
    return N == 1 ? 1.0 : std::pow(f, N - 1);
  };

  // divergence-form Laplacian on cell values, even at 0, psi(1) = 0
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    const double inv = 1.0 / (std::pow(cell(i), N - 1) * h * h);
    if (i > 0) {
      L(i, i - 1) += inv * facew(i);
      L(i, i) -= inv * facew(i);
    }
    if (i < M - 1) {
      L(i, i + 1) += inv * facew(i + 1);
      L(i, i) -= inv * facew(i + 1);
    } else {
      // quadratic ghost for psi(1) = 0: ghost = psi_{M-2}/3 - 2 psi_{M-1}
      L(i, i) -= inv * facew(M) * 3.0;
      L(i, i - 1) += inv * facew(M) / 3.0;
    }
  }
  // gradient to faces 1..M
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(M, M);
  for (int j = 1; j <= M; ++j) {
    if (j < M) {
      G(j - 1, j) = 1.0 / h;
      G(j - 1, j - 1) = -1.0 / h;
    } else {
      G(j - 1, j - 1) = -3.0 / h;
      G(j - 1, j - 2) = 1.0 / (3.0 * h);
    }
  }
  Eigen::VectorXd wa(M), wg(M), mrho(M);
  for (int i = 0; i < M; ++i) {
    const double r = cell(i);
    wa[i] = (1.0 - r * r) * std::pow(r, N - 1) * h;
    mrho[i] = std::pow(r, N - 1) * h / (1.0 - r * r);
  }
  // trapezoid weights over faces (the r=0 face carries zero gradient)
  for (int j = 1; j <= M; ++j) wg[j - 1] = facew(j) * (j == M ? 0.5 : 1.0) * h;

  Eigen::MatrixXd A = -c0 * L.transpose() * wa.asDiagonal() * L +
                      2.0 * N * c0 * G.transpose() * wg.asDiagonal() * G;
  Eigen::VectorXd mi = mrho.cwiseSqrt().cwiseInverse();
  return mi.asDiagonal() * A * mi.asDiagonal();
}

std::vector<double> discrete_eigenvalues_n1(int N, int grid_size, int count) {
  Eigen::MatrixXd B = discretize_operator_n1(N, grid_size);
  // enforce exact symmetry against rounding in the triple products
  B = 0.5 * (B + B.transpose()).eval();
  auto pairs = eig_banded_symmetric(B);
  // the assembled operator is negative semi-definite with spectrum -lambda_k;
  // report the physically relevant end (closest to zero first)
  std::vector<double> out;
  for (int i = 0; i < count && i < int(pairs.size()); ++i)
    out.push_back(pairs[pairs.size() - 1 - i].value);
  if (count >= 2) {
    const double ref = -eigenvalue_closed_form(2, N, 2);
    if (std::abs(out[1] - ref) > 0.05 * std::abs(ref))
      throw std::runtime_error("grid too coarse for the leading eigenvalue");
  }
  return out;
}

Eigen::MatrixXd discretize_operator_general(const Profile& profile,
                                            int grid_size) {
  const int M = grid_size;
  const double h = 1.0 / M;
  const double n = profile.params.n;
  const double beta = profile.params.beta();
  const int N = profile.params.N;
  UnitProfile up(profile);
  auto cell = [&](int i) { return (i + 0.5) * h; };
  auto facer = [&](int j) { return j * h; };
  auto facew = [&](int j) {
    return N == 1 ? 1.0 : std::pow(facer(j), N - 1);
  };

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    const double inv = 1.0 / (std::pow(cell(i), N - 1) * h * h);
    if (i > 0) {
      L(i, i - 1) += inv * facew(i);
      L(i, i) -= inv * facew(i);
    }
    if (i < M - 1) {
      L(i, i + 1) += inv * facew(i + 1);
      L(i, i) -= inv * facew(i + 1);
    } else {
      // cubic Dirichlet ghost: the degenerate flux weight divides out two
      // powers of h, so the boundary stencil must be third order
      L(i, i) -= inv * facew(M) * 4.0;
      L(i, i - 1) += inv * facew(M);
      L(i, i - 2) -= inv * facew(M) * 0.2;
    }
  }
  // face derivative of cell data (zero flux at r=0, one-sided at r=1)
  Eigen::MatrixXd Gf = Eigen::MatrixXd::Zero(M + 1, M);
  for (int j = 1; j < M; ++j) {
    Gf(j, j) = 1.0 / h;
    Gf(j, j - 1) = -1.0 / h;
  }
  Gf(M, M - 1) = -2.0 / h;
  // face average of cell data (value 0 at r=1)
  Eigen::MatrixXd Av = Eigen::MatrixXd::Zero(M + 1, M);
  Av(0, 0) = 1.0;
  for (int j = 1; j < M; ++j) Av(j, j) = Av(j, j - 1) = 0.5;
  // divergence of face data back to cells
  Eigen::MatrixXd Dv = Eigen::MatrixXd::Zero(M, M + 1);
  for (int i = 0; i < M; ++i) {
    const double inv = 1.0 / (std::pow(cell(i), N - 1) * h);
    Dv(i, i + 1) = inv;
    Dv(i, i) = -inv;
  }
  Eigen::VectorXd wflux(M + 1), wadv(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double r = facer(j);
    wflux[j] = facew(j) * std::pow(std::max(up.value(r), 0.0), n);
    wadv[j] = facew(j) * r;
  }
  return -Dv * wflux.asDiagonal() * (Gf * L) +
         (1.0 - n) * beta * Dv * wadv.asDiagonal() * Av;
}

std::vector<double> zero_eigenfunction_general_n(const Profile& profile) {
  const double n = profile.params.n;
  if (!(n > 0)) throw std::invalid_argument("scaling mode needs n > 0");
  std::vector<double> psi(profile.grid.size());
  double peak = 0;
  for (size_t i = 0; i < psi.size(); ++i) {
    psi[i] = (4.0 / n) * profile.values[i] - profile.d1[i] * profile.grid[i];
    peak = std::max(peak, std::abs(psi[i]));
  }
  for (size_t i = 0; i < psi.size(); ++i)
    if (profile.grid[i] < 0.95 * profile.interface_a && psi[i] < -1e-8 * peak)
      throw std::runtime_error("zero-mode lost interior positivity");
  return psi;
}

double zero_mode_residual(const Profile& profile, int grid_size) {
  const int M = grid_size;
  const double h = 1.0 / M;
  const double n = profile.params.n;
  UnitProfile up(profile);
  Eigen::MatrixXd A = discretize_operator_general(profile, grid_size);
  Eigen::VectorXd psi(M), ref(M);
  for (int i = 0; i < M; ++i) {
    const double r = (i + 0.5) * h;
    psi[i] = (4.0 / n) * up.value(r) - up.deriv(r) * r;
    ref[i] = up.value(r);  // comparison function well off the kernel
  }
  const double num = (A * psi).norm() / psi.norm();
  const double den = (A * ref).norm() / ref.norm();
  return num / den;
}

}  // namespace tfe
