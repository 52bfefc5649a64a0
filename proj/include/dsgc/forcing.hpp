#pragma once

#include <Eigen/Dense>

#include "dsgc/quadrature.hpp"

namespace dsgc {

/// Cosine orthonormal basis of L^2[t_start, t_end]:
///   m_1(t) = 1/sqrt(dt),
///   m_k(t) = sqrt(2/dt) * cos((k-1) pi (t - t_start) / dt),  k >= 2.
/// Projecting Brownian motion onto the first K modes yields K iid
/// standard Gaussian coefficients.
struct SpectralBasis {
  double t_start;
  double t_end;
  int modes;  // K

  SpectralBasis(double t0, double t1, int k);
  double length() const { return t_end - t_start; }
  double evaluate(int k, double t) const;  // k in 1..modes
};

/// Closed-form integral of mode m_k over [a, b] within the interval.
double basis_integral(const SpectralBasis& basis, int k, double a, double b);

/// Precomputed mode integrals over a uniform sub-step grid: entry (i, k-1)
/// is the integral of m_k over [tau_i, tau_{i+1}]. A Brownian increment
/// over sub-step i is reconstructed as sum_k xi_k * table(i, k-1).
struct IncrementTable {
  SpectralBasis basis;
  int substeps;                 // M_sub
  Eigen::MatrixXd coefficients; // M_sub x K

  double dtau() const { return basis.length() / substeps; }
};

IncrementTable increment_table(const SpectralBasis& basis, int substeps);

/// Quadrature rule for the forcing vector: Smolyak Gauss-Hermite in
/// `dimension` variables at `level`, or the full tensor product of
/// level-point 1D rules when `product` is set.
QuadratureRule forcing_rule(int dimension, int level, bool product);

}  // namespace dsgc
