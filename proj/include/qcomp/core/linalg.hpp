#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qcomp/core/types.hpp"

namespace qcomp {

/// Largest entry magnitude.
template <typename Derived>
typename Derived::RealScalar max_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

/// max |H - H^dagger|
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& h) {
  return max_norm(h - h.adjoint());
}

/// max |U^dagger U - I|
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return max_norm(u.adjoint() * u - Plain::Identity(u.rows(), u.cols()));
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& h, typename Derived::RealScalar tol) {
  return h.rows() == h.cols() && hermiticity_defect(h) <= tol;
}

/// Kronecker product; the first factor is the slowest index, so
/// |a, b> sits at row a * dim(B) + b.
template <typename DA, typename DB>
Operator<typename DA::RealScalar> kron(const Eigen::MatrixBase<DA>& a,
                                       const Eigen::MatrixBase<DB>& b) {
  using Real = typename DA::RealScalar;
  const Operator<Real> lhs = a;
  const Operator<Real> rhs = b;
  return Eigen::kroneckerProduct(lhs, rhs).eval();
}

/// exp(-i H dt) for Hermitian H, via the spectral decomposition.
template <typename Real>
Operator<Real> hermitian_exp(const Operator<Real>& h, Real dt) {
  Eigen::SelfAdjointEigenSolver<Operator<Real>> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  }
  const auto& vecs = es.eigenvectors();
  const auto& vals = es.eigenvalues();
  StateVector<Real> phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    phases(k) = std::polar(Real(1), -vals(k) * dt);
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

/// Reduced density matrix of the first factor of a d1 x d2 pure state.
template <typename Real>
Operator<Real> partial_trace_second(const StateVector<Real>& psi, Eigen::Index d1,
                                    Eigen::Index d2) {
  if (d1 <= 0 || d2 <= 0 || psi.size() != d1 * d2) {
    throw std::invalid_argument("partial_trace_second: state dimension " +
                                std::to_string(psi.size()) + " != " + std::to_string(d1) +
                                " x " + std::to_string(d2));
  }
  // Row-major index a*d2 + b maps onto a column-major d2 x d1 block.
  const auto amps = Eigen::Map<const Operator<Real>>(psi.data(), d2, d1);
  return (amps.transpose() * amps.conjugate()).eval();
}

/// Reduced density matrix of the second factor of a d1 x d2 pure state.
template <typename Real>
Operator<Real> partial_trace_first(const StateVector<Real>& psi, Eigen::Index d1,
                                   Eigen::Index d2) {
  if (d1 <= 0 || d2 <= 0 || psi.size() != d1 * d2) {
    throw std::invalid_argument("partial_trace_first: state dimension mismatch");
  }
  const auto amps = Eigen::Map<const Operator<Real>>(psi.data(), d2, d1);
  return (amps * amps.adjoint()).eval();
}

/// |<g|psi>|^2
template <typename Real>
Real ground_fidelity(const StateVector<Real>& psi, Eigen::Index ground = 0) {
  return std::norm(psi(ground));
}

/// <g|rho|g>
template <typename Real>
Real ground_fidelity(const Operator<Real>& rho, Eigen::Index ground = 0) {
  return std::real(rho(ground, ground));
}

}  // namespace qcomp
