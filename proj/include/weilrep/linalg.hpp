#pragma once

// Rank, column spaces, restriction to invariant subspaces and commutant dimensions,
// templated on the scalar backend. Complex subspace bases are orthonormal; F_P bases
// are sets of independent columns.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "weilrep/scalar.hpp"

namespace weilrep {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Eigen::Index;

struct Echelon {
  Index rank = 0;
  std::vector<Index> pivot_rows;  // in order of discovery
  std::vector<Index> pivot_cols;  // original column indices
};

/// Column echelon form over F_P; returns rank, pivot rows and independent columns.
Echelon modp_echelon(Mat<ModP> m);

/// Solves a X = b for square invertible a over F_P. Throws if singular.
Mat<ModP> modp_solve(Mat<ModP> a, Mat<ModP> b);

template <class S>
Index rank(const Mat<S>& m, double tol) {
  if (m.size() == 0) return 0;
  if constexpr (ScalarTraits<S>::exact) {
    (void)tol;
    return modp_echelon(m).rank;
  } else {
    Eigen::ColPivHouseholderQR<Mat<S>> qr(m);
    qr.setThreshold(tol);
    return qr.rank();
  }
}

/// Basis of the column space.
template <class S>
Mat<S> column_basis(const Mat<S>& m, double tol) {
  if (m.cols() == 0) return Mat<S>(m.rows(), 0);
  if constexpr (ScalarTraits<S>::exact) {
    (void)tol;
    const Echelon e = modp_echelon(m);
    Mat<S> b(m.rows(), e.rank);
    for (Index k = 0; k < e.rank; ++k) b.col(k) = m.col(e.pivot_cols[k]);
    return b;
  } else {
    Eigen::ColPivHouseholderQR<Mat<S>> qr(m);
    qr.setThreshold(tol);
    const Index r = qr.rank();
    Mat<S> q = qr.householderQ() * Mat<S>::Identity(m.rows(), r);
    return q;
  }
}

/// Matrix of T on the invariant subspace spanned by basis (T B = B M). The residual of
/// the invariance equation is written to *residual (0 or 1 for the exact backend).
template <class S>
Mat<S> restrict_to(const Mat<S>& tb, const Mat<S>& basis, double* residual) {
  if constexpr (ScalarTraits<S>::exact) {
    const Echelon e = modp_echelon(basis.transpose());
    const Index r = basis.cols();
    if (e.rank != r) throw std::invalid_argument("restrict_to: basis is not independent");
    Mat<S> br(r, r), tr(r, tb.cols());
    for (Index k = 0; k < r; ++k) {
      br.row(k) = basis.row(e.pivot_cols[k]);
      tr.row(k) = tb.row(e.pivot_cols[k]);
    }
    Mat<S> m = modp_solve(br, tr);
    if (residual) *residual = (basis * m == tb) ? 0.0 : 1.0;
    return m;
  } else {
    Mat<S> m = basis.adjoint() * tb;
    if (residual) *residual = (tb - basis * m).cwiseAbs().maxCoeff();
    return m;
  }
}

/// Kronecker product a (x) b.
template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// Number of eigenvalues of a positive semidefinite hermitian matrix below
/// tol * max(1, largest eigenvalue).
Index psd_nullity(const Mat<Complex>& g, double tol);

/// dim { X : X a_k = b_k X for all k }, X of shape (b.rows x a.rows).
template <class S>
Index hom_dimension(const std::vector<Mat<S>>& a, const std::vector<Mat<S>>& b, double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("hom_dimension: list size mismatch");
  if (a.empty()) return 0;
  const Index ka = a.front().rows(), kb = b.front().rows();
  const Index unknowns = ka * kb;
  if (unknowns == 0) return 0;
  const Mat<S> ia = Mat<S>::Identity(ka, ka), ib = Mat<S>::Identity(kb, kb);
  if constexpr (ScalarTraits<S>::exact) {
    (void)tol;
    Mat<S> stacked(unknowns * static_cast<Index>(a.size()), unknowns);
    for (std::size_t t = 0; t < a.size(); ++t)
      stacked.block(static_cast<Index>(t) * unknowns, 0, unknowns, unknowns) =
          kron<S>(a[t].transpose(), ib) - kron<S>(ia, b[t]);
    return unknowns - rank<S>(stacked, tol);
  } else {
    // Gram matrix of the stacked system, assembled from Kronecker identities.
    Mat<S> g = Mat<S>::Zero(unknowns, unknowns);
    for (std::size_t t = 0; t < a.size(); ++t) {
      const Mat<S>& A = a[t];
      const Mat<S>& B = b[t];
      Mat<S> aa = A.conjugate() * A.transpose();
      Mat<S> bb = B.adjoint() * B;
      g += kron<S>(aa, ib) + kron<S>(ia, bb) - kron<S>(A.conjugate(), B) -
           kron<S>(Mat<S>(A.transpose()), Mat<S>(B.adjoint()));
    }
    return psd_nullity(g, tol);
  }
}

template <class S>
Index commutant_dimension_dense(const std::vector<Mat<S>>& ops, double tol) {
  return hom_dimension<S>(ops, ops, tol);
}

}  // namespace weilrep
