#include "weilrep/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace weilrep {

ModP ModP::inverse() const {
  if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
  return pow(*this, P - 2);
}

ModP ModP::root_of_unity(Int k, Int order) {
  if (!supports_order(order))
    throw ParamError("exact backend: no root of unity of order " + std::to_string(order) +
                     " in F_P");
  const ModP w = pow(ModP(static_cast<long long>(kGenerator)), (P - 1) / order);
  return pow(w, static_cast<std::uint64_t>(mod(k, order)));
}

std::string to_string(Backend b) { return b == Backend::Float ? "float" : "exact"; }

Backend parse_backend(const std::string& s) {
  if (s == "float") return Backend::Float;
  if (s == "exact") return Backend::Exact;
  throw ParamError("unknown backend '" + s + "' (expected float or exact)");
}

Echelon modp_echelon(Mat<ModP> m) {
  Echelon e;
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> colperm(cols);
  for (Index j = 0; j < cols; ++j) colperm[j] = j;
  Index r = 0;
  for (Index row = 0; row < rows && r < cols; ++row) {
    Index piv = -1;
    for (Index j = r; j < cols; ++j)
      if (m(row, j) != ModP(0)) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      m.col(r).swap(m.col(piv));
      std::swap(colperm[r], colperm[piv]);
    }
    const ModP inv = m(row, r).inverse();
    for (Index i = row; i < rows; ++i) m(i, r) *= inv;
    const Index len = rows - row;
    for (Index j = r + 1; j < cols; ++j) {
      const ModP f = m(row, j);
      if (f == ModP(0)) continue;
      ModP* cj = m.col(j).data() + row;
      const ModP* cr = m.col(r).data() + row;
      for (Index i = 0; i < len; ++i) cj[i] -= f * cr[i];
    }
    e.pivot_rows.push_back(row);
    e.pivot_cols.push_back(colperm[r]);
    ++r;
  }
  e.rank = r;
  return e;
}

Mat<ModP> modp_solve(Mat<ModP> a, Mat<ModP> b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("modp_solve: shape");
  for (Index c = 0; c < n; ++c) {
    Index piv = -1;
    for (Index i = c; i < n; ++i)
      if (a(i, c) != ModP(0)) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("modp_solve: singular matrix");
    if (piv != c) {
      a.row(c).swap(a.row(piv));
      b.row(c).swap(b.row(piv));
    }
    const ModP inv = a(c, c).inverse();
    a.row(c) *= inv;
    b.row(c) *= inv;
    for (Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == ModP(0)) continue;
      const ModP f = a(i, c);
      a.row(i) -= f * a.row(c);
      b.row(i) -= f * b.row(c);
    }
  }
  return b;
}

Index psd_nullity(const Mat<Complex>& g, double tol) {
  if (g.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Mat<Complex>> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.maxCoeff());
  Index k = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) < tol * scale) ++k;
  return k;
}

}  // namespace weilrep
