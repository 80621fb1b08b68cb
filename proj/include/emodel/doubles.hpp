#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "emodel/algebra.hpp"

namespace emodel {

// ---------------------------------------------------------------------------
// Cotangent-bundle double T*K: points (k, kappa) with k in SU(N) and kappa
// in su(N), multiplication (k1 k2, kappa1 + Ad_{k1} kappa2).
// ---------------------------------------------------------------------------

struct TStarPoint {
  Mat k;
  Mat kappa;

  static TStarPoint Identity(int n) {
    return {Mat::Identity(n, n), Mat::Zero(n, n)};
  }
};

inline TStarPoint tstar_multiply(const TStarPoint& a, const TStarPoint& b) {
  return {a.k * b.k, a.kappa + a.k * b.kappa * a.k.adjoint()};
}

inline TStarPoint tstar_inverse(const TStarPoint& a) {
  const Mat kinv = a.k.adjoint();
  return {kinv, -(kinv * a.kappa * a.k)};
}

/// Adjoint action of a point (k, kappa) on a double algebra element (mu, nu).
inline TStarElem tstar_adjoint(const TStarPoint& p, const TStarElem& x) {
  const Mat admu = p.k * x.mu * p.k.adjoint();
  const Mat adnu = p.k * x.nu * p.k.adjoint();
  return {admu, adnu + bracket(p.kappa, admu)};
}

/// The involution picking the undeformed (principal chiral) dynamics:
/// E(mu, nu) = (-nu, -mu).
inline TStarElem e_tstar(const TStarElem& x) { return {-x.nu, -x.mu}; }

// ---------------------------------------------------------------------------
// SL(N,C) viewed as a real Drinfeld double of SU(N) and AN (upper triangular
// with positive diagonal).
// ---------------------------------------------------------------------------

struct IwasawaFactors {
  Mat g;   ///< special unitary factor
  Mat an;  ///< upper triangular with positive diagonal
};

/// Global decomposition l = g * (an) of an SL(N,C) matrix.
inline IwasawaFactors iwasawa_decompose(const Mat& l) {
  const int n = static_cast<int>(l.rows());
  Eigen::HouseholderQR<Mat> qr(l);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rotate column phases so the triangular factor has positive diagonal; the
  // unit determinant of l then forces det(g) = det(an) = 1.
  for (int i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    const double a = std::abs(d);
    if (a < 1e-14) throw std::invalid_argument("iwasawa_decompose: singular input");
    const cplx phase = d / a;
    q.col(i) *= phase;
    r.row(i) *= cplx(1.0, 0.0) / phase;
  }
  return {q, r};
}

/// Splits X in sl(N,C) as X = A + B with A anti-Hermitian traceless and B
/// upper triangular with real diagonal. Both pieces are unique.
inline std::pair<Mat, Mat> su_an_split(const Mat& x) {
  const Mat h = x + Mat(x.adjoint());
  Mat b = Mat::Zero(x.rows(), x.cols());
  b.triangularView<Eigen::StrictlyUpper>() = h.triangularView<Eigen::StrictlyUpper>();
  b.diagonal() = 0.5 * h.diagonal();
  return {x - b, b};
}

/// E-operator of the two-parameter deformed model on sl(N,C) (as a real
/// space), with R the standard Yang-Baxter operator.
inline Mat e_biyb(const Mat& x, double eta, double mu) {
  const Mat xd = x.adjoint();
  const Mat r2x = yang_baxter_R(yang_baxter_R(x));
  const Mat r2xd = yang_baxter_R(yang_baxter_R(xd));
  const cplx ihalf(0.0, 0.5);
  return (ihalf / eta) * ((eta * eta - 1.0) * x + mu * mu * r2x) -
         (ihalf / eta) * ((eta * eta + 1.0) * xd - mu * mu * r2xd) -
         mu * yang_baxter_R(xd);
}

// ---------------------------------------------------------------------------
// Real bases of the doubles, for turning linear operators into matrices.
// ---------------------------------------------------------------------------

/// Basis of the AN algebra: strictly upper E_ij and i E_ij, plus the real
/// traceless diagonals diag(1, ..., 1, -m, 0, ..., 0).
inline std::vector<Mat> an_basis(int N) {
  std::vector<Mat> gens;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      Mat e = Mat::Zero(N, N);
      e(i, j) = 1.0;
      gens.push_back(e);
      Mat f = Mat::Zero(N, N);
      f(i, j) = cplx(0.0, 1.0);
      gens.push_back(f);
    }
  }
  for (int m = 1; m < N; ++m) {
    Mat h = Mat::Zero(N, N);
    for (int i = 0; i < m; ++i) h(i, i) = 1.0;
    h(m, m) = -double(m);
    gens.push_back(h);
  }
  return gens;
}

/// Basis of sl(N,C) as a real space: the su(N) basis followed by the AN
/// basis; the two halves are isotropic for the imaginary-trace pairing.
inline std::vector<Mat> sl_double_basis(int N) {
  std::vector<Mat> gens = su_basis(N).generators;
  for (const Mat& b : an_basis(N)) gens.push_back(b);
  return gens;
}

/// Basis of the T*K double algebra: (T_a, 0) followed by (0, T_a).
inline std::vector<TStarElem> tstar_basis(int N) {
  std::vector<TStarElem> gens;
  const auto su = su_basis(N).generators;
  const Mat z = Mat::Zero(N, N);
  for (const Mat& t : su) gens.push_back({t, z});
  for (const Mat& t : su) gens.push_back({z, t});
  return gens;
}

/// Gram matrix of a (possibly indefinite) bilinear form over a basis.
template <class Elem, class Form>
Eigen::MatrixXd gram_matrix(const std::vector<Elem>& basis, Form&& form) {
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = form(basis[i], basis[j]);
  return g;
}

/// Coordinates of an element over a basis, using a non-degenerate form.
template <class Elem, class Form>
RVec coords_via_form(const Elem& x, const std::vector<Elem>& basis, Form&& form,
                     const Eigen::MatrixXd& gram) {
  const int n = static_cast<int>(basis.size());
  RVec rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = form(basis[i], x);
  return gram.fullPivLu().solve(rhs);
}

/// Matrix of a real-linear operator over a basis, via the form's Gram matrix.
template <class Elem, class Fn, class Form>
Eigen::MatrixXd operator_matrix(Fn&& fn, const std::vector<Elem>& basis,
                                Form&& form) {
  const int n = static_cast<int>(basis.size());
  const Eigen::MatrixXd g = gram_matrix(basis, form);
  Eigen::MatrixXd f(n, n);
  for (int j = 0; j < n; ++j) {
    const Elem img = fn(basis[j]);
    for (int i = 0; i < n; ++i) f(i, j) = form(basis[i], img);
  }
  return g.fullPivLu().solve(f);
}

}  // namespace emodel
