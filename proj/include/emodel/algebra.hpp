#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Lie-algebra kernel for su(N) and sl(N,C) viewed as a real Lie algebra:
// brackets, bilinear forms, real bases, orthogonal projectors and the
// Yang-Baxter operator.

namespace emodel {

using Mat  = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr double kStructTol = 1e-12;

inline void check_same_dim(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("algebra: dimension mismatch");
}

inline bool is_traceless(const Mat& x, double tol = kStructTol) {
  return std::abs(x.trace()) <= tol;
}

/// X lies in su(N): X^dagger = -X.
inline bool is_su(const Mat& x, double tol = kStructTol) {
  return (x + Mat(x.adjoint())).norm() <= tol;
}

/// X lies in the Lie algebra of AN: upper triangular with real diagonal.
inline bool is_an(const Mat& x, double tol = kStructTol) {
  const auto n = x.rows();
  double r = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    r = std::max(r, std::abs(x(i, i).imag()));
    for (Eigen::Index j = 0; j < i; ++j) r = std::max(r, std::abs(x(i, j)));
  }
  return r <= tol;
}

inline Mat bracket(const Mat& x, const Mat& y) {
  check_same_dim(x, y);
  return x * y - y * x;
}

/// Killing-Cartan form in the plain defining-trace normalization.
inline double killing_form(const Mat& x, const Mat& y) {
  check_same_dim(x, y);
  return (x * y).trace().real();
}

/// Complex-bilinear extension of the Killing form (analytic lambda work).
inline cplx killing_form_c(const Mat& x, const Mat& y) {
  check_same_dim(x, y);
  return (x * y).trace();
}

/// Element of the T*K Lie algebra: a pair (mu, nu) of su(N) matrices.
struct TStarElem {
  Mat mu, nu;

  TStarElem() = default;
  TStarElem(Mat m, Mat n) : mu(std::move(m)), nu(std::move(n)) {}

  static TStarElem Zero(int N) { return {Mat::Zero(N, N), Mat::Zero(N, N)}; }

  TStarElem operator+(const TStarElem& o) const { return {mu + o.mu, nu + o.nu}; }
  TStarElem operator-(const TStarElem& o) const { return {mu - o.mu, nu - o.nu}; }
  TStarElem operator-() const { return {-mu, -nu}; }
  friend TStarElem operator*(double s, const TStarElem& x) { return {s * x.mu, s * x.nu}; }
  friend TStarElem operator*(cplx s, const TStarElem& x) { return {s * x.mu, s * x.nu}; }

  double norm() const { return std::sqrt(mu.squaredNorm() + nu.squaredNorm()); }
};

/// Split-signature form on the T*K double: (mu1,nu2)_K + (mu2,nu1)_K.
inline double form_tstar(const TStarElem& a, const TStarElem& b) {
  return killing_form(a.mu, b.nu) + killing_form(b.mu, a.nu);
}

inline cplx form_tstar_c(const TStarElem& a, const TStarElem& b) {
  return killing_form_c(a.mu, b.nu) + killing_form_c(b.mu, a.nu);
}

/// Semidirect-product bracket on Lie(T*K): [(a,b),(c,d)] = ([a,c],[a,d]+[b,c]).
inline TStarElem bracket_tstar(const TStarElem& x, const TStarElem& y) {
  return {bracket(x.mu, y.mu), bracket(x.mu, y.nu) + bracket(x.nu, y.mu)};
}

/// Ad-invariant form on sl(N,C) as a real algebra: -(1/eta) Im tr(XY).
inline double form_sl(const Mat& x, const Mat& y, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("form_sl: eta must be positive");
  check_same_dim(x, y);
  return -(x * y).trace().imag() / eta;
}

/// Yang-Baxter operator: -i on positive roots, +i on negative roots, 0 on
/// the Cartan subalgebra (strict triangular parts in the defining basis).
inline Mat yang_baxter_R(const Mat& x) {
  const auto n = x.rows();
  Mat r = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i < j) r(i, j) = cplx(0, -1) * x(i, j);
      if (i > j) r(i, j) = cplx(0, 1) * x(i, j);
    }
  return r;
}

inline void check_unitary(const Mat& k, double tol = 1e-10) {
  const auto n = k.rows();
  if ((Mat(k.adjoint() * k) - Mat::Identity(n, n)).norm() > tol)
    throw std::invalid_argument("matrix is not unitary within tolerance");
}

/// Conjugated Yang-Baxter operator R_k = Ad_{k^-1} R Ad_k.
inline Mat r_twisted(const Mat& k, const Mat& x) {
  check_unitary(k);
  const Mat kd = k.adjoint();
  return kd * yang_baxter_R(k * x * kd) * k;
}

/// Ordered real basis with its Killing Gram matrix.
struct RealBasis {
  std::vector<Mat> generators;
  RMat gram;                 // pairwise killing_form values
  double condition_number = 0.0;
};

inline RealBasis make_real_basis(std::vector<Mat> gens) {
  RealBasis b;
  const int d = static_cast<int>(gens.size());
  b.generators = std::move(gens);
  b.gram.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      b.gram(i, j) = killing_form(b.generators[i], b.generators[j]);
  Eigen::JacobiSVD<RMat> svd(b.gram);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || !(smax / smin < 1e12))
    throw std::invalid_argument("RealBasis: generators are not independent");
  b.condition_number = smax / smin;
  return b;
}

/// su(3) x-basis ordering (x1..x7, y), the column-vector encoding used for
/// entrywise 8x8 operator comparisons.
inline std::vector<Mat> su3_x_generators() {
  const cplx I(0, 1);
  auto E = [](int i, int j) {
    Mat m = Mat::Zero(3, 3);
    m(i, j) = 1.0;
    return m;
  };
  std::vector<Mat> g;
  g.push_back(I * (E(0, 1) + E(1, 0)));  // x1
  g.push_back(E(0, 1) - E(1, 0));        // x2
  g.push_back(I * (E(0, 0) - E(1, 1)));  // x3
  g.push_back(I * (E(0, 2) + E(2, 0)));  // x4
  g.push_back(E(0, 2) - E(2, 0));        // x5
  g.push_back(I * (E(1, 2) + E(2, 1)));  // x6
  g.push_back(E(1, 2) - E(2, 1));        // x7
  Mat y = Mat::Zero(3, 3);
  y(0, 0) = I;
  y(1, 1) = I;
  y(2, 2) = -2.0 * I;
  g.push_back(y);                        // y
  return g;
}

/// Real basis of su(N); for N=3 the x-basis, otherwise root vectors grouped
/// per pair followed by the orthogonal Cartan directions diag(1,..,1,-m).
inline RealBasis su_basis(int N) {
  if (N < 2) throw std::invalid_argument("su_basis: N must be >= 2");
  if (N == 3) return make_real_basis(su3_x_generators());
  const cplx I(0, 1);
  std::vector<Mat> g;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Mat a = Mat::Zero(N, N), s = Mat::Zero(N, N);
      a(i, j) = I;
      a(j, i) = I;
      s(i, j) = 1.0;
      s(j, i) = -1.0;
      g.push_back(a);
      g.push_back(s);
    }
  for (int m = 1; m < N; ++m) {
    Mat h = Mat::Zero(N, N);
    for (int i = 0; i < m; ++i) h(i, i) = I;
    h(m, m) = -cplx(m) * I;
    g.push_back(h);
  }
  return make_real_basis(g);
}

/// Coordinates of a (real) algebra element over a RealBasis, via Gram solve.
inline RVec real_coords(const RealBasis& b, const Mat& x) {
  const int d = static_cast<int>(b.generators.size());
  RVec v(d);
  for (int i = 0; i < d; ++i) v(i) = killing_form(b.generators[i], x);
  return b.gram.ldlt().solve(v);
}

inline CVec complex_coords(const RealBasis& b, const Mat& x) {
  const int d = static_cast<int>(b.generators.size());
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = killing_form_c(b.generators[i], x);
  return b.gram.cast<cplx>().ldlt().solve(v);
}

inline Mat from_coords(const RealBasis& b, const RVec& c) {
  Mat x = Mat::Zero(b.generators[0].rows(), b.generators[0].cols());
  for (int i = 0; i < c.size(); ++i) x += c(i) * b.generators[i];
  return x;
}

/// Linear map between real algebra subspaces stored as a coordinate matrix
/// (rows = output coordinates over the codomain basis).
struct LinearMap {
  RMat matrix;
  RealBasis domain, codomain;

  Mat apply(const Mat& x) const {
    return from_coords(codomain, RVec(matrix * real_coords(domain, x)));
  }
};

template <class Fn>
LinearMap make_linear_map(Fn&& fn, const RealBasis& domain, const RealBasis& codomain) {
  LinearMap m;
  m.domain = domain;
  m.codomain = codomain;
  const int din = static_cast<int>(domain.generators.size());
  const int dout = static_cast<int>(codomain.generators.size());
  m.matrix.resize(dout, din);
  for (int j = 0; j < din; ++j)
    m.matrix.col(j) = real_coords(codomain, fn(domain.generators[j]));
  return m;
}

/// Orthogonal projectors (w.r.t. the Killing form) onto ker(ad_xi) in su(N)
/// and its orthocomplement, as matrices over su_basis(N).
inline std::pair<LinearMap, LinearMap> stabilizer_projectors(const Mat& xi) {
  const int N = static_cast<int>(xi.rows());
  const RealBasis basis = su_basis(N);
  const int d = static_cast<int>(basis.generators.size());

  // Frobenius-orthonormal rescaling of the (orthogonal) basis.
  RVec norms(d);
  for (int i = 0; i < d; ++i) norms(i) = std::sqrt(-basis.gram(i, i));
  RMat ad(d, d);
  for (int j = 0; j < d; ++j) {
    const Mat img = bracket(xi, basis.generators[j]) / norms(j);
    for (int i = 0; i < d; ++i)
      ad(i, j) = -killing_form(basis.generators[i], img) / norms(i);
  }
  Eigen::JacobiSVD<RMat> svd(ad, Eigen::ComputeFullV);
  const RVec sv = svd.singularValues();
  const double cut = 1e-8 * std::max(1.0, sv(0));
  int nullity = 0;
  for (int i = 0; i < d; ++i)
    if (sv(i) <= cut) ++nullity;
  const RMat vnull = svd.matrixV().rightCols(nullity);
  const RMat p_on = vnull * vnull.transpose();

  const RMat scale = norms.asDiagonal();
  const RMat scale_inv = norms.cwiseInverse().asDiagonal();
  LinearMap p{scale_inv * p_on * scale, basis, basis};
  LinearMap pperp{RMat(RMat::Identity(d, d) - p.matrix), basis, basis};
  return {p, pperp};
}

/// Appendix column-vector encoding of su(3).
inline RVec su3_encode(const Mat& x) {
  if (x.rows() != 3 || x.cols() != 3)
    throw std::invalid_argument("su3_encode: N must be 3");
  if (!is_su(x, 1e-10)) throw std::invalid_argument("su3_encode: not in su(3)");
  RVec v(8);
  const double y = -x(2, 2).imag() / 2.0;
  v(0) = x(0, 1).imag();
  v(1) = x(0, 1).real();
  v(2) = x(0, 0).imag() - y;
  v(3) = x(0, 2).imag();
  v(4) = x(0, 2).real();
  v(5) = x(1, 2).imag();
  v(6) = x(1, 2).real();
  v(7) = y;
  return v;
}

inline Mat su3_decode(const RVec& v) {
  if (v.size() != 8) throw std::invalid_argument("su3_decode: need 8 coordinates");
  const auto g = su3_x_generators();
  Mat x = Mat::Zero(3, 3);
  for (int i = 0; i < 8; ++i) x += v(i) * g[i];
  return x;
}

}  // namespace emodel
