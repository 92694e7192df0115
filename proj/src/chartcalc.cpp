#include "rblab/chartcalc.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace rblab {

namespace {

std::string format_point(std::span<const double> p) {
  std::string s = "(";
  char buf[40];
  for (size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.10g", i ? ", " : "", p[i]);
    s += buf;
  }
  return s + ")";
}

// leading principal minor of order k of a value matrix (k <= 3)
double leading_minor(const Matd& g, int k) {
  if (k == 1) return g(0, 0);
  if (k == 2) return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
         g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
         g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

}  // namespace

Jet det_jet(const Mat<Jet>& g) {
  const int n = g.n;
  if (n == 1) return g(0, 0);
  if (n == 2) return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
         g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
         g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

Mat<Jet> invert_spd(const Mat<Jet>& g) {
  const int n = g.n;
  Jet det = det_jet(g);
  // ill-conditioned is allowed (thin polar caps are legitimate); only an
  // actually nonpositive or vanishing determinant is fatal
  if (!(det.value() > 1e-280)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "metric matrix is degenerate or not positive (det = %.6g)",
                  det.value());
    throw DegeneracyError(buf);
  }
  Mat<Jet> inv;
  inv.n = n;
  Jet idet = recip(det);
  if (n == 1) {
    inv(0, 0) = idet;
  } else if (n == 2) {
    inv(0, 0) = g(1, 1) * idet;
    inv(1, 1) = g(0, 0) * idet;
    inv(0, 1) = -g(0, 1) * idet;
    inv(1, 0) = -g(1, 0) * idet;
  } else {
    // inv(i,j) = cofactor(j,i) / det
    auto cof = [&](int r, int c) {
      int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
      if (r0 > r1) std::swap(r0, r1);
      if (c0 > c1) std::swap(c0, c1);
      Jet m = g(r0, c0) * g(r1, c1) - g(r0, c1) * g(r1, c0);
      return ((r + c) % 2 == 0) ? m : -m;
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) inv(i, j) = cof(j, i) * idet;
  }
  return inv;
}

GeometryEval::GeometryEval(const ChartMetric& m, const Point& p, double t, int order)
    : chart_(&m), p_(p), t_(t), dim_(m.dim), order_(order) {
  if (dim_ < 1 || dim_ > Jet::kMaxVars)
    throw ParameterError(m.name + ": unsupported chart dimension");
  if (static_cast<int>(p.size()) != dim_)
    throw ParameterError(m.name + ": point has wrong number of coordinates, expected " +
                         std::to_string(dim_));
  if (order_ < 0 || order_ > Jet::kMaxOrder)
    throw ParameterError(m.name + ": jet order " + std::to_string(order_) +
                         " outside supported range [0, " + std::to_string(Jet::kMaxOrder) + "]");
  if (!m.domain.contains(p))
    throw DomainError(m.name + ": point " + format_point(p) + " outside chart domain " +
                      m.domain.describe());

  coords_ = seed_point(p, order_);
  g_ = m.components(coords_, t_);
  if (g_.n != dim_) throw Error(m.name + ": metric map returned wrong dimension");

  double scale = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      if (!std::isfinite(g_(i, j).value()))
        throw DegeneracyError(m.name + ": metric has non-finite components at " +
                              format_point(p));
      scale = std::max(scale, std::fabs(g_(i, j).value()));
    }
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (std::fabs(g_(i, j).value() - g_(j, i).value()) > 1e-12 * (1 + scale))
        throw Error(m.name + ": metric components are not symmetric at " + format_point(p));

  Matd gv = g_val();
  for (int k = 1; k <= dim_; ++k) {
    double mk = leading_minor(gv, k);
    if (!(mk > 0)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "%s: metric not positive definite at %s (leading %dx%d minor = %.6g)",
                    m.name.c_str(), format_point(p).c_str(), k, k, mk);
      throw DegeneracyError(buf);
    }
  }

  det_ = det_jet(g_);
  ginv_ = invert_spd(g_);
}

void GeometryEval::need(int k, const char* what) const {
  if (order_ < k) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s requires metric jets of order >= %d, have order %d", what,
                  k, order_);
    throw PreconditionError(buf);
  }
}

const Ten3<Jet>& GeometryEval::gamma() {
  if (!gamma_) {
    need(1, "Christoffel symbols");
    const int n = dim_;
    Ten3<Jet> G;
    G.n = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = b; c < n; ++c) {
          Jet s = Jet::constant(0.0, n, order_ - 1);
          for (int d = 0; d < n; ++d)
            s += ginv_(a, d) * (g_(d, b).d(c) + g_(d, c).d(b) - g_(b, c).d(d));
          s *= 0.5;
          G(a, b, c) = s;
          G(a, c, b) = s;
        }
    gamma_ = std::move(G);
  }
  return *gamma_;
}

const Ten4<Jet>& GeometryEval::riemann() {
  if (!riemann_) {
    need(2, "the curvature tensor");
    const int n = dim_;
    const Ten3<Jet>& G = gamma();
    Ten4<Jet> R;
    R.n = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          // antisymmetric in (c,d)
          R(a, b, c, c) = Jet::constant(0.0, n, order_ - 2);
          for (int d = c + 1; d < n; ++d) {
            Jet s = G(a, d, b).d(c) - G(a, c, b).d(d);
            for (int e = 0; e < n; ++e) s += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
            R(a, b, c, d) = s;
            R(a, b, d, c) = -s;
          }
        }
    riemann_ = std::move(R);
  }
  return *riemann_;
}

const Mat<Jet>& GeometryEval::ricci() {
  if (!ricci_) {
    const int n = dim_;
    const Ten4<Jet>& R = riemann();
    Mat<Jet> ric;
    ric.n = n;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet s = Jet::constant(0.0, n, order_ - 2);
        for (int a = 0; a < n; ++a) s += R(a, k, a, j);
        ric(j, k) = s;
      }
    ricci_ = std::move(ric);
  }
  return *ricci_;
}

const Jet& GeometryEval::scalar() {
  if (!scalar_) {
    const int n = dim_;
    const Mat<Jet>& ric = ricci();
    Jet s = Jet::constant(0.0, n, order_ - 2);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += ginv_(j, k) * ric(j, k);
    scalar_ = std::move(s);
  }
  return *scalar_;
}

const Mat<Jet>& GeometryEval::q() {
  if (!q_) {
    const int n = dim_;
    const Mat<Jet>& ric = ricci();
    Mat<Jet> Q;
    Q.n = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet s = Jet::constant(0.0, n, order_ - 2);
        for (int c = 0; c < n; ++c) s += ginv_(a, c) * ric(c, b);
        Q(a, b) = s;
      }
    q_ = std::move(Q);
  }
  return *q_;
}

Matd GeometryEval::g_val() const {
  Matd v;
  v.n = dim_;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) v(i, j) = g_(i, j).value();
  return v;
}

Matd GeometryEval::ginv_val() const {
  Matd v;
  v.n = dim_;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) v(i, j) = ginv_(i, j).value();
  return v;
}

Vecd GeometryEval::grad_scalar_curv() {
  need(3, "the scalar-curvature gradient");
  const Jet& S = scalar();
  Vecd v;
  v.n = dim_;
  for (int a = 0; a < dim_; ++a) {
    double s = 0;
    for (int b = 0; b < dim_; ++b) s += ginv_(a, b).value() * S.deriv1(b);
    v[a] = s;
  }
  return v;
}

Ten3d GeometryEval::nabla_q() {
  need(3, "the covariant derivative of the Ricci operator");
  const int n = dim_;
  const Ten3<Jet>& G = gamma();
  const Mat<Jet>& Q = q();
  Ten3d r;
  r.n = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = Q(a, b).deriv1(c);
        for (int e = 0; e < n; ++e)
          s += G(a, c, e).value() * Q(e, b).value() - G(e, c, b).value() * Q(a, e).value();
        r(a, b, c) = s;
      }
  return r;
}

// ---- point evaluators --------------------------------------------------------

Matd metric_at(const ChartMetric& m, const Point& p, double t) {
  return GeometryEval(m, p, t, 0).g_val();
}

PointTensor christoffel(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 1);
  const Ten3<Jet>& G = E.gamma();
  PointTensor T({+1, -1, -1}, E.dim(), p);
  for (int a = 0; a < E.dim(); ++a)
    for (int b = 0; b < E.dim(); ++b)
      for (int c = 0; c < E.dim(); ++c) T(a, b, c) = G(a, b, c).value();
  return T;
}

PointTensor riemann(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Ten4<Jet>& R = E.riemann();
  PointTensor T({+1, -1, -1, -1}, E.dim(), p);
  for (int a = 0; a < E.dim(); ++a)
    for (int b = 0; b < E.dim(); ++b)
      for (int c = 0; c < E.dim(); ++c)
        for (int d = 0; d < E.dim(); ++d) T(a, b, c, d) = R(a, b, c, d).value();
  return T;
}

PointTensor ricci(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Mat<Jet>& ric = E.ricci();
  PointTensor T({-1, -1}, E.dim(), p);
  for (int j = 0; j < E.dim(); ++j)
    for (int k = 0; k < E.dim(); ++k) T(j, k) = ric(j, k).value();
  return T;
}

double scalar_curvature(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  return E.scalar_val();
}

PointTensor ricci_operator(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Mat<Jet>& Q = E.q();
  PointTensor T({+1, -1}, E.dim(), p);
  for (int a = 0; a < E.dim(); ++a)
    for (int b = 0; b < E.dim(); ++b) T(a, b) = Q(a, b).value();
  return T;
}

Vecd grad_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t) {
  GeometryEval E(m, p, t, 1);
  Jet fj = f(E.coords(), t);
  Vecd v;
  v.n = E.dim();
  for (int a = 0; a < E.dim(); ++a) {
    double s = 0;
    for (int b = 0; b < E.dim(); ++b) s += E.ginv()(a, b).value() * fj.deriv1(b);
    v[a] = s;
  }
  return v;
}

PointTensor hessian_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Ten3<Jet>& G = E.gamma();
  Jet fj = f(E.coords(), t);
  PointTensor T({-1, -1}, E.dim(), p);
  for (int i = 0; i < E.dim(); ++i)
    for (int j = 0; j < E.dim(); ++j) {
      double s = fj.deriv2(i, j);
      for (int c = 0; c < E.dim(); ++c) s -= G(c, i, j).value() * fj.deriv1(c);
      T(i, j) = s;
    }
  return T;
}

double laplacian_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Ten3<Jet>& G = E.gamma();
  Jet fj = f(E.coords(), t);
  double lap = 0;
  for (int i = 0; i < E.dim(); ++i)
    for (int j = 0; j < E.dim(); ++j) {
      double s = fj.deriv2(i, j);
      for (int c = 0; c < E.dim(); ++c) s -= G(c, i, j).value() * fj.deriv1(c);
      lap += E.ginv()(i, j).value() * s;
    }
  return lap;
}

PointTensor lie_derivative_metric(const ChartMetric& m, const VectorField& xi, const Point& p,
                                  double t) {
  GeometryEval E(m, p, t, 1);
  std::vector<Jet> v = xi(E.coords(), t);
  if (static_cast<int>(v.size()) != E.dim())
    throw ParameterError(m.name + ": vector field has wrong number of components");
  const Mat<Jet>& g = E.g();
  PointTensor T({-1, -1}, E.dim(), p);
  for (int i = 0; i < E.dim(); ++i)
    for (int j = 0; j < E.dim(); ++j) {
      double s = 0;
      for (int k = 0; k < E.dim(); ++k)
        s += v[k].value() * g(i, j).deriv1(k) + g(k, j).value() * v[k].deriv1(i) +
             g(i, k).value() * v[k].deriv1(j);
      T(i, j) = s;
    }
  return T;
}

double divergence_vf(const ChartMetric& m, const VectorField& xi, const Point& p, double t) {
  GeometryEval E(m, p, t, 1);
  std::vector<Jet> v = xi(E.coords(), t);
  if (static_cast<int>(v.size()) != E.dim())
    throw ParameterError(m.name + ": vector field has wrong number of components");
  // div ξ = ∂_i ξ^i + ξ^i ∂_i log √det g
  double s = 0;
  double det = E.det().value();
  for (int i = 0; i < E.dim(); ++i)
    s += v[i].deriv1(i) + 0.5 * v[i].value() * E.det().deriv1(i) / det;
  return s;
}

PointTensor covariant_derivative_11tensor(const ChartMetric& m, const TensorField11& T,
                                          const Point& p, double t) {
  GeometryEval E(m, p, t, 2);
  const Ten3<Jet>& G = E.gamma();
  Mat<Jet> A = T(E.coords(), t);
  if (A.n != E.dim()) throw ParameterError(m.name + ": tensor field has wrong dimension");
  PointTensor D({+1, -1, -1}, E.dim(), p);
  for (int a = 0; a < E.dim(); ++a)
    for (int b = 0; b < E.dim(); ++b)
      for (int c = 0; c < E.dim(); ++c) {
        double s = A(a, b).deriv1(c);
        for (int e = 0; e < E.dim(); ++e)
          s += G(a, c, e).value() * A(e, b).value() - G(e, c, b).value() * A(a, e).value();
        D(a, b, c) = s;
      }
  return D;
}

Matd orthonormal_frame(const ChartMetric& m, const Point& p, double t) {
  Matd g = metric_at(m, p, t);
  const int n = g.n;
  // rows of e hold frame vectors during construction, transposed at the end
  Matd e;
  e.n = n;
  auto inner = [&](const double* u, const double* v) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += g(i, j) * u[i] * v[j];
    return s;
  };
  double work[3][3] = {};
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) work[i][a] = (a == i) ? 1.0 : 0.0;
    for (int j = 0; j < i; ++j) {
      double c = inner(work[i], work[j]);
      for (int a = 0; a < n; ++a) work[i][a] -= c * work[j][a];
    }
    double nrm = std::sqrt(inner(work[i], work[i]));
    if (!(nrm > 1e-150)) throw DegeneracyError(m.name + ": orthonormalization broke down");
    for (int a = 0; a < n; ++a) work[i][a] /= nrm;
  }
  Matd F;
  F.n = n;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) F(a, i) = work[i][a];
  return F;
}

// ---- norms -------------------------------------------------------------------

double vec_norm(const Matd& g, const Vecd& v) {
  double s = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) s += g(i, j) * v[i] * v[j];
  return std::sqrt(std::max(s, 0.0));
}

double norm2_cov2(const Matd& ginv, const Matd& T) {
  const int n = ginv.n;
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += ginv(i, a) * ginv(j, b) * T(i, j) * T(a, b);
  return s;
}

double norm2_op11(const Matd& g, const Matd& ginv, const Matd& A) {
  const int n = g.n;
  double s = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += g(a, b) * ginv(i, j) * A(a, i) * A(b, j);
  return s;
}

}  // namespace rblab
