#pragma once

// Curvature and derivative operators on a coordinate chart.  Everything is
// driven by jet evaluation of the metric component map: metric jets of order
// k yield Christoffel symbols of order k-1 and curvature of order k-2, so a
// single order-3 evaluation supports first derivatives of curvature (and an
// order-4 evaluation supports Hessians of curvature-derived scalars).
//
// Index conventions, fixed throughout:
//   Gamma(a,b,c)      = Γ^a_{bc}
//   Riemann(a,b,c,d)  = dx^a( R(∂_c,∂_d) ∂_b ),
//                       R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z
//   Ricci(j,k)        = Σ_a Riemann(a,k,a,j)   (positive on round spheres)
//   nabla T (1,1)     : (a,b,c) slot = (∇_{∂_c} T)^a_b

#include <optional>

#include "rblab/chart.hpp"
#include "rblab/tensor.hpp"

namespace rblab {

using TensorField11 = std::function<Mat<Jet>(const JetPoint&, double)>;

// One point, one metric, all curvature stages cached.  Cheap stages are
// computed in the constructor, curvature lazily.
class GeometryEval {
public:
  GeometryEval(const ChartMetric& m, const Point& p, double t, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Point& point() const { return p_; }
  double time() const { return t_; }
  const ChartMetric& chart() const { return *chart_; }

  const JetPoint& coords() const { return coords_; }
  const Mat<Jet>& g() const { return g_; }
  const Mat<Jet>& ginv() const { return ginv_; }
  const Jet& det() const { return det_; }

  const Ten3<Jet>& gamma();    // needs order >= 1
  const Ten4<Jet>& riemann();  // needs order >= 2
  const Mat<Jet>& ricci();     // needs order >= 2
  const Jet& scalar();         // needs order >= 2
  const Mat<Jet>& q();         // Ricci operator jets, needs order >= 2

  Matd g_val() const;
  Matd ginv_val() const;
  double scalar_val() { return scalar().value(); }
  Vecd grad_scalar_curv();  // (∇S)^a, needs order >= 3
  Ten3d nabla_q();          // (∇_c Q)^a_b values, needs order >= 3

private:
  const ChartMetric* chart_;
  Point p_;
  double t_;
  int dim_, order_;
  JetPoint coords_;
  Mat<Jet> g_, ginv_;
  Jet det_;
  std::optional<Ten3<Jet>> gamma_;
  std::optional<Ten4<Jet>> riemann_;
  std::optional<Mat<Jet>> ricci_;
  std::optional<Jet> scalar_;
  std::optional<Mat<Jet>> q_;

  void need(int k, const char* what) const;
};

// ---- point evaluators --------------------------------------------------------

Matd metric_at(const ChartMetric& m, const Point& p, double t);
PointTensor christoffel(const ChartMetric& m, const Point& p, double t);
PointTensor riemann(const ChartMetric& m, const Point& p, double t);
PointTensor ricci(const ChartMetric& m, const Point& p, double t);
double scalar_curvature(const ChartMetric& m, const Point& p, double t);
PointTensor ricci_operator(const ChartMetric& m, const Point& p, double t);

Vecd grad_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t);
PointTensor hessian_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t);
double laplacian_scalar(const ChartMetric& m, const ScalarField& f, const Point& p, double t);
PointTensor lie_derivative_metric(const ChartMetric& m, const VectorField& xi, const Point& p,
                                  double t);
double divergence_vf(const ChartMetric& m, const VectorField& xi, const Point& p, double t);
PointTensor covariant_derivative_11tensor(const ChartMetric& m, const TensorField11& T,
                                          const Point& p, double t);

// Gram–Schmidt orthonormalization of the coordinate basis; column i of the
// result is frame vector e_i in coordinate components.
Matd orthonormal_frame(const ChartMetric& m, const Point& p, double t);

// ---- small metric-aware linear algebra (value level) ------------------------

Mat<Jet> invert_spd(const Mat<Jet>& g);  // adjugate/det; throws DegeneracyError
Jet det_jet(const Mat<Jet>& g);

double vec_norm(const Matd& g, const Vecd& v);                     // |v|_g
double norm2_cov2(const Matd& ginv, const Matd& T);                // |T|² for (0,2)
double norm2_op11(const Matd& g, const Matd& ginv, const Matd& A); // |A|² for (1,1)

}  // namespace rblab
