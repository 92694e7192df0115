#pragma once

// Data model and pointwise verification suite for almost Ricci–Bourguignon
// solitons:  Ric + ½£_ξ g = (λ + ρS) g  with λ a function on the manifold.
//
// λ resolution: when SolitonData carries no closed-form λ, the engine solves
// for it pointwise from the trace of the defining equation ("SOLVE" mode);
// the residual tensor is then trace-free by construction.  When a closed form
// is supplied, reports carry both values and their maximal discrepancy.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rblab/chartcalc.hpp"

namespace rblab {

struct SolitonData {
  ChartMetric metric;
  VectorField xi;
  ScalarField potential_f;    // optional; when set, ξ = ∇f is claimed
  ScalarField lambda_closed;  // optional; empty means "solve from trace"
  double rho = 0.0;
  double time = 0.0;  // evaluation time for time-dependent families
  std::string name;

  bool has_potential() const { return static_cast<bool>(potential_f); }
  bool has_closed_lambda() const { return static_cast<bool>(lambda_closed); }
};

enum class SolitonClass { shrinking, steady, expanding, indefinite };
const char* to_string(SolitonClass c);

struct SolitonReport {
  double residual_sup = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_discrepancy = 0.0;  // max |λ_closed − λ_trace|; 0 in SOLVE mode
  bool trace_free = false;          // true when λ was solved from the trace
  SolitonClass classification = SolitonClass::indefinite;
  std::vector<std::pair<std::string, double>> identities;  // name → sup residual
  int point_count = 0;
  std::string points_desc;
};

// λ(p) from the trace of the soliton equation: (1/n)g^{ab}(Ric + ½£_ξ g)_ab − ρS.
double lambda_from_trace(const SolitonData& d, const Point& p, double t);

// Resolved λ at a point: closed form when present, else trace-derived.
double lambda_at(const SolitonData& d, const Point& p, double t);

// λ as a jet-valued field.  The trace-derived variant evaluates the full
// curvature pipeline at jet order k+2 to return an order-k jet, so k ≤ 2.
ScalarField trace_lambda_field(const SolitonData& d);
ScalarField resolved_lambda_field(const SolitonData& d);

// The skew operator of the soliton, as a jet-valued (1,1) field:
// φ^c_a = ½ g^{cb}(∂_a η_b − ∂_b η_a) with η = g(ξ,·).  Evaluates the metric
// at one order above the request, so input jets must have order ≤ 3.
TensorField11 phi_field(const SolitonData& d);

// Uniform sample grid over the chart domain (singular loci already excluded
// by the domain box), flattened row-major.
std::vector<Point> default_sample_grid(const ChartMetric& m, int per_axis = 20);

SolitonClass classify(std::span<const double> lambda_values, double eps);

// Full verification sweep: residual tensor sup-norm, λ statistics and
// classification, and the structural-identity residual table.
SolitonReport soliton_residual(const SolitonData& d, const std::vector<Point>& pts);

// ---- pointwise identity residuals -------------------------------------------

PointTensor phi_operator(const SolitonData& d, const Point& p, double t);

// sup over g-unit coordinate directions X of ‖∇_X ξ − [(λ+ρS)X − QX + φX]‖_g
double cdopf_residual(const SolitonData& d, const Point& p, double t);

// ‖Q(ξ) + (n−1)∇(λ+ρS) − ½∇S + div φ‖_g
double rorbs_residual(const SolitonData& d, const Point& p, double t);

// Curvature identity R(∂_X,∂_Y)ξ = X(λ+ρS)∂_Y − Y(λ+ρS)∂_X − (∇Q)(X,Y) +
// (∇Q)(Y,X) ∓ φ-terms.  `printed` uses −(∇φ)(X,Y) − (∇φ)(Y,X); `derived` uses
// +(∇φ)(X,Y) − (∇φ)(Y,X), which is what differentiating ∇ξ actually yields.
struct CtrbsResiduals {
  double printed = 0.0;
  double derived = 0.0;
};
CtrbsResiduals ctrbs_residual(const SolitonData& d, int X, int Y, const Point& p, double t);

// |div ξ − (n(λ+ρS) − S)|
double div_identity_residual(const SolitonData& d, const Point& p, double t);

enum class ObataVariant { unit, scaled };
// unit:   ‖Hess λ̄ + λ̄·g‖_g          (Obata's equation, curvature 1)
// scaled: ‖(n−1)Hess λ̄ + (S/n)λ̄·g‖_g
double obata_residual(const ChartMetric& m, const ScalarField& lam_bar, ObataVariant variant,
                      const Point& p, double t);

// |Δσ − (S − n(λ+ρS))|
double poisson_residual(const SolitonData& d, const ScalarField& sigma, const Point& p, double t);

std::string to_json(const SolitonReport& r);

}  // namespace rblab
