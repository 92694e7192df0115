#pragma once

// Closed-form example solitons, each packaged as a ready-to-verify
// SolitonData: the cigar family, warped products over an interval, the round
// sphere with a tangential-projection potential field, and a flat torus used
// as a zero-curvature testbed.

#include "rblab/soliton.hpp"

namespace rblab::catalog {

// Generalized trig pair: sn_k solves sn″ + k·sn = 0 with sn(0)=0, sn′(0)=1,
// and cn_k = sn_k′.  (k<0: sinh/cosh; k=0: t,1; k>0: sin/cos.)
double sn(double k, double t);
double cn(double k, double t);
Jet sn(double k, const Jet& t);
Jet cn(double k, const Jet& t);

// Steady gradient Ricci soliton on the plane: g = (dx²+dy²)/(1+x²+y²),
// ξ = −2(x∂_x + y∂_y) = ∇(−log(1+x²+y²)), λ ≡ 0, ρ = 0.
SolitonData hamilton_cigar();

// Time-t slice of the conformal family g = (dx²+dy²)/(e^{4(1−ρ)t}+x²+y²)
// with ξ = −2√(1−ρ)(x∂_x + y∂_y).  Carries the closed-form λ whose sign
// changes across e^{4(1−ρ)t}+x²+y² = 2ρ/(1−√(1−ρ)); requires rho ≤ 1.
SolitonData cigar_almost_rb(double rho, double t);

// Surface dt² + h(t)²dθ² with h = h1·sn_{−c} + h0·cn_{−c} (so h″ = c·h and
// the metric is Einstein with Ric = −c·g), potential f = a∫₀ᵗh + b, and
// λ(t) = a·h′(t) + c(2ρ−1).  Sampled on t ∈ [0.2, 2]; h must stay positive
// there.
SolitonData warped_product_2d(double c, double h0, double h1, double a, double b, double rho);

// Round sphere of curvature c (radius 1/√c) with the tangential projection of
// a constant ambient vector Z as potential field.  Supports n = 2 (Z in ℝ³,
// polar chart (θ,ϕ)) and n = 3 (Z in ℝ⁴, chart (θ,ϕ,ψ)); the last ambient
// axis is the polar axis, so Z = e_last gives μ = cos θ.
struct SphereConstruction {
  double c = 1.0;
  std::vector<double> Z;
  int n = 2;              // sphere dimension
  ChartMetric metric;     // g = (1/c)(dθ² + sin²θ dϕ² [+ sin²θ sin²ϕ dψ²])
  ScalarField mu;         // ⟨Z, unit normal⟩
  VectorField xi;         // tangential projection of Z; ∇μ = √c·ξ
};
SphereConstruction make_sphere_construction(double c, std::vector<double> Z);

// SphereConstruction packaged with λ = (n−1)(c−ρ) − √c·μ and potential μ/√c.
SolitonData round_sphere_soliton(double c, std::vector<double> Z, double rho = 0.0);

// Flat periodic box [0,Lx)×[0,Ly): compact, S ≡ 0.
ChartMetric flat_torus(double Lx, double Ly);

}  // namespace rblab::catalog
