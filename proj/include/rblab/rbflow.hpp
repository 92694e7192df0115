#pragma once

// 2D Ricci–Bourguignon flow ∂g/∂t = −2(Ric − ρSg) in conformal gauge.
//
// Writing g = e^{2u}(dx² + dy²), two dimensions give Ric = −(Δ₀u)·δ and
// S = −2e^{−2u}Δ₀u (Δ₀ = flat Laplacian), so the tensor flow collapses to the
// scalar parabolic equation
//
//     ∂u/∂t = (1 − 2ρ)·e^{−2u}·Δ₀u ,
//
// forward-parabolic for ρ < 1/2 and degenerate (rhs ≡ 0) at ρ = 1/2.  The
// conformal family u(t) = −½·log(e^{4t} + x² + y²) solves the ρ = 0 flow
// exactly and serves as the oracle for plane runs.

#include <functional>
#include <string>
#include <vector>

#include "rblab/chart.hpp"

namespace rblab {

enum class FlowBoundary { periodic, dirichlet_from_exact };

// Reference profile (x, y, t) → u used two ways on plane domains: pinned at
// the Dirichlet edge nodes and compared against in the sup_err monitor.  For
// ρ = 0 cigar runs this is the exact solution; for ρ ≠ 0 the initial profile
// is frozen in time (no exact solution is available).
using FlowReference = std::function<double(double, double, double)>;

struct FlowState {
  int nx = 0, ny = 0;  // nodes per axis (plane runs include the boundary ring)
  double h = 0.0;      // uniform spacing, both axes
  double x0 = 0.0, y0 = 0.0;
  double rho = 0.0;
  double time = 0.0;
  FlowBoundary boundary = FlowBoundary::periodic;
  FlowReference reference;  // empty → sup_err monitor reports NaN
  std::vector<double> u;    // row-major: u[j·nx + i] at (x0 + i·h, y0 + j·h)

  double& at(int i, int j) { return u[size_t(j) * nx + i]; }
  double at(int i, int j) const { return u[size_t(j) * nx + i]; }
};

// Ready-made initial states.
FlowState cigar_state(double rho, double h, double half_width = 4.0);
FlowState perturbed_torus_state(int n, double amplitude, double rho);
FlowState flat_torus_state(int n, double rho);

// u(x, y, t) = −½·log(e^{4t} + x² + y²).
double exact_cigar_u(double t, double x, double y);

// du/dt samples: (1−2ρ)e^{−2u}Δ₀u with the 5-point stencil; identically zero
// at ρ = 1/2; zero on Dirichlet boundary nodes (they are pinned).
// Refuses ρ > 1/2 (backward-parabolic).
std::vector<double> rhs(const FlowState& s);

// h²/(4·(1−2ρ)·max e^{−2u}); +inf when ρ = 1/2.
double cfl_bound(const FlowState& s);

// One classical RK4 step.  Refuses dt above the CFL bound (message carries the
// computed bound).  ρ = 1/2 short-circuits: u returned bitwise unchanged, only
// time advances.  Dirichlet rings are set from the reference at stage times.
FlowState step(const FlowState& s, double dt);

double max_abs_scalar_curvature(const FlowState& s);  // S = −2e^{−2u}Δ₀u
double flow_area(const FlowState& s);                 // Σ e^{2u}·h²
// sup |u − reference| over the inner 80% of the box (boundary-influence zone
// excluded); NaN when the state has no reference.
double sup_reference_error(const FlowState& s);

struct FlowSample {
  double time = 0.0;
  double max_abs_S = 0.0;
  double area = 0.0;
  double sup_err = 0.0;  // NaN when no reference
};
struct FlowResult {
  std::vector<FlowSample> trajectory;
  bool blew_up = false;
  std::string blow_up_reason;
};

// March to time T.  dt ≤ 0 selects 0.8× the CFL bound, recomputed every step;
// the last step is clipped to land on T.  The initial state and every
// sample_every-th step (plus the final one) are recorded.  Non-finite values
// or |u| > 50 abort with a blow-up report.
FlowResult run(FlowState s, double T, double dt = 0.0, int sample_every = 1);

// Mismatch of the closed-form conformal family u = −½log(e^{4(1−ρ)t}+x²+y²)
// against the flow equation: sup over a fixed grid on [−4,4]² of
// |∂u/∂t − (1−2ρ)e^{−2u}Δ₀u| with both sides analytic.  Works out to
// 2|ρ|·A/(A+x²+y²), so it vanishes identically at ρ = 0 and approaches 2|ρ|
// (attained at the origin) for every t — the family solves the literal flow
// only in the Ricci case.
double flow_residual_of_example1(double rho, double t);

// columns: time,max_abs_S,area,sup_err (sup_err empty when no reference)
std::string trajectory_csv(const FlowResult& r);

namespace kernel {
// factor·e^{−2u}·Δ₀u/h² maps, compiled with fast-math (pure maps, no checks).
void rhs_dirichlet(int nx, int ny, double inv_h2, double factor, const double* u, double* out);
void rhs_periodic(int nx, int ny, double inv_h2, double factor, const double* u, double* out);
// out[i] = base[i] + a·k[i]
void add_scaled(int n, double* out, const double* base, double a, const double* k);
// u[i] += dt/6·(k1[i] + 2k2[i] + 2k3[i] + k4[i])
void rk4_combine(int n, double* u, const double* k1, const double* k2, const double* k3,
                 const double* k4, double dt);
}  // namespace kernel

}  // namespace rblab
