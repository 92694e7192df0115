#include "rblab/rbflow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rblab/util.hpp"

namespace rblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_state(const FlowState& s) {
  if (s.nx < 3 || s.ny < 3) throw ParameterError("flow state needs at least 3 nodes per axis");
  if (!(s.h > 0)) throw ParameterError("flow state needs positive spacing");
  if (s.u.size() != size_t(s.nx) * s.ny)
    throw ParameterError("flow state sample count does not match its grid");
  if (s.rho > 0.5)
    throw ParameterError("rho > 1/2 makes the flow backward-parabolic; refusing");
  if (s.boundary == FlowBoundary::dirichlet_from_exact && !s.reference)
    throw ParameterError("dirichlet flow state carries no reference profile");
}

// Pin the boundary ring of sample buffer u (laid out like s.u) to the
// reference at time t (Dirichlet runs only).
void set_ring(const FlowState& s, double* u, double t) {
  if (s.boundary != FlowBoundary::dirichlet_from_exact) return;
  for (int i = 0; i < s.nx; ++i) {
    const double x = s.x0 + i * s.h;
    u[i] = s.reference(x, s.y0, t);
    u[size_t(s.ny - 1) * s.nx + i] = s.reference(x, s.y0 + (s.ny - 1) * s.h, t);
  }
  for (int j = 0; j < s.ny; ++j) {
    const double y = s.y0 + j * s.h;
    u[size_t(j) * s.nx] = s.reference(s.x0, y, t);
    u[size_t(j) * s.nx + s.nx - 1] = s.reference(s.x0 + (s.nx - 1) * s.h, y, t);
  }
}

void eval_rhs(const FlowState& s, const double* u, double* out) {
  const double factor = 1.0 - 2.0 * s.rho;
  const double inv_h2 = 1.0 / (s.h * s.h);
  if (s.boundary == FlowBoundary::periodic)
    kernel::rhs_periodic(s.nx, s.ny, inv_h2, factor, u, out);
  else
    kernel::rhs_dirichlet(s.nx, s.ny, inv_h2, factor, u, out);
}

}  // namespace

double exact_cigar_u(double t, double x, double y) {
  return -0.5 * std::log(std::exp(4.0 * t) + x * x + y * y);
}

FlowState cigar_state(double rho, double h, double half_width) {
  if (rho > 0.5) throw ParameterError("cigar_state: rho > 1/2 is backward-parabolic");
  if (!(h > 0) || !(half_width > 0)) throw ParameterError("cigar_state: needs h > 0, width > 0");
  const int n = static_cast<int>(std::lround(2.0 * half_width / h)) + 1;
  if (n < 5) throw ParameterError("cigar_state: grid too coarse for a Dirichlet ring");
  if (n > 8193) throw ParameterError("cigar_state: grid beyond desk scale");
  FlowState s;
  s.nx = s.ny = n;
  s.h = h;
  s.x0 = s.y0 = -half_width;
  s.rho = rho;
  s.boundary = FlowBoundary::dirichlet_from_exact;
  // Exact solution for ρ = 0; otherwise no closed solution exists, so the
  // Dirichlet data is the initial profile frozen in time.
  if (rho == 0.0)
    s.reference = [](double x, double y, double t) { return exact_cigar_u(t, x, y); };
  else
    s.reference = [](double x, double y, double /*t*/) { return exact_cigar_u(0.0, x, y); };
  s.u.resize(size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      s.at(i, j) = exact_cigar_u(0.0, s.x0 + i * h, s.y0 + j * h);
  return s;
}

FlowState perturbed_torus_state(int n, double amplitude, double rho) {
  if (n < 8) throw ParameterError("perturbed_torus_state: need at least 8 nodes per axis");
  if (rho > 0.5) throw ParameterError("perturbed_torus_state: rho > 1/2 is backward-parabolic");
  FlowState s;
  s.nx = s.ny = n;
  s.h = 2.0 * kPi / n;
  s.rho = rho;
  s.boundary = FlowBoundary::periodic;
  s.u.resize(size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s.at(i, j) = amplitude * std::sin(i * s.h) * std::sin(j * s.h);
  return s;
}

FlowState flat_torus_state(int n, double rho) { return perturbed_torus_state(n, 0.0, rho); }

std::vector<double> rhs(const FlowState& s) {
  check_state(s);
  std::vector<double> out(s.u.size());
  if (s.rho == 0.5) return out;  // (1−2ρ) = 0: identically zero field
  eval_rhs(s, s.u.data(), out.data());
  return out;
}

double cfl_bound(const FlowState& s) {
  const double factor = 1.0 - 2.0 * s.rho;
  if (factor <= 0.0) return std::numeric_limits<double>::infinity();
  const double umin = *std::min_element(s.u.begin(), s.u.end());
  return s.h * s.h / (4.0 * factor * std::exp(-2.0 * umin));
}

FlowState step(const FlowState& s, double dt) {
  check_state(s);
  if (!(dt > 0) || !std::isfinite(dt)) throw ParameterError("step: dt must be positive");
  FlowState out = s;
  out.time = s.time + dt;
  if (s.rho == 0.5) return out;  // rhs ≡ 0: u is bitwise unchanged

  const double bound = cfl_bound(s);
  if (dt > bound * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "step: dt %.6g exceeds the CFL bound %.6g = h^2/(4(1-2rho)max e^(-2u))", dt,
                  bound);
    throw ParameterError(buf);
  }

  const int n = static_cast<int>(s.u.size());
  // Reused scratch: time stepping hits this thousands of times per run, and
  // fresh half-megabyte vectors each step would thrash mmap.
  static thread_local std::vector<double> k1, k2, k3, k4, us;
  k1.resize(s.u.size());
  k2.resize(s.u.size());
  k3.resize(s.u.size());
  k4.resize(s.u.size());
  us.resize(s.u.size());

  eval_rhs(s, s.u.data(), k1.data());
  kernel::add_scaled(n, us.data(), s.u.data(), 0.5 * dt, k1.data());
  set_ring(s, us.data(), s.time + 0.5 * dt);
  eval_rhs(s, us.data(), k2.data());
  kernel::add_scaled(n, us.data(), s.u.data(), 0.5 * dt, k2.data());
  set_ring(s, us.data(), s.time + 0.5 * dt);
  eval_rhs(s, us.data(), k3.data());
  kernel::add_scaled(n, us.data(), s.u.data(), dt, k3.data());
  set_ring(s, us.data(), s.time + dt);
  eval_rhs(s, us.data(), k4.data());

  kernel::rk4_combine(n, out.u.data(), k1.data(), k2.data(), k3.data(), k4.data(), dt);
  set_ring(out, out.u.data(), out.time);
  return out;
}

double max_abs_scalar_curvature(const FlowState& s) {
  // S = −2e^{−2u}Δ₀u; on Dirichlet runs the ring has no stencil and reports 0.
  static thread_local std::vector<double> Sv;
  Sv.resize(s.u.size());
  const double inv_h2 = 1.0 / (s.h * s.h);
  if (s.boundary == FlowBoundary::periodic)
    kernel::rhs_periodic(s.nx, s.ny, inv_h2, -2.0, s.u.data(), Sv.data());
  else
    kernel::rhs_dirichlet(s.nx, s.ny, inv_h2, -2.0, s.u.data(), Sv.data());
  double m = 0;
  for (double v : Sv) m = std::max(m, std::fabs(v));
  return m;
}

double flow_area(const FlowState& s) {
  std::vector<double> cells(s.u.size());
  const double h2 = s.h * s.h;
  for (size_t i = 0; i < s.u.size(); ++i) cells[i] = std::exp(2.0 * s.u[i]) * h2;
  return pairwise_sum(cells);
}

double sup_reference_error(const FlowState& s) {
  if (!s.reference) return std::numeric_limits<double>::quiet_NaN();
  const double Lx = (s.nx - 1) * s.h, Ly = (s.ny - 1) * s.h;
  const double xlo = s.x0 + 0.1 * Lx, xhi = s.x0 + 0.9 * Lx;
  const double ylo = s.y0 + 0.1 * Ly, yhi = s.y0 + 0.9 * Ly;
  double worst = 0;
  for (int j = 0; j < s.ny; ++j) {
    const double y = s.y0 + j * s.h;
    if (y < ylo || y > yhi) continue;
    for (int i = 0; i < s.nx; ++i) {
      const double x = s.x0 + i * s.h;
      if (x < xlo || x > xhi) continue;
      worst = std::max(worst, std::fabs(s.at(i, j) - s.reference(x, y, s.time)));
    }
  }
  return worst;
}

namespace {

FlowSample sample_of(const FlowState& s) {
  return {s.time, max_abs_scalar_curvature(s), flow_area(s), sup_reference_error(s)};
}

// nullptr when all samples are finite, else a short description.
const char* blow_up_check(const FlowState& s) {
  for (double v : s.u) {
    if (!std::isfinite(v)) return "non-finite conformal factor";
    if (std::fabs(v) > 50.0) return "|u| exceeded 50 (conformal factor beyond e^100)";
  }
  return nullptr;
}

}  // namespace

FlowResult run(FlowState s, double T, double dt, int sample_every) {
  check_state(s);
  if (!(T >= s.time) || !std::isfinite(T)) throw ParameterError("run: need finite T >= state time");
  if (sample_every < 1) throw ParameterError("run: sample_every must be >= 1");

  FlowResult res;
  res.trajectory.push_back(sample_of(s));
  const double eps = 1e-12 * (1.0 + std::fabs(T));
  long step_count = 0;
  while (T - s.time > eps) {
    double dt_step = dt > 0 ? dt : 0.8 * cfl_bound(s);
    dt_step = std::min(dt_step, T - s.time);
    s = step(s, dt_step);
    ++step_count;
    if (const char* why = blow_up_check(s)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s at t = %.6g (step %ld)", why, s.time, step_count);
      res.blew_up = true;
      res.blow_up_reason = buf;
      return res;
    }
    const bool done = T - s.time <= eps;
    if (done || step_count % sample_every == 0) res.trajectory.push_back(sample_of(s));
  }
  return res;
}

double flow_residual_of_example1(double rho, double t) {
  if (rho > 1.0) throw ParameterError("flow_residual_of_example1: family needs rho <= 1");
  const double A = std::exp(4.0 * (1.0 - rho) * t);
  const int m = 81;  // fixed sample grid on [−4,4]²
  double worst = 0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double x = -4.0 + 8.0 * i / (m - 1);
      const double y = -4.0 + 8.0 * j / (m - 1);
      const double D = A + x * x + y * y;
      const double dudt = -2.0 * (1.0 - rho) * A / D;     // ∂/∂t of −½log(A+r²)
      const double lap0 = -2.0 * A / (D * D);             // Δ₀u analytic
      const double rhs_val = (1.0 - 2.0 * rho) * D * lap0;  // e^{−2u} = D
      worst = std::max(worst, std::fabs(dudt - rhs_val));
    }
  return worst;
}

std::string trajectory_csv(const FlowResult& r) {
  std::string out = "time,max_abs_S,area,sup_err\n";
  char buf[160];
  for (const FlowSample& s : r.trajectory) {
    if (std::isnan(s.sup_err))
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,\n", s.time, s.max_abs_S, s.area);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.time, s.max_abs_S, s.area,
                    s.sup_err);
    out += buf;
  }
  return out;
}

}  // namespace rblab
