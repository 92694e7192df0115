#include "rblab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rblab/catalog.hpp"
#include "rblab/util.hpp"

namespace rblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Midpoint-in-θ band weight factors: the first three bands at each pole carry
// corrections that cancel the h²/24·[F′(π)−F′(0)] Euler–Maclaurin defect of
// the midpoint rule, using the one-sided slope stencil (15/4, −5/6, 3/20)/h
// and the fact that the area element vanishes at the poles.
double band_factor(int i, int m) {
  int k = std::min(i, m - 1 - i);
  if (k == 0) return 1.0 - 5.0 / 32.0;
  if (k == 1) return 1.0 + 5.0 / 144.0;
  if (k == 2) return 1.0 - 1.0 / 160.0;
  return 1.0;
}

double sqrt_det_at(const ChartMetric& m, const Point& p, double t) {
  GeometryEval E(m, p, t, 0);
  return std::sqrt(E.det().value());
}

// Run fn over every node, capturing the first per-node exception.
template <class F>
void over_nodes(const QuadratureGrid& grid, F&& fn) {
  const int N = static_cast<int>(grid.nodes.size());
  std::vector<std::exception_ptr> errs(N);
  parallel_for(N, [&](int i) {
    try {
      fn(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (int i = 0; i < N; ++i)
    if (errs[i]) std::rethrow_exception(errs[i]);
}

// Σ w·v with the fixed pairwise association.
double weighted_sum(std::span<const double> w, std::span<const double> v) {
  std::vector<double> prod(v.size());
  for (size_t i = 0; i < v.size(); ++i) prod[i] = w[i] * v[i];
  return pairwise_sum(prod);
}

double weighted_abs_sum(std::span<const double> w, std::span<const double> v) {
  std::vector<double> prod(v.size());
  for (size_t i = 0; i < v.size(); ++i) prod[i] = w[i] * std::fabs(v[i]);
  return pairwise_sum(prod);
}

// (£_ξ g)_ij as jets one order below the metric jets of E.
Mat<Jet> lie_jets(GeometryEval& E, const VectorField& xi) {
  const int n = E.dim();
  std::vector<Jet> v = xi(E.coords(), E.time());
  if (static_cast<int>(v.size()) != n)
    throw ParameterError(E.chart().name + ": vector field has wrong number of components");
  const Mat<Jet>& g = E.g();
  Mat<Jet> L;
  L.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet s = Jet::constant(0.0, n, E.order() - 1);
      for (int k = 0; k < n; ++k)
        s += v[k] * g(i, j).d(k) + g(k, j) * v[k].d(i) + g(i, k) * v[k].d(j);
      L(i, j) = s;
      L(j, i) = s;
    }
  return L;
}

// Trace-derived λ as a jet of order E.order()−2, reusing precomputed £_ξg.
Jet trace_lambda(GeometryEval& E, const Mat<Jet>& L, double rho) {
  const int n = E.dim();
  const Mat<Jet>& ric = E.ricci();
  Jet tr = Jet::constant(0.0, n, E.order() - 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tr += E.ginv()(a, b) * (ric(a, b) + 0.5 * L(a, b));
  return tr / double(n) - rho * E.scalar();
}

// ‖Ric + ½£_ξg − (λ+ρS)g‖_g at one node — the premise every integral
// identity rests on.
double premise_residual(GeometryEval& E, const Mat<Jet>& L, double lam, double rho) {
  const int n = E.dim();
  const Mat<Jet>& ric = E.ricci();
  Matd g = E.g_val(), gi = E.ginv_val();
  const double S = E.scalar_val();
  Matd T;
  T.n = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      T(a, b) = ric(a, b).value() + 0.5 * L(a, b).value() - (lam + rho * S) * g(a, b);
  return std::sqrt(norm2_cov2(gi, T));
}

// (∇λ)^a and pointwise pieces shared by several lemmas.
Vecd raise_d1(const Matd& gi, const Jet& f) {
  Vecd v;
  v.n = gi.n;
  for (int a = 0; a < gi.n; ++a) {
    double s = 0;
    for (int b = 0; b < gi.n; ++b) s += gi(a, b) * f.deriv1(b);
    v[a] = s;
  }
  return v;
}

double ric_pair(const Mat<Jet>& ric, const Vecd& u, const Vecd& v) {
  double s = 0;
  for (int a = 0; a < ric.n; ++a)
    for (int b = 0; b < ric.n; ++b) s += ric(a, b).value() * u[a] * v[b];
  return s;
}

Matd hessian_from(GeometryEval& E, const Jet& f) {
  const int n = E.dim();
  const Ten3<Jet>& G = E.gamma();
  Matd H;
  H.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double h = f.deriv2(i, j);
      for (int c = 0; c < n; ++c) h -= G(c, i, j).value() * f.deriv1(c);
      H(i, j) = h;
    }
  return H;
}

double trace_with(const Matd& gi, const Matd& T) {
  double s = 0;
  for (int a = 0; a < gi.n; ++a)
    for (int b = 0; b < gi.n; ++b) s += gi(a, b) * T(a, b);
  return s;
}

}  // namespace

QuadratureGrid sphere_grid(double c, int n_theta, int n_phi) {
  if (!(c > 0)) throw ParameterError("sphere_grid: curvature c must be positive");
  if (n_theta < 8 || n_phi < 8)
    throw ParameterError("sphere_grid: resolution must be at least 8 per axis");
  catalog::SphereConstruction sc = catalog::make_sphere_construction(c, {0.0, 0.0, 1.0});
  QuadratureGrid grid;
  grid.chart = sc.metric;

  const double dth = kPi / n_theta;
  const double dph = 2.0 * kPi / n_phi;
  if (0.5 * dth < grid.chart.domain.lo[0])
    throw ParameterError("sphere_grid: n_theta too fine for the chart's polar margin");

  char buf[48];
  std::snprintf(buf, sizeof buf, "%dx%d", n_theta, n_phi);
  grid.resolution = buf;

  grid.nodes.reserve(size_t(n_theta) * n_phi);
  grid.coord_weights.reserve(size_t(n_theta) * n_phi);
  grid.weights.reserve(size_t(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double th = (i + 0.5) * dth;
    const double cw = band_factor(i, n_theta) * dth * dph;
    const double sd = sqrt_det_at(grid.chart, {th, 0.0}, 0.0);  // ϕ-independent
    for (int j = 0; j < n_phi; ++j) {
      grid.nodes.push_back({th, j * dph});
      grid.coord_weights.push_back(cw);
      grid.weights.push_back(cw * sd);
    }
  }
  return grid;
}

QuadratureGrid torus_grid(double Lx, double Ly, int nx, int ny) {
  if (!(Lx > 0) || !(Ly > 0)) throw ParameterError("torus_grid: periods must be positive");
  if (nx < 8 || ny < 8) throw ParameterError("torus_grid: resolution must be at least 8 per axis");
  QuadratureGrid grid;
  grid.chart = catalog::flat_torus(Lx, Ly);

  char buf[48];
  std::snprintf(buf, sizeof buf, "%dx%d", nx, ny);
  grid.resolution = buf;

  const double hx = Lx / nx, hy = Ly / ny;
  grid.nodes.reserve(size_t(nx) * ny);
  grid.coord_weights.assign(size_t(nx) * ny, hx * hy);
  grid.weights.reserve(size_t(nx) * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Point p = {i * hx, j * hy};
      grid.nodes.push_back(p);
      grid.weights.push_back(hx * hy * sqrt_det_at(grid.chart, p, 0.0));
    }
  return grid;
}

double integrate(const QuadratureGrid& grid, const ScalarField& f, double t) {
  std::vector<double> vals(grid.nodes.size());
  over_nodes(grid, [&](int i) { vals[i] = f(seed_point(grid.nodes[i], 0), t).value(); });
  return weighted_sum(grid.weights, vals);
}

double yano_residual(const QuadratureGrid& grid, const ChartMetric& m, const VectorField& xi,
                     double t, double* term_l1) {
  const int N = static_cast<int>(grid.nodes.size());
  std::vector<double> w(N), vals(N);
  over_nodes(grid, [&](int i) {
    GeometryEval E(m, grid.nodes[i], t, 2);
    const int n = E.dim();
    std::vector<Jet> v = xi(E.coords(), t);
    Mat<Jet> L = lie_jets(E, xi);
    const Ten3<Jet>& G = E.gamma();
    Matd g = E.g_val(), gi = E.ginv_val();

    Matd Lv, Dxi;
    Lv.n = Dxi.n = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Lv(a, b) = L(a, b).value();
        double cov = v[a].deriv1(b);  // (∇_b ξ)^a
        for (int e = 0; e < n; ++e) cov += G(a, b, e).value() * v[e].value();
        Dxi(a, b) = cov;
      }
    double ric_xx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) ric_xx += E.ricci()(a, b).value() * v[a].value() * v[b].value();
    double grad2 = 0;  // Σ_i g(∇_{e_i}ξ, ∇_{e_i}ξ) = g_ab g^{cd} (∇_cξ)^a (∇_dξ)^b
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int dd = 0; dd < n; ++dd)
            grad2 += g(a, b) * gi(cc, dd) * Dxi(a, cc) * Dxi(b, dd);
    double divxi = 0;
    for (int a = 0; a < n; ++a) divxi += Dxi(a, a);

    vals[i] = ric_xx + 0.5 * norm2_cov2(gi, Lv) - grad2 - divxi * divxi;
    w[i] = grid.coord_weights[i] * std::sqrt(E.det().value());
  });
  if (term_l1) *term_l1 = weighted_abs_sum(w, vals);
  return std::fabs(weighted_sum(w, vals));
}

double bochner_residual(const QuadratureGrid& grid, const ChartMetric& m, const ScalarField& lam,
                        double t, double* term_l1) {
  const int N = static_cast<int>(grid.nodes.size());
  std::vector<double> w(N), vals(N);
  over_nodes(grid, [&](int i) {
    GeometryEval E(m, grid.nodes[i], t, 2);
    Jet f = lam(E.coords(), t);
    Matd gi = E.ginv_val();
    Vecd grad = raise_d1(gi, f);
    Matd H = hessian_from(E, f);
    double lap = trace_with(gi, H);
    vals[i] = ric_pair(E.ricci(), grad, grad) + norm2_cov2(gi, H) - lap * lap;
    w[i] = grid.coord_weights[i] * std::sqrt(E.det().value());
  });
  if (term_l1) *term_l1 = weighted_abs_sum(w, vals);
  return std::fabs(weighted_sum(w, vals));
}

double bianchi_sweep(const QuadratureGrid& grid, const ChartMetric& m, double t) {
  const int N = static_cast<int>(grid.nodes.size());
  std::vector<double> vals(N);
  over_nodes(grid, [&](int i) {
    GeometryEval E(m, grid.nodes[i], t, 3);
    const int n = E.dim();
    Vecd gradS = E.grad_scalar_curv();
    Ten3d nq = E.nabla_q();
    Matd g = E.g_val(), gi = E.ginv_val();
    Vecd r;
    r.n = n;
    for (int a = 0; a < n; ++a) {
      double div_q = 0;  // Σ_i (∇Q)(e_i,e_i)^a = g^{cb} (∇_c Q)^a_b
      for (int cc = 0; cc < n; ++cc)
        for (int b = 0; b < n; ++b) div_q += gi(cc, b) * nq(a, b, cc);
      r[a] = 0.5 * gradS[a] - div_q;
    }
    vals[i] = vec_norm(g, r);
  });
  return *std::max_element(vals.begin(), vals.end());
}

double lemma_base_tolerance(const QuadratureGrid& grid) {
  return grid.chart.name == "flat_torus" ? 1e-8 : 1e-4;
}

LemmaResult lemma_residual(const std::string& id, const SolitonData& d,
                           const QuadratureGrid& grid) {
  const bool known = id == "L2.1" || id == "L2.2" || id == "L2.3a" || id == "L2.3b" ||
                     id == "L2.4" || id == "L2.5";
  if (!known) throw ParameterError("lemma_residual: unknown identity id '" + id + "'");
  if (!d.metric.closed_manifold)
    throw PreconditionError(id + ": integral identity needs a closed manifold, but '" +
                            d.metric.name + "' is not one");
  if (d.metric.dim != grid.chart.dim)
    throw ParameterError(id + ": grid dimension does not match the soliton chart");
  const int n = d.metric.dim;
  const double rho = d.rho;
  const double t = d.time;

  const bool gradient_lemma = id == "L2.3a" || id == "L2.3b";
  if (gradient_lemma && !d.has_potential())
    throw PreconditionError(id + ": needs a gradient soliton (ξ = ∇f), and '" + d.name +
                            "' carries no potential");
  const double denom = 1.0 - 2.0 * rho * (n - 1);
  if (id == "L2.3a" && std::fabs(denom) < 1e-12)
    throw PreconditionError("L2.3a: excluded coupling rho = 1/(2(n-1))");

  // Geometry order: L2.4 differentiates the trace-λ field twice (metric jets
  // two orders above λ), everything else needs at most ∇S.
  const int K = (id == "L2.1") ? 2 : (id == "L2.4") ? 4 : 3;

  const int N = static_cast<int>(grid.nodes.size());
  std::vector<double> w(N), premise(N);
  std::vector<double> t1(N, 0.0), t2(N, 0.0), t3(N, 0.0), rv(N, 0.0);

  over_nodes(grid, [&](int i) {
    const Point& p = grid.nodes[i];
    GeometryEval E(d.metric, p, t, K);
    Mat<Jet> L = lie_jets(E, d.xi);
    Jet lam_tr = trace_lambda(E, L, rho);  // order K−2
    Jet lam = d.has_closed_lambda() ? d.lambda_closed(E.coords(), t) : lam_tr;
    const double S = E.scalar_val();
    Matd g = E.g_val(), gi = E.ginv_val();

    premise[i] = premise_residual(E, L, lam.value(), rho);
    w[i] = grid.coord_weights[i] * std::sqrt(E.det().value());

    if (id == "L2.1") {
      Matd Q;
      Q.n = n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Q(a, b) = E.q()(a, b).value();
      const double ls = lam.value() + rho * S;
      t1[i] = ls * S;
      t2[i] = -norm2_op11(g, gi, Q);
      t3[i] = -0.5 * S * (n * ls - S);
    } else if (id == "L2.2") {
      Matd T;
      T.n = n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) T(a, b) = E.ricci()(a, b).value() - (S / n) * g(a, b);
      t1[i] = norm2_cov2(gi, T);
      double ds_xi = 0;  // g(∇S, ξ) = dS(ξ)
      std::vector<Jet> v = d.xi(E.coords(), t);
      for (int b = 0; b < n; ++b) ds_xi += E.scalar().deriv1(b) * v[b].value();
      rv[i] = (n - 2) / (2.0 * n) * ds_xi;
    } else if (id == "L2.3a" || id == "L2.3b") {
      Jet f = d.potential_f(E.coords(), t);
      Matd H = hessian_from(E, f);
      const double lap = trace_with(gi, H);
      Matd T;
      T.n = n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) T(a, b) = H(a, b) - (lap / n) * g(a, b);
      t1[i] = norm2_cov2(gi, T);
      Vecd gradf = raise_d1(gi, f);
      if (id == "L2.3a") {
        double dlam_f = 0;  // g(∇λ, ∇f) with the trace-derived λ
        for (int b = 0; b < n; ++b) dlam_f += lam_tr.deriv1(b) * gradf[b];
        rv[i] = (n - 2) / (4.0 * n * denom) * (ric_pair(E.ricci(), gradf, gradf) +
                                               (n - 1) * dlam_f);
      } else {
        double ds_f = 0;
        for (int b = 0; b < n; ++b) ds_f += E.scalar().deriv1(b) * gradf[b];
        rv[i] = (n - 2) / (2.0 * n) * ds_f;
      }
    } else if (id == "L2.4") {
      std::vector<Jet> v = d.xi(E.coords(), t);
      Vecd xiv;
      xiv.n = n;
      for (int a = 0; a < n; ++a) xiv[a] = v[a].value();
      Vecd grad_lam = raise_d1(gi, lam_tr);
      double norm2_grad = 0;
      for (int b = 0; b < n; ++b) norm2_grad += grad_lam[b] * lam_tr.deriv1(b);
      Matd Hlam;  // Hessian of the trace-derived λ (order-2 jet)
      Hlam.n = n;
      {
        const Ten3<Jet>& G = E.gamma();
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            double h = lam_tr.deriv2(a, b);
            for (int c = 0; c < n; ++c) h -= G(c, a, b).value() * lam_tr.deriv1(c);
            Hlam(a, b) = h;
          }
      }
      const double lap_lam = trace_with(gi, Hlam);
      t1[i] = ric_pair(E.ricci(), grad_lam, xiv);
      t2[i] = (n - 1) * norm2_grad;
      t3[i] = (0.5 - (n - 1) * rho) * S * lap_lam;
    } else {  // L2.5
      std::vector<Jet> v = d.xi(E.coords(), t);
      Vecd xiv;
      xiv.n = n;
      for (int a = 0; a < n; ++a) xiv[a] = v[a].value();
      t1[i] = ric_pair(E.ricci(), xiv, xiv);
      Mat<Jet> phi = phi_field(d)(seed_point(p, 0), t);
      Matd phiv;
      phiv.n = n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) phiv(a, b) = phi(a, b).value();
      t2[i] = -norm2_op11(g, gi, phiv);
      Jet h = (n - 1) * (lam.truncated(1) + rho * E.scalar().truncated(1)) -
              0.5 * E.scalar().truncated(1);
      double xi_h = 0;
      for (int b = 0; b < n; ++b) xi_h += xiv[b] * h.deriv1(b);
      t3[i] = xi_h;
    }
  });

  double worst = *std::max_element(premise.begin(), premise.end());
  if (!(worst < 1e-6)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%s: identity premises fail on '%s': soliton residual %.6g over this grid "
                  "(needs < 1e-6)",
                  id.c_str(), d.name.c_str(), worst);
    throw PreconditionError(buf);
  }

  LemmaResult r;
  r.id = id;
  std::vector<double> lhs_vals(N);
  for (int i = 0; i < N; ++i) lhs_vals[i] = t1[i] + t2[i] + t3[i];
  r.lhs = weighted_sum(w, lhs_vals);
  r.rhs = weighted_sum(w, rv);
  r.residual = std::fabs(r.lhs - r.rhs);
  r.term_l1 = std::max({weighted_abs_sum(w, t1), weighted_abs_sum(w, t2),
                        weighted_abs_sum(w, t3), weighted_abs_sum(w, rv)});
  r.tolerance = lemma_base_tolerance(grid) * (1.0 + r.term_l1);
  r.pass = r.residual <= r.tolerance;
  r.grid_desc = grid.resolution + " " + grid.chart.name;
  return r;
}

std::string lemma_csv_header() { return "id,lhs,rhs,residual,grid,tolerance,pass"; }

std::string to_csv_row(const LemmaResult& r) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%s,%.17g,%s", r.id.c_str(), r.lhs, r.rhs,
                r.residual, r.grid_desc.c_str(), r.tolerance, r.pass ? "pass" : "fail");
  return buf;
}

}  // namespace rblab
