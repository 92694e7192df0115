#include "rblab/catalog.hpp"

#include <cmath>

namespace rblab::catalog {

double sn(double k, double t) {
  if (k < 0) {
    double s = std::sqrt(-k);
    return std::sinh(s * t) / s;
  }
  if (k > 0) {
    double s = std::sqrt(k);
    return std::sin(s * t) / s;
  }
  return t;
}

double cn(double k, double t) {
  if (k < 0) return std::cosh(std::sqrt(-k) * t);
  if (k > 0) return std::cos(std::sqrt(k) * t);
  return 1.0;
}

Jet sn(double k, const Jet& t) {
  if (k < 0) {
    double s = std::sqrt(-k);
    return sinh(s * t) / s;
  }
  if (k > 0) {
    double s = std::sqrt(k);
    return sin(s * t) / s;
  }
  return t;
}

Jet cn(double k, const Jet& t) {
  if (k < 0) return cosh(std::sqrt(-k) * t);
  if (k > 0) return cos(std::sqrt(k) * t);
  return Jet::constant(1.0, t.nvars(), t.order());
}

// ---- cigar family ------------------------------------------------------------

SolitonData cigar_almost_rb(double rho, double t) {
  if (!(rho <= 1.0))
    throw ParameterError("cigar_almost_rb: rho must be <= 1 so that sqrt(1-rho) is real");
  const double s = std::sqrt(1.0 - rho);

  SolitonData d;
  d.name = "cigar_almost_rb";
  d.rho = rho;
  d.time = t;

  d.metric.name = "cigar_almost_rb";
  d.metric.dim = 2;
  d.metric.domain.lo = {-3.0, -3.0};
  d.metric.domain.hi = {3.0, 3.0};
  d.metric.domain.periodic = {0, 0};
  d.metric.components = [rho](const JetPoint& x, double tt) {
    const double A = std::exp(4.0 * (1.0 - rho) * tt);
    Mat<Jet> g;
    g.n = 2;
    Jet w = recip(A + x[0] * x[0] + x[1] * x[1]);
    g(0, 0) = w;
    g(1, 1) = w;
    g(0, 1) = g(1, 0) = Jet::constant(0.0, x[0].nvars(), x[0].order());
    return g;
  };

  d.xi = [s](const JetPoint& x, double) {
    return std::vector<Jet>{-2.0 * s * x[0], -2.0 * s * x[1]};
  };
  d.potential_f = [rho, s](const JetPoint& x, double tt) {
    const double A = std::exp(4.0 * (1.0 - rho) * tt);
    return -s * log(A + x[0] * x[0] + x[1] * x[1]);
  };
  // closed form as printed: λ = 2A(D − √(1−ρ)·D − 2ρ)/D with D = A + x² + y²
  d.lambda_closed = [rho, s](const JetPoint& x, double tt) {
    const double A = std::exp(4.0 * (1.0 - rho) * tt);
    Jet D = A + x[0] * x[0] + x[1] * x[1];
    return 2.0 * A * (D - s * D - 2.0 * rho) / D;
  };
  return d;
}

SolitonData hamilton_cigar() {
  SolitonData d = cigar_almost_rb(0.0, 0.0);
  d.name = "hamilton_cigar";
  d.metric.name = "hamilton_cigar";
  return d;
}

// ---- warped product over an interval -----------------------------------------

SolitonData warped_product_2d(double c, double h0, double h1, double a, double b, double rho) {
  const double t_lo = 0.2, t_hi = 2.0;
  for (int i = 0; i <= 512; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / 512.0;
    double h = h1 * sn(-c, t) + h0 * cn(-c, t);
    if (!(h > 0)) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "warped_product_2d: warping function is not positive at t = %.6g (h = %.6g)",
                    t, h);
      throw DomainError(buf);
    }
  }

  SolitonData d;
  d.name = "warped_product_2d";
  d.rho = rho;

  d.metric.name = "warped_product_2d";
  d.metric.dim = 2;
  d.metric.domain.lo = {t_lo, 0.0};
  d.metric.domain.hi = {t_hi, 2.0 * M_PI};
  d.metric.domain.periodic = {0, 1};
  d.metric.components = [c, h0, h1](const JetPoint& x, double) {
    Mat<Jet> g;
    g.n = 2;
    Jet h = h1 * sn(-c, x[0]) + h0 * cn(-c, x[0]);
    g(0, 0) = Jet::constant(1.0, x[0].nvars(), x[0].order());
    g(1, 1) = h * h;
    g(0, 1) = g(1, 0) = Jet::constant(0.0, x[0].nvars(), x[0].order());
    return g;
  };

  // f = a∫₀ᵗh + b has the antiderivative in closed form; ξ = ∇f = a·h(t)·∂_t
  d.xi = [c, h0, h1, a](const JetPoint& x, double) {
    Jet h = h1 * sn(-c, x[0]) + h0 * cn(-c, x[0]);
    return std::vector<Jet>{a * h, Jet::constant(0.0, x[0].nvars(), x[0].order())};
  };
  d.potential_f = [c, h0, h1, a, b](const JetPoint& x, double) {
    Jet H = (c != 0.0) ? h1 * (cn(-c, x[0]) - 1.0) / c + h0 * sn(-c, x[0])
                       : h1 * x[0] * x[0] * 0.5 + h0 * x[0];
    return a * H + b;
  };
  // h′ = h1·cn_{−c} + c·h0·sn_{−c}
  d.lambda_closed = [c, h0, h1, a, rho](const JetPoint& x, double) {
    Jet hp = h1 * cn(-c, x[0]) + c * h0 * sn(-c, x[0]);
    return a * hp + c * (2.0 * rho - 1.0);
  };
  return d;
}

// ---- round sphere with projected ambient vector ------------------------------

namespace {

// ambient unit-sphere embedding u and its coordinate derivatives, as jets;
// the polar axis is the last ambient coordinate, so Z = e_last gives μ = cos θ
std::vector<Jet> embedding(const JetPoint& x, int n) {
  std::vector<Jet> u(n + 1);
  if (n == 2) {
    u[0] = sin(x[0]) * cos(x[1]);
    u[1] = sin(x[0]) * sin(x[1]);
    u[2] = cos(x[0]);
  } else {
    u[0] = sin(x[0]) * cos(x[1]);
    u[1] = sin(x[0]) * sin(x[1]) * cos(x[2]);
    u[2] = sin(x[0]) * sin(x[1]) * sin(x[2]);
    u[3] = cos(x[0]);
  }
  return u;
}

}  // namespace

SphereConstruction make_sphere_construction(double c, std::vector<double> Z) {
  if (!(c > 0)) throw ParameterError("round sphere: curvature c must be positive");
  if (Z.size() != 3 && Z.size() != 4)
    throw ParameterError("round sphere: ambient vector must have 3 or 4 components");
  double zn = 0;
  for (double z : Z) zn += z * z;
  if (!(zn > 0)) throw ParameterError("round sphere: ambient vector must be nonzero");

  SphereConstruction sc;
  sc.c = c;
  sc.Z = Z;
  sc.n = static_cast<int>(Z.size()) - 1;
  const int n = sc.n;
  const double R2 = 1.0 / c;
  const double sqc = std::sqrt(c);
  const double eps = 1e-3;

  sc.metric.name = "round_sphere";
  sc.metric.dim = n;
  sc.metric.closed_manifold = true;
  if (n == 2) {
    sc.metric.domain.lo = {eps, 0.0};
    sc.metric.domain.hi = {M_PI - eps, 2.0 * M_PI};
    sc.metric.domain.periodic = {0, 1};
  } else {
    sc.metric.domain.lo = {eps, eps, 0.0};
    sc.metric.domain.hi = {M_PI - eps, M_PI - eps, 2.0 * M_PI};
    sc.metric.domain.periodic = {0, 0, 1};
  }
  sc.metric.components = [n, R2](const JetPoint& x, double) {
    Mat<Jet> g;
    g.n = n;
    const int nv = x[0].nvars(), ord = x[0].order();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Jet::constant(0.0, nv, ord);
    Jet st = sin(x[0]);
    g(0, 0) = Jet::constant(R2, nv, ord);
    g(1, 1) = R2 * st * st;
    if (n == 3) {
      Jet sp = sin(x[1]);
      g(2, 2) = R2 * st * st * sp * sp;
    }
    return g;
  };

  sc.mu = [Z, n](const JetPoint& x, double) {
    std::vector<Jet> u = embedding(x, n);
    Jet m = Z[0] * u[0];
    for (int A = 1; A <= n; ++A) m += Z[A] * u[A];
    return m;
  };

  // ξ^a = √c·⟨Z, ∂_a u⟩ / ĝ_aa with ĝ the unit-sphere metric (diagonal)
  sc.xi = [Z, n, sqc](const JetPoint& x, double) {
    std::vector<Jet> v(n);
    Jet st = sin(x[0]), ct = cos(x[0]);
    if (n == 2) {
      Jet sp = sin(x[1]), cp = cos(x[1]);
      v[0] = sqc * (Z[0] * ct * cp + Z[1] * ct * sp - Z[2] * st);
      v[1] = sqc * (-Z[0] * sp + Z[1] * cp) / st;
    } else {
      Jet sp = sin(x[1]), cp = cos(x[1]);
      Jet ss = sin(x[2]), cs = cos(x[2]);
      v[0] = sqc * (Z[0] * ct * cp + (Z[1] * cs + Z[2] * ss) * ct * sp - Z[3] * st);
      v[1] = sqc * (-Z[0] * sp + (Z[1] * cs + Z[2] * ss) * cp) / st;
      v[2] = sqc * (-Z[1] * ss + Z[2] * cs) / (st * sp);
    }
    return v;
  };
  return sc;
}

SolitonData round_sphere_soliton(double c, std::vector<double> Z, double rho) {
  SphereConstruction sc = make_sphere_construction(c, std::move(Z));
  const double sqc = std::sqrt(c);
  const int n = sc.n;

  SolitonData d;
  d.name = "round_sphere_soliton";
  d.rho = rho;
  d.metric = sc.metric;
  d.xi = sc.xi;
  ScalarField mu = sc.mu;
  d.potential_f = [mu, sqc](const JetPoint& x, double t) { return mu(x, t) / sqc; };
  d.lambda_closed = [mu, sqc, c, rho, n](const JetPoint& x, double t) {
    return (n - 1) * (c - rho) - sqc * mu(x, t);
  };
  return d;
}

// ---- flat torus ---------------------------------------------------------------

ChartMetric flat_torus(double Lx, double Ly) {
  if (!(Lx > 0) || !(Ly > 0)) throw ParameterError("flat_torus: periods must be positive");
  ChartMetric m;
  m.name = "flat_torus";
  m.dim = 2;
  m.closed_manifold = true;
  m.domain.lo = {0.0, 0.0};
  m.domain.hi = {Lx, Ly};
  m.domain.periodic = {1, 1};
  m.components = [](const JetPoint& x, double) {
    Mat<Jet> g;
    g.n = 2;
    const int nv = x[0].nvars(), ord = x[0].order();
    g(0, 0) = g(1, 1) = Jet::constant(1.0, nv, ord);
    g(0, 1) = g(1, 0) = Jet::constant(0.0, nv, ord);
    return g;
  };
  return m;
}

}  // namespace rblab::catalog
