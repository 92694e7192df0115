// Hot stencil maps for the conformal flow, isolated so the build can apply
// fast-math and native codegen here without touching any code that inspects
// values (CFL guards, blow-up checks, monitors live in rbflow.cpp).

#include <cmath>

#include "rblab/rbflow.hpp"

namespace rblab::kernel {

void rhs_dirichlet(int nx, int ny, double inv_h2, double factor, const double* u, double* out) {
  for (int i = 0; i < nx; ++i) out[i] = 0.0;
  for (int j = 1; j < ny - 1; ++j) {
    const double* row = u + size_t(j) * nx;
    double* o = out + size_t(j) * nx;
    o[0] = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
      double lap = row[i - 1] + row[i + 1] + row[i - nx] + row[i + nx] - 4.0 * row[i];
      o[i] = factor * std::exp(-2.0 * row[i]) * lap * inv_h2;
    }
    o[nx - 1] = 0.0;
  }
  for (int i = 0; i < nx; ++i) out[size_t(ny - 1) * nx + i] = 0.0;
}

void rhs_periodic(int nx, int ny, double inv_h2, double factor, const double* u, double* out) {
  for (int j = 0; j < ny; ++j) {
    const int jm = (j == 0) ? ny - 1 : j - 1;
    const int jp = (j == ny - 1) ? 0 : j + 1;
    const double* row = u + size_t(j) * nx;
    const double* rm = u + size_t(jm) * nx;
    const double* rp = u + size_t(jp) * nx;
    double* o = out + size_t(j) * nx;
    for (int i = 0; i < nx; ++i) {
      const int im = (i == 0) ? nx - 1 : i - 1;
      const int ip = (i == nx - 1) ? 0 : i + 1;
      double lap = row[im] + row[ip] + rm[i] + rp[i] - 4.0 * row[i];
      o[i] = factor * std::exp(-2.0 * row[i]) * lap * inv_h2;
    }
  }
}

void add_scaled(int n, double* out, const double* base, double a, const double* k) {
  for (int i = 0; i < n; ++i) out[i] = base[i] + a * k[i];
}

void rk4_combine(int n, double* u, const double* k1, const double* k2, const double* k3,
                 const double* k4, double dt) {
  const double c = dt / 6.0;
  for (int i = 0; i < n; ++i) u[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace rblab::kernel
