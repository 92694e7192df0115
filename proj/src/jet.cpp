#include "rblab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace rblab {
namespace {

constexpr int kMaxVars = Jet::kMaxVars;
constexpr int kMaxOrder = Jet::kMaxOrder;
constexpr int kMaxCoeffs = Jet::kMaxCoeffs;

// Per-(nvars, order) lookup tables: the multi-index list, its inverse, the
// product map alpha_i + alpha_j -> slot, and prefix bounds per degree.
struct JetTable {
  int nvars = 0, order = 0, count = 0;
  uint8_t deg[kMaxCoeffs] = {};
  uint8_t alpha[kMaxCoeffs][kMaxVars] = {};
  int8_t pos[kMaxOrder + 1][kMaxOrder + 1][kMaxOrder + 1];
  int8_t prod[kMaxCoeffs][kMaxCoeffs];
  int degree_end[kMaxOrder + 2] = {};  // slots with deg <= d are [0, degree_end[d+1])

  void build(int n, int k) {
    nvars = n;
    order = k;
    count = 0;
    std::memset(pos, -1, sizeof pos);
    for (int d = 0; d <= k; ++d) {
      // graded ordering: all multi-indices of total degree d, lex by exponents
      int a[kMaxVars] = {0, 0, 0};
      enumerate(n, d, 0, d, a);
      degree_end[d + 1] = count;
    }
    degree_end[0] = 0;
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) {
        if (deg[i] + deg[j] > order) {
          prod[i][j] = -1;
          continue;
        }
        int s[kMaxVars] = {0, 0, 0};
        for (int v = 0; v < n; ++v) s[v] = alpha[i][v] + alpha[j][v];
        prod[i][j] = pos[s[0]][s[1]][s[2]];
      }
  }

  void enumerate(int n, int d, int var, int rem, int* a) {
    if (var == n - 1) {
      a[var] = rem;
      int slot = count++;
      deg[slot] = static_cast<uint8_t>(d);
      for (int v = 0; v < kMaxVars; ++v) alpha[slot][v] = v < n ? static_cast<uint8_t>(a[v]) : 0;
      pos[a[0]][n > 1 ? a[1] : 0][n > 2 ? a[2] : 0] = static_cast<int8_t>(slot);
      a[var] = 0;
      return;
    }
    for (int e = rem; e >= 0; --e) {
      a[var] = e;
      enumerate(n, d, var + 1, rem - e, a);
    }
    a[var] = 0;
  }
};

const JetTable& table(int nvars, int order) {
  static const auto* tables = [] {
    auto* t = new std::array<std::array<JetTable, kMaxOrder + 1>, kMaxVars + 1>();
    for (int n = 1; n <= kMaxVars; ++n)
      for (int k = 0; k <= kMaxOrder; ++k) (*t)[n][k].build(n, k);
    return t;
  }();
  if (nvars < 1 || nvars > kMaxVars || order < 0 || order > kMaxOrder)
    throw std::invalid_argument("jet: unsupported nvars/order");
  return (*tables)[nvars][order];
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("jet: mixed variable counts in binary op");
}

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

Jet Jet::zeros(int nvars, int order) {
  Jet j;
  j.nvars_ = static_cast<int8_t>(nvars);
  j.order_ = static_cast<int8_t>(order);
  const int cnt = table(nvars, order).count;
  std::fill(j.c_.begin(), j.c_.begin() + cnt, 0.0);
  return j;
}

Jet Jet::constant(double v, int nvars, int order) {
  Jet j = zeros(nvars, order);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(double v, int var, int nvars, int order) {
  if (var < 0 || var >= nvars) throw std::invalid_argument("jet: variable index");
  Jet j = zeros(nvars, order);
  j.c_[0] = v;
  if (order >= 1) j.c_[1 + var] = 1.0;  // degree-1 slots follow the constant slot in order
  return j;
}

int Jet::ncoeffs() const { return table(nvars_, order_).count; }

double Jet::deriv1(int i) const {
  if (order_ < 1) throw std::logic_error("jet: order too low for deriv1");
  return c_[1 + i];
}

double Jet::deriv2(int i, int j) const {
  if (order_ < 2) throw std::logic_error("jet: order too low for deriv2");
  const JetTable& T = table(nvars_, order_);
  int a[kMaxVars] = {0, 0, 0};
  ++a[i];
  ++a[j];
  return c_[T.pos[a[0]][a[1]][a[2]]] * (i == j ? 2.0 : 1.0);
}

double Jet::deriv3(int i, int j, int k) const {
  if (order_ < 3) throw std::logic_error("jet: order too low for deriv3");
  const JetTable& T = table(nvars_, order_);
  int a[kMaxVars] = {0, 0, 0};
  ++a[i];
  ++a[j];
  ++a[k];
  double fact = 1.0;
  for (int v = 0; v < nvars_; ++v) fact *= factorial(a[v]);
  return c_[T.pos[a[0]][a[1]][a[2]]] * fact;
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order_) return *this;
  Jet r = zeros(nvars_, new_order);
  const int cnt = table(nvars_, new_order).count;
  std::copy(c_.begin(), c_.begin() + cnt, r.c_.begin());
  return r;
}

Jet Jet::d(int var) const {
  if (order_ < 1) throw std::logic_error("jet: cannot differentiate order-0 jet");
  const JetTable& Tin = table(nvars_, order_);
  const JetTable& Tout = table(nvars_, order_ - 1);
  Jet r = zeros(nvars_, order_ - 1);
  for (int s = 0; s < Tout.count; ++s) {
    int a[kMaxVars] = {Tout.alpha[s][0], Tout.alpha[s][1], Tout.alpha[s][2]};
    ++a[var];
    r.c_[s] = c_[Tin.pos[a[0]][a[1]][a[2]]] * a[var];
  }
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  const int cnt = r.ncoeffs();
  for (int i = 0; i < cnt; ++i) r.c_[i] = -r.c_[i];
  return r;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }

Jet& Jet::operator*=(double s) {
  const int cnt = ncoeffs();
  for (int i = 0; i < cnt; ++i) c_[i] *= s;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int k = std::min(a.order_, b.order_);
  Jet r = Jet::zeros(a.nvars_, k);
  const int cnt = r.ncoeffs();
  for (int i = 0; i < cnt; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int k = std::min(a.order_, b.order_);
  Jet r = Jet::zeros(a.nvars_, k);
  const int cnt = r.ncoeffs();
  for (int i = 0; i < cnt; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int k = std::min(a.order_, b.order_);
  const JetTable& T = table(a.nvars_, k);
  Jet r = Jet::zeros(a.nvars_, k);
  for (int i = 0; i < T.count; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    const int jmax = T.degree_end[T.order - T.deg[i] + 1];
    for (int j = 0; j < jmax; ++j) r.c_[T.prod[i][j]] += ai * b.c_[j];
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet Jet::apply_series(const Jet& u, std::span<const double> a) {
  Jet w = u;
  w.c_[0] = 0.0;  // (u - u0), nilpotent to the truncation order
  Jet r = Jet::constant(a.back(), u.nvars_, u.order_);
  for (int q = static_cast<int>(a.size()) - 2; q >= 0; --q) {
    r = r * w;
    r.c_[0] += a[q];
  }
  return r;
}

Jet recip(const Jet& u) {
  const double u0 = u.value();
  if (u0 == 0.0) throw std::domain_error("jet: reciprocal of zero");
  double a[kMaxOrder + 1];
  double p = 1.0 / u0;
  for (int k = 0; k <= u.order(); ++k) {
    a[k] = p;
    p *= -1.0 / u0;
  }
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet exp(const Jet& u) {
  double a[kMaxOrder + 1];
  const double e0 = std::exp(u.value());
  for (int k = 0; k <= u.order(); ++k) a[k] = e0 / factorial(k);
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet log(const Jet& u) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw std::domain_error("jet: log of nonpositive value");
  double a[kMaxOrder + 1];
  a[0] = std::log(u0);
  double p = 1.0 / u0;  // (-1)^{k+1} / (k u0^k)
  for (int k = 1; k <= u.order(); ++k) {
    a[k] = (k % 2 ? p : -p) / k;
    p /= u0;
  }
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet pow(const Jet& u, double e) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw std::domain_error("jet: pow of nonpositive base");
  double a[kMaxOrder + 1];
  double coef = 1.0, p = std::pow(u0, e);
  for (int k = 0; k <= u.order(); ++k) {
    a[k] = coef * p;
    coef *= (e - k) / (k + 1);
    p /= u0;
  }
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet sqrt(const Jet& u) { return pow(u, 0.5); }

Jet sin(const Jet& u) {
  double a[kMaxOrder + 1];
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cyc[4] = {s, c, -s, -c};
  for (int k = 0; k <= u.order(); ++k) a[k] = cyc[k % 4] / factorial(k);
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet cos(const Jet& u) {
  double a[kMaxOrder + 1];
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cyc[4] = {c, -s, -c, s};
  for (int k = 0; k <= u.order(); ++k) a[k] = cyc[k % 4] / factorial(k);
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet sinh(const Jet& u) {
  double a[kMaxOrder + 1];
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int k = 0; k <= u.order(); ++k) a[k] = (k % 2 ? c : s) / factorial(k);
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

Jet cosh(const Jet& u) {
  double a[kMaxOrder + 1];
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int k = 0; k <= u.order(); ++k) a[k] = (k % 2 ? s : c) / factorial(k);
  return Jet::apply_series(u, {a, static_cast<size_t>(u.order() + 1)});
}

JetPoint seed_point(std::span<const double> p, int order) {
  JetPoint jp;
  jp.reserve(p.size());
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) jp.push_back(Jet::variable(p[i], i, n, order));
  return jp;
}

}  // namespace rblab
