#pragma once

// Chart-level vocabulary: domains, metrics given by closed-form component
// maps, scalar/vector fields, and the error taxonomy shared by the library.
//
// Fields and metric maps take jet-seeded coordinates, so one closed form
// serves for values and for derivatives of every order the engine needs.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rblab/jet.hpp"
#include "rblab/tensor.hpp"

namespace rblab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// point outside the declared chart domain
struct DomainError : Error {
  using Error::Error;
};
// metric not positive definite where evaluated
struct DegeneracyError : Error {
  using Error::Error;
};
// bad construction parameter (e.g. rho out of range, h <= 0)
struct ParameterError : Error {
  using Error::Error;
};
// an operation's mathematical precondition failed (refusals carry the reason)
struct PreconditionError : Error {
  using Error::Error;
};

using Point = std::vector<double>;
using ScalarField = std::function<Jet(const JetPoint&, double)>;
using VectorField = std::function<std::vector<Jet>(const JetPoint&, double)>;
using MetricMap = std::function<Mat<Jet>(const JetPoint&, double)>;

struct DomainBox {
  Point lo, hi;
  std::vector<uint8_t> periodic;  // per axis; periodic axes admit any value mod period

  bool contains(std::span<const double> p) const;
  std::string describe() const;
};

struct ChartMetric {
  std::string name;
  int dim = 0;
  DomainBox domain;
  MetricMap components;
  // true when the chart covers a closed manifold (up to measure zero), so
  // boundary-free integral identities apply
  bool closed_manifold = false;
};

// Uniform sample grid over the declared domain (periodic axes drop the
// duplicate endpoint, others include both ends).  Default verification grids
// are 20 x 20.
std::vector<Point> sample_grid(const DomainBox& box, int per_axis);

}  // namespace rblab
