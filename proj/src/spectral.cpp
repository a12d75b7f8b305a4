#include "exf/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "exf/errors.hpp"

namespace exf {

namespace {

// y = (A + I) x. Rows are independent, so the parallel loop is bit-identical
// to the serial one.
void shifted_matvec(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const auto n = static_cast<std::ptrdiff_t>(g.node_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double acc = x[static_cast<std::size_t>(i)];
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) acc += x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
}

double rayleigh_quotient(const Graph& g, const std::vector<double>& x) {
  // Serial on purpose: a parallel reduction would make the last bits depend on
  // the thread count, and the value feeds transmission-rate calibration.
  double num = 0.0, den = 0.0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    double ax = 0.0;
    for (NodeId j : g.neighbors(i)) ax += x[j];
    num += x[i] * ax;
    den += x[i] * x[i];
  }
  return num / den;
}

}  // namespace

Eigenpair leading_eigenpair(const Graph& g, double tol, std::size_t max_iter) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 1.0), y(n);
  double residual = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    shifted_matvec(g, x, y);
    const double peak = *std::max_element(y.begin(), y.end());
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= peak;
      residual = std::max(residual, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (residual < tol) {
      Eigenpair out;
      out.value = rayleigh_quotient(g, x);
      out.vector = std::move(x);
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  throw ConvergenceError(std::move(x), residual, max_iter);
}

}  // namespace exf
