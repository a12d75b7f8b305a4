#pragma once

#include <cstddef>
#include <vector>

#include "exf/graph.hpp"

namespace exf {

struct Eigenpair {
  std::vector<double> vector;  // max entry scaled to 1
  double value = 0.0;          // Rayleigh quotient of `vector`
  std::size_t iterations = 0;
  double residual = 0.0;       // max-norm change of the final step
};

/**
 * Leading eigenpair of the adjacency matrix by power iteration.
 *
 * Iterates with the shifted operator A + I, which has the same eigenvectors
 * but a strictly dominant top eigenvalue on bipartite graphs (plain A
 * oscillates there: the image is the average of the iterate and A times the
 * iterate, up to scale). Starts from the all-ones vector. Stops when two
 * successive max-normalized iterates differ by less than `tol` in max-norm.
 *
 * The input should be connected; on a disconnected graph the result mixes
 * the components that share the top eigenvalue. Throws ConvergenceError
 * after `max_iter` steps and EmptyGraphError on an edgeless graph.
 */
Eigenpair leading_eigenpair(const Graph& g, double tol = 1e-9, std::size_t max_iter = 10000);

}  // namespace exf
