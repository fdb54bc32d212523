#pragma once

#include <cstddef>
#include <span>

#include "fuzzint/direction.hpp"

namespace fuzzint::detail {

enum class SolveStatus { Converged, Stalled, IterationCap };

struct NearestPoint {
  Point point;  // relative to the shift, i.e. a point of conv{v_i} - shift
  double norm = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::Converged;
  int iterations = 0;
};

// Minimum-norm point of conv{v_i - shift} for row-major vertices `coords`.
//
// Wolfe's corral method: a conditional-gradient outer loop that adds the
// vertex minimizing <x, v>, with an affine-minimization inner loop over the
// current corral in place of a line search. Stops when |x| <= tol or the
// duality gap certifies |x| - min norm <= tol. Stalled means rounding
// prevented further progress; the returned point is still feasible.
NearestPoint nearest_point(std::span<const double> coords, std::size_t dims,
                           std::span<const double> shift, double tol, int max_iterations);

}  // namespace fuzzint::detail
