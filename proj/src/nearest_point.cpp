#include "nearest_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace fuzzint::detail {
namespace {

class ShiftedVertices {
 public:
  ShiftedVertices(std::span<const double> coords, std::size_t dims, std::span<const double> shift)
      : coords_(coords), dims_(dims), shift_(shift) {}

  std::size_t size() const { return coords_.size() / dims_; }

  void load(std::size_t i, Point& out) const {
    out.resize(dims_);
    for (std::size_t k = 0; k < dims_; ++k) out[k] = coords_[i * dims_ + k] - shift_[k];
  }

  // <x, v_i>; the shift only adds a constant, so it is irrelevant for argmin.
  double raw_dot(std::size_t i, const Point& x) const {
    double s = 0.0;
    const double* v = coords_.data() + i * dims_;
    for (std::size_t k = 0; k < dims_; ++k) s += x[k] * v[k];
    return s;
  }

 private:
  std::span<const double> coords_;
  std::size_t dims_;
  std::span<const double> shift_;
};

// Affine combination of `pts` with smallest norm, by least squares on the
// differences pts[k] - pts[0] (modified Gram-Schmidt). Empty on affine
// dependence.
std::optional<std::vector<double>> affine_minimizer(const std::vector<Point>& pts) {
  const std::size_t m = pts.size();
  const std::size_t dims = pts.front().size();
  if (m == 1) return std::vector<double>{1.0};
  if (m - 1 > dims) return std::nullopt;

  std::vector<Point> q(m - 1, Point(dims));
  std::vector<std::vector<double>> r(m - 1, std::vector<double>(m - 1, 0.0));
  for (std::size_t c = 0; c + 1 < m; ++c) {
    Point col(dims);
    for (std::size_t k = 0; k < dims; ++k) col[k] = pts[c + 1][k] - pts[0][k];
    const double original = norm(col);
    for (std::size_t j = 0; j < c; ++j) {
      const double proj = dot(q[j], col);
      r[j][c] = proj;
      for (std::size_t k = 0; k < dims; ++k) col[k] -= proj * q[j][k];
    }
    const double residual = norm(col);
    if (original == 0.0 || residual <= 1e-10 * original) return std::nullopt;
    r[c][c] = residual;
    for (std::size_t k = 0; k < dims; ++k) q[c][k] = col[k] / residual;
  }

  // Minimize |p0 + D b|: solve R b = -Q^T p0.
  std::vector<double> rhs(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) rhs[j] = -dot(q[j], pts[0]);
  std::vector<double> b(m - 1);
  for (std::size_t jj = m - 1; jj-- > 0;) {
    double s = rhs[jj];
    for (std::size_t c = jj + 1; c + 1 < m; ++c) s -= r[jj][c] * b[c];
    b[jj] = s / r[jj][jj];
  }
  std::vector<double> alpha(m);
  double tail = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    alpha[j + 1] = b[j];
    tail += b[j];
  }
  alpha[0] = 1.0 - tail;
  return alpha;
}

}  // namespace

NearestPoint nearest_point(std::span<const double> coords, std::size_t dims,
                           std::span<const double> shift, double tol, int max_iterations) {
  const ShiftedVertices verts(coords, dims, shift);
  const std::size_t n = verts.size();

  Point w(dims);
  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  double scale2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    verts.load(i, w);
    const double nn = dot(w, w);
    scale2 = std::max(scale2, nn);
    if (nn < best) {
      best = nn;
      start = i;
    }
  }

  std::vector<std::size_t> corral{start};
  std::vector<Point> corral_pts(1);
  verts.load(start, corral_pts[0]);
  std::vector<double> lambda{1.0};
  Point x = corral_pts[0];

  NearestPoint out;
  out.status = SolveStatus::IterationCap;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    const double xx = dot(x, x);
    const double xn = std::sqrt(xx);
    if (xn <= tol) {
      out.status = SolveStatus::Converged;
      out.gap = 0.0;
      break;
    }

    std::size_t j = 0;
    double min_dot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = verts.raw_dot(i, x);
      if (d < min_dot) {
        min_dot = d;
        j = i;
      }
    }
    const double shift_dot = dot(x, shift);
    const double gap = xx - (min_dot - shift_dot);
    out.gap = gap;
    if (gap <= tol * xn) {
      out.status = SolveStatus::Converged;
      break;
    }
    if (gap <= 1e-14 * scale2 ||
        std::find(corral.begin(), corral.end(), j) != corral.end()) {
      out.status = SolveStatus::Stalled;
      break;
    }

    corral.push_back(j);
    corral_pts.emplace_back();
    verts.load(j, corral_pts.back());
    lambda.push_back(0.0);

    bool stalled = false;
    for (;;) {
      auto alpha = affine_minimizer(corral_pts);
      if (!alpha) {
        corral.pop_back();
        corral_pts.pop_back();
        lambda.pop_back();
        stalled = true;
        break;
      }
      if (std::all_of(alpha->begin(), alpha->end(), [](double a) { return a > 0.0; })) {
        lambda = std::move(*alpha);
        break;
      }
      double theta = std::numeric_limits<double>::infinity();
      std::size_t leaving = 0;
      for (std::size_t k = 0; k < alpha->size(); ++k) {
        if ((*alpha)[k] > 0.0) continue;
        const double denom = lambda[k] - (*alpha)[k];
        const double t = denom > 0.0 ? lambda[k] / denom : 0.0;
        if (t < theta) {
          theta = t;
          leaving = k;
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (std::size_t k = 0; k < lambda.size(); ++k) {
        lambda[k] = theta * (*alpha)[k] + (1.0 - theta) * lambda[k];
      }
      lambda[leaving] = 0.0;
      for (std::size_t k = lambda.size(); k-- > 0;) {
        if (lambda[k] <= 1e-15 && lambda.size() > 1) {
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(k));
          corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(k));
          corral_pts.erase(corral_pts.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
    }

    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t k = 0; k < corral.size(); ++k) {
      for (std::size_t c = 0; c < dims; ++c) x[c] += lambda[k] * corral_pts[k][c];
    }
    // Each major step must strictly decrease the norm.
    if (stalled || !(dot(x, x) < xx)) {
      out.status = SolveStatus::Stalled;
      break;
    }
  }

  out.norm = norm(x);
  out.point = std::move(x);
  return out;
}

}  // namespace fuzzint::detail
