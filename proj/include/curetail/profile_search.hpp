#pragma once

// One-dimensional minimisation of a profiled loss on a half-open interval
// (lo, hi]: dense grid scan, golden-section refinement of the bracket around
// the best grid point, then a bisection polish on the analytic derivative.
//
// The grid scan is the hot loop. scan_parallel and scan_serial write the same
// per-point values (every evaluation is independent), so switching between
// them never changes a fit.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <omp.h>

namespace curetail {

struct SearchOptions {
  int grid_resolution = 400;
  double tolerance = 1e-12;  // final bracket width in x
  bool parallel = true;
};

struct ProfileMinimum {
  double x = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::infinity();
  std::size_t grid_index = 0;
};

// lo + (hi - lo) * i / resolution for i = 1..resolution; lo itself is excluded.
inline std::vector<double> open_grid(double lo, double hi, int resolution) {
  std::vector<double> grid(static_cast<std::size_t>(resolution));
  for (int i = 1; i <= resolution; ++i) {
    grid[static_cast<std::size_t>(i - 1)] =
        i == resolution ? hi : lo + (hi - lo) * static_cast<double>(i) / resolution;
  }
  return grid;
}

template <class F>
void scan_serial(std::span<const double> grid, std::span<double> out, const F& f) {
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
}

template <class F>
void scan_parallel(std::span<const double> grid, std::span<double> out, const F& f) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  // nested inside a replication-level team this runs on the calling thread
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(grid[i]);
}

namespace detail {

inline bool better(double candidate, double incumbent) {
  return std::isfinite(candidate) && !(candidate >= incumbent);
}

}  // namespace detail

// f: x -> profiled loss (+inf where undefined); df: x -> d/dx of the profiled loss.
// Among equal grid values the smallest x wins.
template <class F, class D>
ProfileMinimum minimize_profile(const F& f, const D& df, double lo, double hi,
                                const SearchOptions& options) {
  const std::vector<double> grid = open_grid(lo, hi, options.grid_resolution);
  std::vector<double> values(grid.size());
  if (options.parallel) {
    scan_parallel(grid, values, f);
  } else {
    scan_serial(grid, values, f);
  }

  ProfileMinimum best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isfinite(values[i]) && values[i] < best.value) {
      best = {grid[i], values[i], i};
    }
  }
  if (!std::isfinite(best.value)) return best;

  const std::size_t g = best.grid_index;
  double a = g == 0 ? lo : grid[g - 1];
  double b = g + 1 == grid.size() ? hi : grid[g + 1];
  const double bracket_lo = a;
  const double bracket_hi = b;

  // golden section; only interior points are ever evaluated
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  double golden_x = best.x;
  double golden_value = best.value;
  for (int iter = 0; iter < 200 && (b - a) > options.tolerance; ++iter) {
    if (!(fc > fd)) {  // +inf on the right pushes the bracket left
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (detail::better(fc, golden_value)) { golden_x = c; golden_value = fc; }
    if (detail::better(fd, golden_value)) { golden_x = d; golden_value = fd; }
  }

  ProfileMinimum result = best;
  if (golden_value < result.value) result = {golden_x, golden_value, g};

  // Stationary point of the profile by bisection on its derivative. Golden
  // section only resolves the minimiser to about sqrt(machine eps); the
  // derivative root is stable to rounding in the data. The window around the
  // golden point widens until the derivative changes sign across it.
  const double span = bracket_hi - bracket_lo;
  for (double h = std::max(1e-7 * span, 8.0 * options.tolerance); h < 2.0 * span; h *= 4.0) {
    double left = std::max(result.x - h, bracket_lo + 1e-3 * std::min(h, span));
    double right = std::min(result.x + h, bracket_hi);
    if (!(left < right)) break;
    const double d_left = df(left);
    const double d_right = df(right);
    if (!std::isfinite(d_left) || !std::isfinite(d_right)) break;
    if (d_left >= 0.0 || d_right <= 0.0) continue;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      const double d_mid = df(mid);
      if (!std::isfinite(d_mid)) break;
      if (d_mid > 0.0) {
        right = mid;
      } else {
        left = mid;
      }
    }
    const double root = 0.5 * (left + right);
    const double root_value = f(root);
    const double slack = 1e-12 * (1.0 + std::fabs(result.value));
    if (std::isfinite(root_value) && root_value <= result.value + slack) {
      result = {root, root_value, g};
    }
    break;
  }
  return result;
}

}  // namespace curetail
