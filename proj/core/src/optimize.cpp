#include "mqc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mqc/errors.hpp"

namespace mqc {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double d = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    double s = 0.0;
    for (std::size_t c = 0; c < pts[0].size(); ++c) s += std::pow(pts[k][c] - pts[0][c], 2);
    d = std::max(d, std::sqrt(s));
  }
  return d;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> start,
                          const SimplexSettings& settings) {
  const std::size_t n = start.size();
  if (n == 0) return {std::move(start), f({}), 1, true};

  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t k = 0; k < n; ++k) pts[k + 1][k] += settings.initial_step;
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t k = 0; k <= n; ++k) vals[k] = eval(pts[k]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (const auto k : order) {
      p2.push_back(pts[k]);
      v2.push_back(vals[k]);
    }
    pts.swap(p2);
    vals.swap(v2);
  };
  auto along = [&](const std::vector<double>& c, double coef) {
    std::vector<double> x(n);
    for (std::size_t d = 0; d < n; ++d) x[d] = c[d] + coef * (pts[n][d] - c[d]);
    return x;
  };

  bool converged = false;
  while (evals < settings.max_evaluations) {
    sort_simplex();
    if (simplex_diameter(pts) < settings.diameter_tolerance) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[k][d] / static_cast<double>(n);
    }
    const auto xr = along(centroid, -1.0);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const auto xe = along(centroid, -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point, inside otherwise.
    const bool outside = fr < vals[n];
    const auto xc = along(centroid, outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[n])) {
      pts[n] = xc;
      vals[n] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t d = 0; d < n; ++d) pts[k][d] = pts[0][d] + 0.5 * (pts[k][d] - pts[0][d]);
      vals[k] = eval(pts[k]);
    }
  }
  sort_simplex();
  return {pts[0], vals[0], evals, converged};
}

ScalarExtremum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                       double hi, double relative_tolerance) {
  if (hi < lo) throw RangeError("golden-section bracket is inverted");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > relative_tolerance * std::max(std::abs(0.5 * (a + b)), 1e-300) &&
         b - a > 1e-15) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace mqc
