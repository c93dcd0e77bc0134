#pragma once

// Reference computations written independently of the library: plain loops
// over std::vector, no calls into glasso numerics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "glasso/dictionary.hpp"

namespace oracle {

using Vec = std::vector<double>;

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// 1/2 ||x - v||^2 + lambda ||x||.
inline double prox_objective(const Vec& x, const Vec& v, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - v[i]) * (x[i] - v[i]);
  return 0.5 * s + lambda * norm2(x);
}

/// Smallest prox objective found by subgradient-free descent from several
/// starts: gradient steps on the smooth part with a shrinking step and the
/// nonsmooth part handled by a numeric directional step (no closed form).
inline double prox_pgd_minimum(const Vec& v, double lambda, int starts, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t d = v.size();
  double best = prox_objective(Vec(d, 0.0), v, lambda);
  for (int s = 0; s < starts; ++s) {
    Vec x(d);
    for (double& xi : x) xi = 2.0 * gauss(rng);
    double fx = prox_objective(x, v, lambda);
    double step = 0.5;
    for (int it = 0; it < 4000 && step > 1e-14; ++it) {
      // Gradient of the whole objective away from x = 0.
      const double nx = norm2(x);
      Vec g(d);
      for (std::size_t i = 0; i < d; ++i)
        g[i] = (x[i] - v[i]) + (nx > 0.0 ? lambda * x[i] / nx : 0.0);
      Vec cand(d);
      for (std::size_t i = 0; i < d; ++i) cand[i] = x[i] - step * g[i];
      // Projection onto the ray through x when the step crosses the origin.
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += cand[i] * x[i];
      if (dot < 0.0) std::fill(cand.begin(), cand.end(), 0.0);
      const double fc = prox_objective(cand, v, lambda);
      if (fc < fx) {
        x = cand;
        fx = fc;
        step *= 1.2;
      } else {
        step *= 0.5;
      }
    }
    best = std::min(best, fx);
  }
  return best;
}

/// Cyclic coordinate descent for 1/2 ||y - A b||^2 + lambda sum |b_j|,
/// A column-major n x p. Runs until the largest coordinate change is below tol.
inline Vec lasso_cd(const std::vector<Vec>& cols, const Vec& y, const Vec& lambda, double tol,
                    int max_sweeps) {
  const std::size_t p = cols.size(), n = y.size();
  Vec b(p, 0.0), r = y;
  Vec sq(p);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (double a : cols[j]) s += a * a;
    sq[j] = s;
  }
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double delta = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      double rho = 0.0;
      for (std::size_t i = 0; i < n; ++i) rho += cols[j][i] * r[i];
      rho += sq[j] * b[j];
      double nb = 0.0;
      if (rho > lambda[j]) nb = (rho - lambda[j]) / sq[j];
      else if (rho < -lambda[j]) nb = (rho + lambda[j]) / sq[j];
      const double diff = nb - b[j];
      if (diff != 0.0) {
        for (std::size_t i = 0; i < n; ++i) r[i] -= diff * cols[j][i];
        delta = std::max(delta, std::abs(diff));
        b[j] = nb;
      }
    }
    if (delta < tol) break;
  }
  return b;
}

/// n x p Gaussian matrix with unit-norm columns.
inline glasso::Matrix random_unit_columns(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  glasso::Matrix m(n, p);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m(i, j) = gauss(rng);
      s += m(i, j) * m(i, j);
    }
    s = std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) m(i, j) /= s;
  }
  return m;
}

/// Random partition of [0, p) into groups of random size in [1, max_size],
/// with columns shuffled so groups are non-contiguous.
inline std::vector<glasso::IndexList> random_sets(std::size_t p, std::size_t max_size,
                                                  std::mt19937_64& rng) {
  std::vector<std::size_t> perm(p);
  for (std::size_t i = 0; i < p; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::vector<glasso::IndexList> groups;
  std::size_t at = 0;
  while (at < p) {
    const std::size_t k = std::min(size(rng), p - at);
    glasso::IndexList g(perm.begin() + at, perm.begin() + at + k);
    std::sort(g.begin(), g.end());
    groups.push_back(std::move(g));
    at += k;
  }
  return groups;
}

/// Orthonormal DCT-II atom k of length n, from the textbook formula.
inline double dct_entry(std::size_t n, std::size_t k, std::size_t i) {
  const double pi = 3.14159265358979323846;
  const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
  return scale * std::cos(pi * (2.0 * i + 1.0) * k / (2.0 * n));
}

}  // namespace oracle
