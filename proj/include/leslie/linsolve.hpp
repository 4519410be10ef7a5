#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "leslie/grid.hpp"

namespace leslie {

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] * b[i];
  return pairwise_sum(w);
}

inline void axpy(std::vector<double>& y, double s, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

}  // namespace detail

/// Conjugate gradients for a symmetric positive (semi-)definite operator,
/// stopping at ||b - A x|| <= tol ||b||. `x` is the initial guess on entry.
template <class Op>
SolveReport conjugate_gradient(Op&& apply, std::span<const double> b, std::vector<double>& x,
                               double tol, int max_iter) {
  using detail::axpy;
  using detail::dot;
  SolveReport rep;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(b.begin(), b.end());
  axpy(r, -1.0, apply(x));
  std::vector<double> p = r;
  double rr = dot(r, r);
  rep.relative_residual = std::sqrt(rr) / bnorm;
  while (rep.relative_residual > tol && rep.iterations < max_iter) {
    const std::vector<double> ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    axpy(x, alpha, p);
    axpy(r, -alpha, ap);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    ++rep.iterations;
    rep.relative_residual = std::sqrt(rr) / bnorm;
  }
  // The recurrence drifts from the true residual; report the true one.
  std::vector<double> res(b.begin(), b.end());
  axpy(res, -1.0, apply(x));
  rep.relative_residual = std::sqrt(dot(res, res)) / bnorm;
  rep.converged = rep.relative_residual <= tol;
  return rep;
}

/// BiCGSTAB for general square operators.
template <class Op>
SolveReport bicgstab(Op&& apply, std::span<const double> b, std::vector<double>& x, double tol,
                     int max_iter) {
  using detail::axpy;
  using detail::dot;
  SolveReport rep;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(b.begin(), b.end());
  axpy(r, -1.0, apply(x));
  const std::vector<double> r0 = r;
  std::vector<double> p(r.size(), 0.0), v(r.size(), 0.0), s(r.size());
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  rep.relative_residual = std::sqrt(dot(r, r)) / bnorm;
  while (rep.relative_residual > tol && rep.iterations < max_iter) {
    const double rho_new = dot(r0, r);
    if (rho_new == 0.0) break;
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    v = apply(p);
    const double r0v = dot(r0, v);
    if (r0v == 0.0) break;
    alpha = rho / r0v;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = r[i] - alpha * v[i];
    const std::vector<double> t = apply(s);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    axpy(x, alpha, p);
    axpy(x, omega, s);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s[i] - omega * t[i];
    ++rep.iterations;
    rep.relative_residual = std::sqrt(dot(r, r)) / bnorm;
    if (omega == 0.0) break;
  }
  std::vector<double> res(b.begin(), b.end());
  axpy(res, -1.0, apply(x));
  rep.relative_residual = std::sqrt(dot(res, res)) / bnorm;
  rep.converged = rep.relative_residual <= tol;
  return rep;
}

/// CGLS: minimises ||A x - b|| using A and its transpose. Converged means the
/// residual itself reached tol ||b|| (i.e. the system was consistent).
template <class Op, class OpT>
SolveReport cgls(Op&& apply, OpT&& apply_t, std::span<const double> b, std::vector<double>& x,
                 double tol, int max_iter) {
  using detail::axpy;
  using detail::dot;
  SolveReport rep;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(b.begin(), b.end());
  axpy(r, -1.0, apply(x));
  std::vector<double> s = apply_t(r);
  std::vector<double> p = s;
  double gamma = dot(s, s);
  const double gamma0 = gamma;
  rep.relative_residual = std::sqrt(dot(r, r)) / bnorm;
  while (rep.relative_residual > tol && rep.iterations < max_iter && gamma > 1e-32 * gamma0) {
    const std::vector<double> q = apply(p);
    const double qq = dot(q, q);
    if (!(qq > 0.0)) break;
    const double alpha = gamma / qq;
    axpy(x, alpha, p);
    axpy(r, -alpha, q);
    s = apply_t(r);
    const double gamma_new = dot(s, s);
    const double beta = gamma_new / gamma;
    gamma = gamma_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s[i] + beta * p[i];
    ++rep.iterations;
    rep.relative_residual = std::sqrt(dot(r, r)) / bnorm;
  }
  std::vector<double> res(b.begin(), b.end());
  axpy(res, -1.0, apply(x));
  rep.relative_residual = std::sqrt(dot(res, res)) / bnorm;
  rep.converged = rep.relative_residual <= tol;
  return rep;
}

}  // namespace leslie
