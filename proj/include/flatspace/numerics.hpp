#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "flatspace/errors.hpp"

namespace flatspace::numerics {

// Adaptive Gauss-Kronrod (15/31) on [a, b]; infinite limits allowed.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12, double* error = nullptr) {
  double err = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      std::forward<F>(f), a, b, 20, rel_tol, &err);
  if (error) *error = err;
  if (!std::isfinite(value)) fail(ErrorKind::NoConvergence, "quadrature produced a non-finite value");
  return value;
}

// Dormand-Prince 5(4) with dense output. States are kept dimensionless by the
// callers, so one absolute and one relative tolerance serve every component.
template <std::size_t N>
class DenseRK {
 public:
  using State = std::array<double, N>;

  DenseRK(double abs_tol, double rel_tol)
      : stepper_(boost::numeric::odeint::make_dense_output(
            abs_tol, rel_tol, boost::numeric::odeint::runge_kutta_dopri5<State>())) {}

  void initialize(const State& x0, double t0, double dt0) { stepper_.initialize(x0, t0, dt0); }

  template <class System>
  std::pair<double, double> step(System& sys) {
    return stepper_.do_step(std::ref(sys));
  }

  double time() const { return stepper_.current_time(); }
  double previous_time() const { return stepper_.previous_time(); }
  const State& state() const { return stepper_.current_state(); }
  const State& previous_state() const { return stepper_.previous_state(); }

  State at(double t) const {
    State x{};
    stepper_.calc_state(t, x);
    return x;
  }

 private:
  boost::numeric::odeint::dense_output_runge_kutta<
      boost::numeric::odeint::controlled_runge_kutta<
          boost::numeric::odeint::runge_kutta_dopri5<State>>>
      stepper_;
};

// Root of f inside [a, b] with f(a), f(b) of opposite sign: bisection until the
// bracket has shrunk a few decades, then bracket-safeguarded secant steps.
template <class F>
double refine_root(F&& f, double a, double b, double x_tol, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) fail(ErrorKind::NoConvergence, "refine_root: no sign change in bracket");
  const double width0 = std::abs(b - a);
  int it = 0;
  for (; it < max_iter && std::abs(b - a) > 1e-3 * width0 && std::abs(b - a) > x_tol; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  double x_prev = a, f_prev = fa;
  double x = b, fx = fb;
  for (; it < max_iter; ++it) {
    double next = x - fx * (x - x_prev) / (fx - f_prev);
    double lo = std::min(a, b), hi = std::max(a, b);
    if (!(next > lo && next < hi)) next = 0.5 * (a + b);
    double fn = f(next);
    if (fn == 0.0) return next;
    if ((fn > 0) == (fa > 0)) {
      a = next;
      fa = fn;
    } else {
      b = next;
      fb = fn;
    }
    double step = std::abs(next - x);
    x_prev = x;
    f_prev = fx;
    x = next;
    fx = fn;
    if (step < x_tol || std::abs(b - a) < x_tol) return x;
  }
  fail(ErrorKind::NoConvergence, "refine_root: iteration limit reached");
}

}  // namespace flatspace::numerics

namespace flatspace::numerics {

// As refine_root, but first widens [a, b] away from a (up to 8 times its width)
// when f(b) has not yet changed sign. Used where f is re-evaluated by a tighter
// integration than the one that produced the bracket.
template <class F>
double refine_root_widening(F&& f, double a, double b, double x_tol) {
  const double fa = f(a);
  const double width = b - a;
  for (int k = 0; k < 8 && (f(b) > 0) == (fa > 0) && fa != 0.0; ++k) b += width;
  return refine_root(f, a, b, x_tol);
}

}  // namespace flatspace::numerics
