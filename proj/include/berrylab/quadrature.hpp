#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "berrylab/errors.hpp"

namespace berrylab {

// Adaptive Simpson integration with an absolute error target.
//
// The usual estimator: compare the one-panel Simpson rule against the
// two-panel refinement, accept when |S2 - S1| <= 15 * tol, and return the
// Richardson-extrapolated value S2 + (S2 - S1) / 15. The tolerance is halved
// on each split so accepted panel errors sum to at most the requested total.
// Subdivisions are counted globally; exceeding the budget throws
// QuadratureError rather than silently returning a bad value.

namespace detail {

struct SimpsonState {
    std::int64_t splits = 0;
    std::int64_t budget = 0;
};

template <typename F>
double eval_finite(F& f, double t) {
    const double v = f(t);
    if (!std::isfinite(v))
        throw DomainError("adaptive_simpson: integrand is not finite inside the interval");
    return v;
}

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth, SimpsonState& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_finite(f, lm);
    const double frm = eval_finite(f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Depth cap: below ~2^-48 of the original span further bisection only
    // churns rounding noise, so accept what we have.
    if (std::fabs(delta) <= 15.0 * tol || depth >= 48)
        return left + right + delta / 15.0;
    if (++st.splits > st.budget)
        throw QuadratureError("adaptive_simpson: subdivision budget exhausted");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, st)
         + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, st);
}

} // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        std::int64_t max_subdivisions = 1000000) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("adaptive_simpson: non-finite interval");
    if (!(abs_tol > 0.0))
        throw DomainError("adaptive_simpson: tolerance must be positive");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = detail::eval_finite(f, a);
    const double fb = detail::eval_finite(f, b);
    const double fm = detail::eval_finite(f, 0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::SimpsonState st{0, max_subdivisions};
    return sign * detail::simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, 0, st);
}

} // namespace berrylab
