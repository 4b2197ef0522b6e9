#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "berrylab/charfun.hpp"
#include "berrylab/errors.hpp"
#include "berrylab/exactdist.hpp"
#include "berrylab/laws.hpp"
#include "berrylab/quadrature.hpp"
#include "berrylab/specfun.hpp"

namespace berrylab {

// Kolmogorov distance to the standard normal, either certified (two-sided
// enclosure from the exact CDF engine) or statistical (empirical CDF with a
// DKW confidence radius). arg_s is an abscissa where the reported distance
// was observed.
struct KSResult {
    double distance = 0.0;
    double err = 0.0;
    std::string mode;
    double arg_s = 0.0;
};

// Certified sup_s |F_N(s) - Phi(s)| for the normalized N-fold sum of the
// two-parameter family (h = 0 admitted as the pure sign lattice).
//
// The CDF is a step-plus-smooth mixture whose only jumps sit on the pure
// lattice, so the supremum is bracketed by
//   - exact two-sided evaluation at every jump (value and left limit), and
//   - interval certificates on the gaps: for F continuous on (a, b),
//       sup_[a,b] |F - Phi| <= max(|F-Phi|(a), |F-Phi|(b^-))
//                              + min(F(b^-) - F(a), Phi(b) - Phi(a)),
//     because both functions are monotone.
// Gaps are bisected worst-first until the enclosure width drops under tol.
inline KSResult ks_exact_mu_hw(double h, double w, std::int64_t N, double tol = 1e-6) {
    if (!(tol > 0.0)) throw DomainError("ks_exact_mu_hw: tolerance must be positive");
    const SumCdf F(h, w, N, std::min(1e-9, 0.25 * tol));

    struct Gap {
        double bound = 0.0;
        double a = 0.0, b = 0.0;
        double fa = 0.0, fb_left = 0.0;
        double phia = 0.0, phib = 0.0;
        bool splittable = true;
    };
    auto gap_bound = [](Gap& g) {
        const double endpoints = std::max(std::fabs(g.fa - g.phia), std::fabs(g.fb_left - g.phib));
        const double increment =
            std::max(0.0, std::min(g.fb_left - g.fa, g.phib - g.phia));
        g.bound = endpoints + increment;
    };
    auto cmp = [](const Gap& l, const Gap& r) { return l.bound < r.bound; };
    std::priority_queue<Gap, std::vector<Gap>, decltype(cmp)> heap(cmp);

    double lb = 0.0;
    double arg = 0.0;
    double max_eval_err = 0.0;
    std::int64_t evals = 0;

    auto consider = [&](double dist, double s) {
        if (dist > lb) {
            lb = dist;
            arg = s;
        }
    };
    auto eval_f = [&](double s) {
        if (++evals > 10000000)
            throw BudgetError("ks_exact_mu_hw: evaluation budget exhausted");
        const CertifiedProb p = F.eval(s);
        max_eval_err = std::max(max_eval_err, p.err);
        return p.value;
    };

    // jump abscissae, exact two-sided values
    const std::int64_t M = F.lattice_count();
    std::vector<double> s(static_cast<std::size_t>(M));
    std::vector<double> f_at(static_cast<std::size_t>(M));
    std::vector<double> f_left(static_cast<std::size_t>(M));
    std::vector<double> phi(static_cast<std::size_t>(M));
    for (std::int64_t l = 0; l < M; ++l) {
        s[static_cast<std::size_t>(l)] = F.lattice_point(l);
        const auto v = F.eval_at_lattice(l);
        ++evals;
        max_eval_err = std::max(max_eval_err, v.at.err);
        f_at[static_cast<std::size_t>(l)] = v.at.value;
        f_left[static_cast<std::size_t>(l)] = v.left.value;
        phi[static_cast<std::size_t>(l)] = std_normal_cdf(s[static_cast<std::size_t>(l)]);
        consider(std::fabs(v.at.value - phi[static_cast<std::size_t>(l)]), s[static_cast<std::size_t>(l)]);
        consider(std::fabs(v.left.value - phi[static_cast<std::size_t>(l)]), s[static_cast<std::size_t>(l)]);
    }

    const double T = std::max(F.support_radius() + 1.0, 9.5);
    const double f_lo = eval_f(-T);
    const double f_hi = eval_f(T);
    const double phi_lo = std_normal_cdf(-T);
    const double phi_hi = std_normal_cdf(T);

    // everything at or beyond +-T, by monotonicity
    Gap left_tail;
    left_tail.bound = std::max(f_lo + max_eval_err, phi_lo);
    left_tail.splittable = false;
    heap.push(left_tail);
    Gap right_tail;
    right_tail.bound = std::max(1.0 - (f_hi - max_eval_err), 1.0 - phi_hi);
    right_tail.splittable = false;
    heap.push(right_tail);

    auto push_gap = [&](double a, double b, double fa, double fbl, double pa, double pb) {
        Gap g{0.0, a, b, fa, fbl, pa, pb, true};
        gap_bound(g);
        heap.push(g);
    };
    push_gap(-T, s.front(), f_lo, f_left.front(), phi_lo, phi.front());
    for (std::int64_t l = 0; l + 1 < M; ++l)
        push_gap(s[static_cast<std::size_t>(l)], s[static_cast<std::size_t>(l) + 1],
                 f_at[static_cast<std::size_t>(l)], f_left[static_cast<std::size_t>(l) + 1],
                 phi[static_cast<std::size_t>(l)], phi[static_cast<std::size_t>(l) + 1]);
    push_gap(s.back(), T, f_at.back(), f_hi, phi.back(), phi_hi);

    double ub_floor = lb; // bounds of gaps we can no longer split
    while (!heap.empty()) {
        const Gap top = heap.top();
        if (top.bound <= lb + tol) break;
        if (!top.splittable) {
            ub_floor = std::max(ub_floor, top.bound);
            break;
        }
        heap.pop();
        const double m = 0.5 * (top.a + top.b);
        if (!(m > top.a && m < top.b)) {
            // interval collapsed to adjacent doubles; its bound is final
            ub_floor = std::max(ub_floor, top.bound);
            continue;
        }
        const double fm = eval_f(m);
        const double pm = std_normal_cdf(m);
        consider(std::fabs(fm - pm), m);
        push_gap(top.a, m, top.fa, fm, top.phia, pm);
        push_gap(m, top.b, fm, top.fb_left, pm, top.phib);
    }
    const double ub = std::max(ub_floor, heap.empty() ? lb : std::max(lb, heap.top().bound));

    KSResult r;
    r.distance = 0.5 * (ub + lb);
    r.err = 0.5 * (ub - lb) + max_eval_err + 1e-14;
    r.mode = "certified";
    r.arg_s = arg;
    return r;
}

// One-sample Kolmogorov statistic of sorted data against Phi, with the
// Dvoretzky-Kiefer-Wolfowitz radius sqrt(log(2 / (1 - conf)) / (2n)) at the
// requested confidence level.
inline KSResult ks_empirical(const std::vector<double>& sorted_samples, double conf) {
    const std::size_t n = sorted_samples.size();
    if (n == 0) throw DomainError("ks_empirical: need at least one sample");
    if (!(conf > 0.0 && conf < 1.0))
        throw DomainError("ks_empirical: confidence must be inside (0, 1)");
    const double nd = static_cast<double>(n);
    double d = 0.0;
    double arg = sorted_samples.front();
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std_normal_cdf(sorted_samples[i]);
        const double above = static_cast<double>(i + 1) / nd - p;
        const double below = p - static_cast<double>(i) / nd;
        const double local = std::max(above, below);
        if (local > d) {
            d = local;
            arg = sorted_samples[i];
        }
    }
    KSResult r;
    r.distance = d;
    r.err = std::sqrt(std::log(2.0 / (1.0 - conf)) / (2.0 * nd));
    r.mode = "statistical";
    r.arg_s = arg;
    return r;
}

// One-sided smoothing bound core,
//
//   d_KS <= 4/L + (1/pi) Int_{-L}^{L} |psi(t) - e^{-t^2/2}| / |t| dt ,
//
// for psi the characteristic function of the candidate law. The integrand is
// even, so one side is integrated and doubled. The caller supplies a closed
// form bound for the (1/pi)-integral over [-t_min, t_min] (the integrand is
// 0/0 at the origin); quadrature covers [t_min, L] with total absolute
// tolerance quad_tol / 2, and quad_tol is added to keep the result a valid
// upper bound. split_at marks a knee of the integrand (envelope cutoff) and
// becomes a panel boundary when it lands inside the range.
template <typename CF>
inline double smoothing_upper_bound_cf(CF&& cf_sum, double L, double quad_tol,
                                       double t_min, double near_zero_bound,
                                       double split_at) {
    if (!(t_min > 0.0) || !(L > 0.0))
        throw DomainError("smoothing_upper_bound: need L > 0 and t_min > 0");
    if (!(quad_tol > 0.0))
        throw DomainError("smoothing_upper_bound: quadrature tolerance must be positive");
    if (!(near_zero_bound >= 0.0))
        throw DomainError("smoothing_upper_bound: near-zero bound must be non-negative");
    if (L <= t_min) // analytic piece already covers all of [-L, L]
        return 4.0 / L + quad_tol + near_zero_bound;

    auto integrand = [&](double t) {
        return std::abs(cf_sum(t) - std::exp(-0.5 * t * t)) / t;
    };
    std::vector<double> knots{t_min};
    if (split_at > t_min && split_at < L) knots.push_back(split_at);
    knots.push_back(L);

    const double tol_per_panel = 0.5 * quad_tol / static_cast<double>(knots.size() - 1);
    double half_integral = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        half_integral += adaptive_simpson(integrand, knots[i], knots[i + 1], tol_per_panel);

    return 4.0 / L + (2.0 / 3.14159265358979323846) * half_integral + quad_tol
           + near_zero_bound;
}

// Smoothing bound for the normalized N-fold sum of a centered, unit-variance
// law with vanishing third moment. Near the origin the single-factor envelope
// applies to the sum itself (its fourth absolute moment is exactly
// 3 + (m4 - 3)/N), which integrates in closed form; the rest is quadrature.
inline double smoothing_upper_bound(const MixedLaw& law, std::int64_t N, double L,
                                    double quad_tol) {
    if (N < 1) throw DomainError("smoothing_upper_bound: N must be >= 1");
    if (!(L > 0.0)) throw DomainError("smoothing_upper_bound: need L > 0");
    if (std::fabs(moment(law, 1)) > 1e-9 || std::fabs(moment(law, 2) - 1.0) > 1e-9 ||
        std::fabs(moment(law, 3)) > 1e-9)
        throw DomainError(
            "smoothing_upper_bound: law must match Gaussian moments through order 3");
    const double t_min = std::min(1e-3, L);
    const double m4 = abs_moment(law, 4);
    const double sum_m4 = 3.0 + (m4 - 3.0) / static_cast<double>(N);
    // (1/pi) Int_{-t_min}^{t_min} 3 |t|^3 E / 4! / |t| dt = E t_min^4 / (16 pi)
    const double near_zero = sum_m4 * t_min * t_min * t_min * t_min
                             / (16.0 * 3.14159265358979323846);
    const double m_scale = std::max(1.0, std::pow(m4, 0.25));
    const double split = envelope_constants(3, m_scale).c0 * std::sqrt(static_cast<double>(N));
    auto cf = [&law, N](double t) { return cf_pow_rescaled(law, t, N); };
    return smoothing_upper_bound_cf(cf, L, quad_tol, t_min, near_zero, split);
}

// Cutoff choice L = 2 pi exp(h w^3 c0^2 N / 32) matching the tail-decay rate
// of the family, so the 4/L term shrinks with the certified CF decay.
inline double paper_L(double h, double w, int k, double m_k1, std::int64_t N) {
    if (!(h >= 0.0 && h <= 1.0 && w >= 0.0 && w <= 1.0))
        throw DomainError("paper_L: need h, w in [0, 1]");
    if (N < 1) throw DomainError("paper_L: N must be >= 1");
    const double c0 = envelope_constants(k, m_k1).c0;
    return 2.0 * 3.14159265358979323846
           * std::exp(h * w * w * w * c0 * c0 * static_cast<double>(N) / 32.0);
}

} // namespace berrylab
