#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "berrylab/errors.hpp"
#include "berrylab/laws.hpp"
#include "berrylab/specfun.hpp"

namespace berrylab {

// A probability together with a certified absolute error radius: the true
// value lies in [value - err, value + err]. The radius collects truncated
// mixture mass and explicit floating-point allowances; it is meant to be
// believed, so every contribution is bounded conservatively.
struct CertifiedProb {
    double value = 0.0;
    double err = 0.0;
};

namespace detail {

inline double powi_sq(double base, int n) {
    // exponentiation by squaring, ~log2(n) roundings
    double acc = 1.0;
    double b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

struct IhValue {
    double value = 0.0;
    double err = 0.0;
};

// CDF of a sum of j iid uniform[0,1] variables by the alternating series
//
//   F_j(x) = (1/j!) sum_{m=0}^{floor(x)} (-1)^m C(j,m) (x - m)^j .
//
// The series cancels heavily: the terms reach ~1e6 at j = 40 while the sum
// stays in [0,1], which is exactly why j is capped at 40. Two measures keep
// the evaluation certifiable: the symmetry F_j(x) = 1 - F_j(j - x) restricts
// evaluation to x <= j/2 where terms are smallest, and the binomial factors
// are produced by an integer-exact multiply-then-divide recursion (C(40,20)
// and every intermediate stay far below 2^53). The returned err is the
// compensated absolute-term sum times a small rounding factor, an honest
// bound on what the cancellation can have cost.
inline IhValue irwin_hall_certified(int j, double x) {
    if (j < 0) throw DomainError("irwin_hall_cdf: order must be non-negative");
    if (j > 40)
        throw StabilityError("irwin_hall_cdf: alternating series is unstable beyond j = 40");
    if (j == 0) return {x >= 0.0 ? 1.0 : 0.0, 0.0};
    if (x <= 0.0) return {0.0, 0.0};
    if (x >= static_cast<double>(j)) return {1.0, 0.0};

    bool flipped = false;
    double xr = x;
    if (xr > 0.5 * j) {
        xr = j - xr;
        flipped = true;
    }

    // Neumaier-compensated sums of the signed terms and their magnitudes.
    double sum = 0.0, comp = 0.0, abs_sum = 0.0;
    double binom = 1.0;
    const int mmax = static_cast<int>(std::floor(xr));
    for (int m = 0; m <= mmax; ++m) {
        if (m > 0) binom = binom * (j - m + 1) / m; // exact for j <= 40
        double term = binom * powi_sq(xr - m, j);
        if (m & 1) term = -term;
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        abs_sum += std::fabs(term);
    }
    const double fact = factorial_d(j);
    double v = (sum + comp) / fact;

    // Rounding factor: ~log2(j) multiplications per power plus the
    // compensated accumulation and the final division.
    const double eps = std::numeric_limits<double>::epsilon();
    double rounding = (2.0 * std::ceil(std::log2(static_cast<double>(j) + 1.0)) + 8.0) * eps;
    double err = (abs_sum / fact) * rounding;

    v = std::min(1.0, std::max(0.0, v));
    if (flipped) v = 1.0 - v;
    return {v, err};
}

} // namespace detail

inline double irwin_hall_cdf(int j, double x) {
    return detail::irwin_hall_certified(j, x).value;
}

// CDF at u of a sum of j iid uniform[-w/2, w/2] variables; the affine map
// onto [0,1] uniforms gives F(u) = F_j(u/w + j/2).
inline double centered_uniform_sum_cdf(int j, double w, double u) {
    if (!(w > 0.0)) throw DomainError("centered_uniform_sum_cdf: width must be positive");
    if (j == 0) return u >= 0.0 ? 1.0 : 0.0;
    return irwin_hall_cdf(j, u / w + 0.5 * j);
}

namespace detail {

// Lattice probabilities C(n, l) 2^{-n}, l = 0..n, for a sum of n fair signs.
// Small n goes through the exact integer recursion scaled by an exact power
// of two; large n starts from the central coefficient in log space (the
// endpoint route would underflow long before n = 10^4) and recurses outward.
inline std::vector<double> sign_sum_probs(int n) {
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    if (n <= 50) {
        double c = 1.0;
        const double scale = std::ldexp(1.0, -n);
        b[0] = scale;
        for (int l = 1; l <= n; ++l) {
            c = c * (n - l + 1) / l; // exact integers below 2^53
            b[static_cast<std::size_t>(l)] = c * scale;
        }
        return b;
    }
    const int lc = n / 2;
    const double log_central = log_gamma(n + 1.0) - log_gamma(lc + 1.0)
                             - log_gamma(n - lc + 1.0)
                             - n * 0.69314718055994530942;
    b[static_cast<std::size_t>(lc)] = std::exp(log_central);
    for (int l = lc; l < n; ++l)
        b[static_cast<std::size_t>(l) + 1] =
            b[static_cast<std::size_t>(l)] * (static_cast<double>(n - l) / (l + 1));
    for (int l = lc; l > 0; --l)
        b[static_cast<std::size_t>(l) - 1] =
            b[static_cast<std::size_t>(l)] * (static_cast<double>(l) / (n - l + 1));
    return b;
}

} // namespace detail

// Point masses of a sum of n iid fair +-x signs, ascending by location.
inline std::vector<Atom> bernoulli_sum_pmf(int n, double x) {
    if (n < 0) throw DomainError("bernoulli_sum_pmf: n must be non-negative");
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("bernoulli_sum_pmf: location scale must be positive");
    const std::vector<double> b = detail::sign_sum_probs(n);
    std::vector<Atom> out(b.size());
    for (int l = 0; l <= n; ++l)
        out[static_cast<std::size_t>(l)] = {(2.0 * l - n) * x, b[static_cast<std::size_t>(l)]};
    return out;
}

// Exact CDF engine for the normalized N-fold sum of the two-parameter mixed
// family. Conditioning on which summands drew the rectangular component
// splits the sum into a binomial mixture
//
//   F_N(s) = sum_j C(N,j) (1-e)^{N-j} e^j * G_{N-j,j}(sqrt(N) s),  e = hw,
//
// where G_{n,j} is a lattice of fair +-x signs convolved with j centered
// uniforms. The sign lattice is expanded explicitly and the uniform part is
// an Irwin-Hall CDF, so each term is a product of three certifiable factors.
// j is capped at 40 by Irwin-Hall stability; the discarded mixture tail is
// measured and carried in the certified radius, and construction fails with
// TruncationError when even j = min(40, N) leaves more than tol/2 behind
// (dense laws at large N: that regime belongs to Monte Carlo).
class SumCdf {
public:
    SumCdf(double h, double w, std::int64_t N, double tol = 1e-9)
        : h_(h), w_(w), n_total_(N), tol_(tol) {
        if (!(w > 0.0 && w <= 1.0))
            throw DomainError("SumCdf: need w in (0, 1]");
        if (!(h >= 0.0 && h <= 1.0))
            throw DomainError("SumCdf: need h in [0, 1]");
        if (!(h * w < 1.0))
            throw DomainError("SumCdf: need hw < 1");
        if (N < 1) throw DomainError("SumCdf: need N >= 1");
        if (!(tol > 0.0)) throw DomainError("SumCdf: tolerance must be positive");
        if (N > 100000000)
            throw DomainError("SumCdf: N too large for the exact engine");

        eps_ = h * w;
        x_ = std::sqrt((1.0 - h * w * w * w / 12.0) / (1.0 - eps_));
        sqrt_n_ = std::sqrt(static_cast<double>(N));

        const int j_cap = static_cast<int>(std::min<std::int64_t>(40, N));

        // Mixture weights by upward recursion; stop at the first j whose
        // remaining tail is inside tol/2.
        std::vector<double> wts;
        double wj = std::exp(static_cast<double>(N) * std::log1p(-eps_));
        double prefix = 0.0;
        int J = -1;
        for (int j = 0; j <= j_cap; ++j) {
            if (j > 0) {
                const double ratio = eps_ / (1.0 - eps_);
                wj = wj * ratio * (static_cast<double>(N - j + 1) / j);
            }
            wts.push_back(wj);
            prefix += wj;
            if (1.0 - prefix <= 0.5 * tol) {
                J = j;
                break;
            }
        }
        if (J < 0)
            throw TruncationError(
                "SumCdf: mixture tail past j = " + std::to_string(j_cap) +
                " exceeds tol/2; the exact engine cannot certify this (h, w, N), "
                "use the Monte Carlo route instead");
        weights_.assign(wts.begin(), wts.begin() + J + 1);
        tail_mass_ = std::max(0.0, 1.0 - prefix);

        // Sign-lattice pmf and prefix sums for each mixture order.
        probs_.resize(static_cast<std::size_t>(J) + 1);
        prefix_.resize(static_cast<std::size_t>(J) + 1);
        for (int j = 0; j <= J; ++j) {
            const int n = static_cast<int>(N) - j;
            probs_[static_cast<std::size_t>(j)] = detail::sign_sum_probs(n);
            auto& pre = prefix_[static_cast<std::size_t>(j)];
            pre.resize(probs_[static_cast<std::size_t>(j)].size());
            double acc = 0.0;
            for (std::size_t l = 0; l < pre.size(); ++l) {
                acc += probs_[static_cast<std::size_t>(j)][l];
                pre[l] = acc;
            }
        }

        // Fixed per-evaluation floating-point allowance: weight and pmf
        // recursions carry O(N) ulp of relative error onto quantities summing
        // to at most 1.
        const double eps = std::numeric_limits<double>::epsilon();
        fp_base_ = (4.0 * static_cast<double>(N) + 64.0) * eps;
    }

    double atom_location() const { return x_; }
    double epsilon() const { return eps_; }
    std::int64_t n() const { return n_total_; }
    int truncation_order() const { return static_cast<int>(weights_.size()) - 1; }
    double tail_mass() const { return tail_mass_; }

    // Support radius of the normalized sum: everything lives in
    // [-sqrt(N) x, sqrt(N) x] (the pure sign lattice is extremal since
    // x >= 1 > w/2).
    double support_radius() const { return sqrt_n_ * x_; }

    std::int64_t lattice_count() const { return n_total_ + 1; }

    // Location of full-lattice point l in the normalized domain.
    double lattice_point(std::int64_t l) const {
        return (2.0 * static_cast<double>(l) - static_cast<double>(n_total_)) * x_ / sqrt_n_;
    }

    // Jump of F at lattice point l (only the pure-sign mixture term is
    // atomic; every j >= 1 term is absolutely continuous).
    double jump_mass(std::int64_t l) const {
        if (l < 0 || l > n_total_) throw DomainError("SumCdf: lattice index out of range");
        return weights_[0] * probs_[0][static_cast<std::size_t>(l)];
    }

    // Right-continuous CDF at an arbitrary point. At the pure-lattice jump
    // abscissae the atom indicator is decided in floating point; callers that
    // need exact jump semantics use eval_at_lattice instead.
    CertifiedProb eval(double s) const {
        return eval_unscaled(sqrt_n_ * s);
    }

    struct LatticeValues {
        CertifiedProb at;   // F(s_l)
        CertifiedProb left; // F(s_l^-)
    };

    // Value and left limit exactly at lattice point l: the continuous mixture
    // terms are evaluated once and the atomic prefix is attached by index, so
    // no floating-point comparison ever decides whether the jump is included.
    LatticeValues eval_at_lattice(std::int64_t l) const {
        if (l < 0 || l > n_total_) throw DomainError("SumCdf: lattice index out of range");
        const double u = (2.0 * static_cast<double>(l) - static_cast<double>(n_total_)) * x_;
        double err = tail_mass_ + fp_base_;
        const double cont = continuous_part(u, err);
        const double atoms_at = weights_[0] * prefix_[0][static_cast<std::size_t>(l)];
        const double atoms_left =
            l > 0 ? weights_[0] * prefix_[0][static_cast<std::size_t>(l) - 1] : 0.0;
        return {{clamp01(cont + atoms_at), err}, {clamp01(cont + atoms_left), err}};
    }

private:
    static double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

    CertifiedProb eval_unscaled(double u) const {
        double err = tail_mass_ + fp_base_;
        double f = continuous_part(u, err);

        // pure sign lattice: largest l with (2l - N) x <= u
        const double n = static_cast<double>(n_total_);
        const double lf = std::min(std::floor(0.5 * (u / x_ + n)), n);
        if (lf >= 0.0) {
            const std::int64_t l = static_cast<std::int64_t>(lf);
            f += weights_[0] * prefix_[0][static_cast<std::size_t>(l)];
        }
        return {clamp01(f), err};
    }

    // Mixture terms with at least one uniform component, evaluated at
    // unscaled target u. Accumulates Irwin-Hall certification into err.
    double continuous_part(double u, double& err) const {
        const int J = truncation_order();
        double f = 0.0;
        std::int64_t terms = 0;
        for (int j = 1; j <= J; ++j) {
            const int n = static_cast<int>(n_total_) - j;
            const double half_support = 0.5 * j * w_;
            // lattice points with (2l - n) x inside [u - hs, u + hs] need the
            // uniform CDF; everything below contributes 1, above contributes 0.
            // Clamp in double first so the int64 casts can never overflow.
            const double nd = static_cast<double>(n);
            double lo_f = std::ceil(0.5 * ((u - half_support) / x_ + nd)) - 1.0;
            double hi_f = std::floor(0.5 * ((u + half_support) / x_ + nd)) + 1.0;
            lo_f = std::min(std::max(lo_f, 0.0), nd + 1.0);
            hi_f = std::min(std::max(hi_f, -1.0), nd);
            const std::int64_t l_lo = static_cast<std::int64_t>(lo_f);
            const std::int64_t l_hi = static_cast<std::int64_t>(hi_f);

            double g = 0.0;
            if (l_lo > 0) g += prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l_lo) - 1];
            for (std::int64_t l = l_lo; l <= l_hi; ++l) {
                const double pos = (2.0 * static_cast<double>(l) - n) * x_;
                const double arg = u - pos;
                double uval;
                if (arg <= -half_support) {
                    uval = 0.0;
                } else if (arg >= half_support) {
                    uval = 1.0;
                } else {
                    const auto ih = detail::irwin_hall_certified(j, arg / w_ + 0.5 * j);
                    uval = ih.value;
                    err += weights_[static_cast<std::size_t>(j)] *
                           probs_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * ih.err;
                    ++terms;
                }
                g += probs_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * uval;
            }
            f += weights_[static_cast<std::size_t>(j)] * g;
            terms += (l_hi - l_lo + 1);
        }
        // flat assembly allowance: 1e-12 per million accumulated terms
        err += 1e-18 * static_cast<double>(terms);
        return f;
    }

    double h_ = 0.0;
    double w_ = 0.0;
    std::int64_t n_total_ = 0;
    double tol_ = 0.0;
    double eps_ = 0.0;
    double x_ = 0.0;
    double sqrt_n_ = 0.0;
    double tail_mass_ = 0.0;
    double fp_base_ = 0.0;
    std::vector<double> weights_;
    std::vector<std::vector<double>> probs_;
    std::vector<std::vector<double>> prefix_;
};

// One-shot convenience wrapper.
inline CertifiedProb exact_sum_cdf(double h, double w, std::int64_t N, double s,
                                   double tol = 1e-9) {
    return SumCdf(h, w, N, tol).eval(s);
}

} // namespace berrylab
