#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "berrylab/errors.hpp"
#include "berrylab/laws.hpp"
#include "berrylab/specfun.hpp"

namespace berrylab {

using CharFnValue = std::complex<double>;

namespace detail {

inline double sinc(double z) {
    const double az = std::fabs(z);
    if (az < 1e-4) {
        // series keeps full precision where sin(z)/z would cancel
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

} // namespace detail

// E[exp(itX)]. Atoms contribute p * e^{i t a}; a constant piece of height h
// on [lo, hi] contributes h (hi - lo) e^{i t (lo+hi)/2} sinc(t (hi - lo)/2).
inline CharFnValue cf_eval(const MixedLaw& law, double t) {
    CharFnValue acc(0.0, 0.0);
    for (const Atom& a : law.atoms) {
        const double ta = t * a.location;
        acc += CharFnValue(a.mass * std::cos(ta), a.mass * std::sin(ta));
    }
    for (const StepPiece& p : law.steps) {
        const double width = p.hi - p.lo;
        const double centre = 0.5 * (p.lo + p.hi);
        const double amp = p.height * width * detail::sinc(0.5 * t * width);
        const double tc = t * centre;
        acc += CharFnValue(amp * std::cos(tc), amp * std::sin(tc));
    }
    return acc;
}

// Characteristic function of the normalized N-fold sum, phi(t / sqrt(N))^N.
// For an integer power the principal-branch route exp(N log z) equals the
// iterated product exactly in exact arithmetic and is far better conditioned
// for large N; the tiny-modulus corner (where log would see a near-zero
// argument) falls back to binary powering.
inline CharFnValue cf_pow_rescaled(const MixedLaw& law, double t, std::int64_t N) {
    if (N < 1) throw DomainError("cf_pow_rescaled: N must be >= 1");
    const CharFnValue z = cf_eval(law, t / std::sqrt(static_cast<double>(N)));
    if (std::abs(z) < 1e-8) {
        CharFnValue acc(1.0, 0.0);
        CharFnValue base = z;
        std::int64_t n = N;
        while (n > 0) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }
    return std::exp(static_cast<double>(N) * std::log(z));
}

// Cutoff radii for the local envelopes, as functions of the moment scale
// m = (E|X|^{k+1})^{1/(k+1)}:
//
//   c1 = min(1/2, (k+1) / (4 m))
//   c2 = 2 ((k+1) / m)^{(k+1)/(k-1)}
//   c0 = min(c1, c2)
struct EnvelopeConstants {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

inline EnvelopeConstants envelope_constants(int k, double m_k1) {
    if (k < 2) throw DomainError("envelope_constants: k must be >= 2");
    if (!(m_k1 >= 1.0))
        throw DomainError("envelope_constants: moment scale must be >= 1");
    const double r = (k + 1) / m_k1;
    const double c1 = std::min(0.5, 0.25 * r);
    const double c2 = 2.0 * std::pow(r, static_cast<double>(k + 1) / (k - 1));
    return {std::min(c1, c2), c1, c2};
}

// Single-factor envelope: |phi(t) - e^{-t^2/2}| <= 3 |t|^{k+1} E / (k+1)!
// whenever the law matches Gaussian moments through order k and has (k+1)-th
// absolute moment E.
inline double lemma_local1_envelope(int k, double abs_moment_k1, double t) {
    if (k < 2) throw DomainError("lemma_local1_envelope: k must be >= 2");
    if (!(abs_moment_k1 > 0.0))
        throw DomainError("lemma_local1_envelope: absolute moment must be positive");
    return 3.0 * detail::powi(std::fabs(t), k + 1) * abs_moment_k1 / detail::factorial_d(k + 1);
}

// N-fold envelope with Gaussian damping, valid on |t| <= c0 sqrt(N):
// |phi(t/sqrt(N))^N - e^{-t^2/2}| <= 4 N^{-(k-1)/2} |t|^{k+1} E e^{-t^2/4} / (k+1)!.
// The range check is the caller's job (via envelope_constants); the formula
// itself is evaluated wherever asked.
inline double local_envelope(int k, double abs_moment_k1, double t, std::int64_t N) {
    if (k < 2) throw DomainError("local_envelope: k must be >= 2");
    if (N < 1) throw DomainError("local_envelope: N must be >= 1");
    if (!(abs_moment_k1 > 0.0))
        throw DomainError("local_envelope: absolute moment must be positive");
    const double n = static_cast<double>(N);
    return 4.0 * std::pow(n, -0.5 * (k - 1)) * detail::powi(std::fabs(t), k + 1)
           * abs_moment_k1 * std::exp(-0.25 * t * t) / detail::factorial_d(k + 1);
}

// Tail decay for laws carrying a height-h width-w rectangle: for every
// |t| >= t0 with 0 < t0 <= 4/w, |phi(t)| <= exp(-h w^3 t0^2 / 32).
inline double global_decay_bound(double h, double w, double t0) {
    if (!(h > 0.0 && h <= 1.0 && w > 0.0 && w <= 1.0))
        throw DomainError("global_decay_bound: need h, w in (0, 1]");
    if (!(t0 > 0.0 && t0 <= 4.0 / w))
        throw DomainError("global_decay_bound: need 0 < t0 <= 4/w");
    return std::exp(-h * w * w * w * t0 * t0 / 32.0);
}

} // namespace berrylab
