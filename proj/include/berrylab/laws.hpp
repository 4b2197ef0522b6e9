#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "berrylab/errors.hpp"

namespace berrylab {

// Mixed laws on the real line: finitely many point masses plus a piecewise
// constant density. That is the whole zoo this library works with, and it is
// closed under everything we need (moments, characteristic functions,
// sampling). Normalization happens once, in make_mixed_law; after that the
// invariants below hold and downstream code leans on them:
//
//   atoms   sorted by location, locations distinct, masses > 0
//   steps   sorted, pairwise disjoint, heights > 0, merged where they abut
//            with equal height
//   total   sum of atom masses and step areas is 1 within 1e-12

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

struct StepPiece {
    double lo = 0.0;
    double hi = 0.0;
    double height = 0.0;
};

struct MixedLaw {
    std::vector<Atom> atoms;
    std::vector<StepPiece> steps;
};

// A height-h, width-w rectangle sitting under the density, left edge at a.
struct DensityRectangle {
    double a = 0.0;
    double w = 0.0;
    double h = 0.0;
};

namespace detail {

// Exact small-integer powers; std::pow is avoided so that symmetric inputs
// cancel bit-for-bit (e.g. odd moments of symmetric laws are exactly zero).
inline double powi(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

} // namespace detail

inline MixedLaw make_mixed_law(std::vector<Atom> atoms, std::vector<StepPiece> steps) {
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.location) || !std::isfinite(a.mass))
            throw GeometryError("make_mixed_law: non-finite atom");
        if (a.mass < 0.0)
            throw GeometryError("make_mixed_law: negative atom mass");
    }
    for (const StepPiece& p : steps) {
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.height))
            throw GeometryError("make_mixed_law: non-finite step piece");
        if (p.height < 0.0)
            throw GeometryError("make_mixed_law: negative step height");
        if (!(p.lo < p.hi))
            throw GeometryError("make_mixed_law: step piece needs lo < hi");
    }

    MixedLaw law;

    // Atoms: sort, merge duplicates, drop zero mass.
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& l, const Atom& r) { return l.location < r.location; });
    for (const Atom& a : atoms) {
        if (a.mass == 0.0) continue;
        if (!law.atoms.empty() && law.atoms.back().location == a.location)
            law.atoms.back().mass += a.mass;
        else
            law.atoms.push_back(a);
    }

    // Steps: sweep the breakpoints and sum the heights of covering pieces, so
    // overlaps stack up instead of being an error. Equal-height neighbours
    // that share an endpoint are merged back into one run.
    std::vector<double> cuts;
    cuts.reserve(2 * steps.size());
    for (const StepPiece& p : steps) {
        if (p.height == 0.0) continue;
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double mid = lo + 0.5 * (hi - lo);
        double height = 0.0;
        for (const StepPiece& p : steps)
            if (p.lo <= mid && mid < p.hi) height += p.height;
        if (height == 0.0) continue;
        if (!law.steps.empty() && law.steps.back().hi == lo && law.steps.back().height == height)
            law.steps.back().hi = hi;
        else
            law.steps.push_back({lo, hi, height});
    }

    double mass = 0.0;
    for (const Atom& a : law.atoms) mass += a.mass;
    for (const StepPiece& p : law.steps) mass += p.height * (p.hi - p.lo);
    if (std::fabs(mass - 1.0) > 1e-12)
        throw TotalMassError("make_mixed_law: total mass " + std::to_string(mass));
    return law;
}

// The two-parameter test family: mass 1-hw split evenly between two atoms at
// +-x plus a height-h density on [-w/2, w/2], with
//
//   x = sqrt((1 - h w^3 / 12) / (1 - hw))
//
// chosen so the variance is exactly 1. The family degenerates as hw -> 1 (the
// atoms carry no mass and x diverges), hence the strict hw < 1 requirement.
inline MixedLaw mu_hw(double h, double w) {
    if (!(h > 0.0 && h <= 1.0 && w > 0.0 && w <= 1.0))
        throw DomainError("mu_hw: need h, w in (0, 1]");
    if (!(h * w < 1.0))
        throw DomainError("mu_hw: need hw < 1, no unit-variance member exists at hw = 1");
    const double x = std::sqrt((1.0 - h * w * w * w / 12.0) / (1.0 - h * w));
    const double atom_mass = 0.5 * (1.0 - h * w);
    return make_mixed_law({{-x, atom_mass}, {x, atom_mass}},
                          {{-0.5 * w, 0.5 * w, h}});
}

inline double mu_hw_atom_location(double h, double w) {
    if (!(h >= 0.0 && h <= 1.0 && w > 0.0 && w <= 1.0 && h * w < 1.0))
        throw DomainError("mu_hw_atom_location: parameters outside family domain");
    return std::sqrt((1.0 - h * w * w * w / 12.0) / (1.0 - h * w));
}

// Shrinking-density member used by the vanishing-rate example: h = w =
// 4 (log N / N)^{1/4}. Valid only once N is large enough that the parameter
// drops into (0, 1]; small N throws via mu_hw.
inline double nu_delta(std::int64_t N) {
    if (N < 1) throw DomainError("nu_delta: N must be >= 1");
    const double n = static_cast<double>(N);
    return 4.0 * std::pow(std::log(n) / n, 0.25);
}

inline MixedLaw nu_N(std::int64_t N) {
    const double d = nu_delta(N);
    return mu_hw(d, d);
}

// E[X^j], exact piecewise integration.
inline double moment(const MixedLaw& law, int j) {
    if (j < 0) throw DomainError("moment: order must be non-negative");
    double acc = 0.0;
    for (const Atom& a : law.atoms) acc += a.mass * detail::powi(a.location, j);
    for (const StepPiece& p : law.steps)
        acc += p.height * (detail::powi(p.hi, j + 1) - detail::powi(p.lo, j + 1)) / (j + 1);
    return acc;
}

// E|X|^r for integer r; step pieces straddling 0 split there.
inline double abs_moment(const MixedLaw& law, int r) {
    if (r < 0) throw DomainError("abs_moment: order must be non-negative");
    double acc = 0.0;
    for (const Atom& a : law.atoms) acc += a.mass * detail::powi(std::fabs(a.location), r);
    for (const StepPiece& p : law.steps) {
        const double alo = std::fabs(p.lo);
        const double ahi = std::fabs(p.hi);
        double piece;
        if (p.lo >= 0.0)      piece = detail::powi(ahi, r + 1) - detail::powi(alo, r + 1);
        else if (p.hi <= 0.0) piece = detail::powi(alo, r + 1) - detail::powi(ahi, r + 1);
        else                  piece = detail::powi(alo, r + 1) + detail::powi(ahi, r + 1);
        acc += p.height * piece / (r + 1);
    }
    return acc;
}

// Best rectangle under the density in the h * w^3 sense, searched over the
// maximal constant-height runs of the normalized profile. Height and width
// are clamped to 1 before scoring (taller or wider runs only ever help, so
// the clamped sub-rectangle keeps the run's left edge). Ties go to the
// leftmost run.
inline DensityRectangle density_rectangle(const MixedLaw& law) {
    if (law.steps.empty())
        throw NoDensityError("density_rectangle: law has no density component");
    DensityRectangle best;
    double best_score = -1.0;
    for (const StepPiece& p : law.steps) {
        const double h = std::min(p.height, 1.0);
        const double w = std::min(p.hi - p.lo, 1.0);
        const double score = h * w * w * w;
        if (score > best_score) {
            best_score = score;
            best = {p.lo, w, h};
        }
    }
    return best;
}

} // namespace berrylab
