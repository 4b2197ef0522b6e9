#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

#include "berrylab/errors.hpp"
#include "berrylab/laws.hpp"

namespace berrylab {

// Addresses one deterministic random stream. Draws depend only on
// (master_seed, stream_index, position), never on thread count or timing.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

namespace rng {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

// 64-bit finalizer (splitmix64 style): bijective, avalanching.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Counter-based generator: state walks a Weyl sequence, outputs are the
// mixed counter. Stream seeding hashes (master, stream) so distinct stream
// indices give statistically independent sequences.
class CounterStream {
public:
    explicit CounterStream(const SeedSpec& seed)
        : state_(mix64(seed.master_seed ^ (golden_gamma * seed.stream_index))) {}

    std::uint64_t next_u64() {
        state_ += golden_gamma;
        return mix64(state_);
    }

    // uniform on [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace rng

// Inverse-free sampler for a mixed law: one uniform picks the component by
// cumulative mass, a second places the point inside a step piece. The second
// uniform is consumed even for atoms so every draw advances the stream by
// exactly two steps, keeping draw positions addressable.
class LawSampler {
public:
    explicit LawSampler(const MixedLaw& law) {
        double cum = 0.0;
        for (const Atom& a : law.atoms) {
            cum += a.mass;
            rows_.push_back({cum, a.location, a.location});
        }
        for (const StepPiece& p : law.steps) {
            cum += p.height * (p.hi - p.lo);
            rows_.push_back({cum, p.lo, p.hi});
        }
        if (rows_.empty()) throw DomainError("LawSampler: law has no components");
        rows_.back().cum = 1.0;
    }

    double draw(rng::CounterStream& g) const {
        const double u1 = g.next_unit();
        const double u2 = g.next_unit();
        std::size_t i = 0;
        while (i + 1 < rows_.size() && u1 >= rows_[i].cum) ++i;
        const Row& r = rows_[i];
        if (r.lo == r.hi) return r.lo;
        return r.lo + u2 * (r.hi - r.lo);
    }

private:
    struct Row {
        double cum;
        double lo, hi;
    };
    std::vector<Row> rows_;
};

// Thread count resolution: explicit request wins, then BERRYLAB_THREADS,
// then 1. Never returns 0.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BERRYLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

// n i.i.d. draws from the law, sequentially from one stream.
inline std::vector<double> sample_law(const MixedLaw& law, std::int64_t n, SeedSpec seed) {
    if (n < 0) throw DomainError("sample_law: sample count must be non-negative");
    const LawSampler sampler(law);
    rng::CounterStream g(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = sampler.draw(g);
    return out;
}

namespace detail {
constexpr std::int64_t mc_chunk_reps = 65536;
}

// reps replications of (X_1 + ... + X_N) / sqrt(N). Work is cut into fixed
// chunks of 65536 replications; chunk c always uses stream index
// seed.stream_index + c, so the output is byte-identical for any thread
// count. A run therefore owns ceil(reps / 65536) consecutive stream indices
// starting at seed.stream_index; callers running several jobs off one master
// seed should space their stream indices accordingly.
inline std::vector<double> sample_normalized_sum(const MixedLaw& law, std::int64_t N,
                                                 std::int64_t reps, SeedSpec seed,
                                                 unsigned threads = 0) {
    if (N < 1) throw DomainError("sample_normalized_sum: N must be >= 1");
    if (reps < 0) throw DomainError("sample_normalized_sum: reps must be non-negative");
    const LawSampler sampler(law);
    std::vector<double> out(static_cast<std::size_t>(reps));
    if (reps == 0) return out;

    const std::int64_t n_chunks =
        (reps + detail::mc_chunk_reps - 1) / detail::mc_chunk_reps;
    const double root_n = std::sqrt(static_cast<double>(N));

    std::atomic<std::int64_t> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) return;
            rng::CounterStream g(SeedSpec{seed.master_seed, seed.stream_index
                                                                + static_cast<std::uint64_t>(c)});
            const std::int64_t lo = c * detail::mc_chunk_reps;
            const std::int64_t hi = std::min(reps, lo + detail::mc_chunk_reps);
            for (std::int64_t r = lo; r < hi; ++r) {
                double sum = 0.0;
                for (std::int64_t i = 0; i < N; ++i) sum += sampler.draw(g);
                out[static_cast<std::size_t>(r)] = sum / root_n;
            }
        }
    };

    const unsigned t = std::min<unsigned>(resolve_threads(threads),
                                          static_cast<unsigned>(n_chunks));
    if (t <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(t);
        for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace berrylab
