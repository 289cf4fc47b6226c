// Monte Carlo accumulation with reproducible, thread-count independent streams.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "telefid/rng.hpp"

namespace telefid {

/// Streaming central moments up to fourth order (Welford / Pebay), mergeable.
class RunningMoments {
public:
    void push(double x) noexcept {
        const double n1 = static_cast<double>(n_);
        ++n_;
        const double n = static_cast<double>(n_);
        const double delta = x - mean_;
        const double delta_n = delta / n;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * n1;
        mean_ += delta_n;
        m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
        m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
        m2_ += term1;
    }

    void merge(const RunningMoments& b) noexcept {
        if (b.n_ == 0) {
            return;
        }
        if (n_ == 0) {
            *this = b;
            return;
        }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(b.n_);
        const double n = na + nb;
        const double delta = b.mean_ - mean_;
        const double d2 = delta * delta;
        const double d3 = d2 * delta;
        const double d4 = d2 * d2;
        const double mean = mean_ + delta * nb / n;
        const double m2 = m2_ + b.m2_ + d2 * na * nb / n;
        const double m3 = m3_ + b.m3_ + d3 * na * nb * (na - nb) / (n * n) + 3.0 * delta * (na * b.m2_ - nb * m2_) / n;
        const double m4 = m4_ + b.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                          6.0 * d2 * (na * na * b.m2_ + nb * nb * m2_) / (n * n) +
                          4.0 * delta * (na * b.m3_ - nb * m3_) / n;
        n_ += b.n_;
        mean_ = mean;
        m2_ = m2;
        m3_ = m3;
        m4_ = m4;
    }

    [[nodiscard]] std::uint64_t count() const noexcept { return n_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    /// Population variance (divisor n).
    [[nodiscard]] double variance() const noexcept { return n_ > 0 ? m2_ / static_cast<double>(n_) : 0.0; }
    [[nodiscard]] double deviation() const noexcept { return std::sqrt(std::max(0.0, variance())); }

    [[nodiscard]] double standard_error() const noexcept {
        if (n_ < 2) {
            return 0.0;
        }
        const double n = static_cast<double>(n_);
        return std::sqrt(m2_ / (n - 1.0) / n);
    }

    /// Large-sample standard error of deviation(): sqrt((mu4 - sigma^4) / (4 sigma^2 n)).
    [[nodiscard]] double deviation_standard_error() const noexcept {
        const double var = variance();
        if (n_ < 2 || var <= 0.0) {
            return 0.0;
        }
        const double n = static_cast<double>(n_);
        const double mu4 = m4_ / n;
        return std::sqrt(std::max(0.0, mu4 - var * var) / (4.0 * var * n));
    }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

/// Worker count: TELEFID_THREADS if set, otherwise the hardware concurrency.
[[nodiscard]] inline unsigned default_thread_count() {
    if (const char* env = std::getenv("TELEFID_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) {
                return static_cast<unsigned>(n);
            }
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline constexpr std::uint64_t monte_carlo_chunk = 1u << 15;

/// Splits `samples` into fixed chunks, each with its own stream derived from
/// (seed, chunk index), and merges the per-chunk accumulators in chunk order.
/// The result is therefore identical for any worker count.
///
/// `body(rng, count)` must return an accumulator with a `merge` member.
template <class Acc, class Body>
[[nodiscard]] Acc parallel_accumulate(std::uint64_t samples, std::uint64_t seed, Body body,
                                      unsigned threads = default_thread_count()) {
    const std::uint64_t chunks = (samples + monte_carlo_chunk - 1) / monte_carlo_chunk;
    std::vector<Acc> partial(chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            Rng rng = make_stream(seed, c);
            const std::uint64_t count = std::min(monte_carlo_chunk, samples - c * monte_carlo_chunk);
            partial[c] = body(rng, count);
        }
    };
    const unsigned n_workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), chunks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    Acc total{};
    for (const auto& p : partial) {
        total.merge(p);
    }
    return total;
}

/// A Monte Carlo mean with its standard error.
struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

}  // namespace telefid
