#pragma once

#include <cstdint>

namespace sparsecol {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Streams used to keep per-entity draws of different kinds apart.
enum class Stream : std::uint64_t {
    tentative_colour = 1,
    direction = 2,
    restart = 3,
    iteration = 4,
    trial = 5,
    generator = 6,
};

// Counter-based generator: every draw is a pure function of
// (seed, stream, round, entity, counter), so results never depend on the
// order in which entities are visited or on how work is split across threads.
class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    constexpr std::uint64_t raw(Stream stream, std::uint64_t round, std::uint64_t entity,
                                std::uint64_t counter = 0) const noexcept
    {
        std::uint64_t x = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
        x = mix64(x ^ static_cast<std::uint64_t>(stream));
        x = mix64(x ^ round);
        x = mix64(x ^ entity);
        return mix64(x ^ counter);
    }

    // Unbiased draw from [0, bound) by Lemire's multiply-and-reject.
    std::uint64_t uniform(Stream stream, std::uint64_t round, std::uint64_t entity,
                          std::uint64_t bound) const noexcept;

    bool coin(Stream stream, std::uint64_t round, std::uint64_t entity) const noexcept
    {
        return (raw(stream, round, entity) >> 63) != 0;
    }

private:
    std::uint64_t seed_;
};

// Child seed for the index-th sub-experiment (restart, iteration, trial...).
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) noexcept
{
    return CounterRng(master).raw(stream, index, 0, 0xd1b54a32d192ed03ULL);
}

// Sequential generator for graph construction and other order-dependent work.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        const std::uint64_t x = state_;
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(x);
    }

    std::uint64_t uniform(std::uint64_t bound) noexcept;

    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace sparsecol
