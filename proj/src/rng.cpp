#include "sparsecol/rng.hpp"

namespace sparsecol {

namespace {

__extension__ using u128 = unsigned __int128;

template <class Draw>
std::uint64_t lemire(std::uint64_t bound, Draw&& draw)
{
    if (bound <= 1) return 0;
    std::uint64_t x = draw();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = draw();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace

std::uint64_t CounterRng::uniform(Stream stream, std::uint64_t round, std::uint64_t entity,
                                  std::uint64_t bound) const noexcept
{
    std::uint64_t counter = 0;
    return lemire(bound, [&] { return raw(stream, round, entity, counter++); });
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) noexcept
{
    return lemire(bound, [&] { return next(); });
}

}  // namespace sparsecol
