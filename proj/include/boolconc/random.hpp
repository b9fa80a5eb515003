#pragma once

#include <cstdint>
#include <random>

namespace boolconc {

using Rng = std::mt19937_64;

/// Seed for an independent stream `stream` derived from a master seed
/// (splitmix64 finalizer over the pair).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
    return Rng(derive_seed(master, stream));
}

}  // namespace boolconc
