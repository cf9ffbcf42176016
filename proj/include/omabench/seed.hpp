#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace omabench {

/// Fixed master seed used whenever none is supplied.
inline constexpr std::uint64_t kDefaultSeed = 20190417ULL;

/// Purpose tags keep force and noise streams apart for identical indices.
enum class SeedPurpose : std::uint64_t { Force = 1, Noise = 2 };

/**
 * Child seed from a master seed and an index path.
 *
 * Stable across platforms and runs: a splitmix64 chain over the master seed,
 * the purpose tag, a hash of the beam id and the integer indices.
 */
std::uint64_t derive_seed(std::uint64_t master, SeedPurpose purpose, std::string_view beam_id,
                          std::initializer_list<std::uint64_t> indices);

}  // namespace omabench
