#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace mlp {

/// Hierarchical splittable random key. A key identifies one member of a
/// family of independent random streams; deriving children with distinct
/// (branch, indices) yields statistically independent streams. Keys are
/// immutable values and safe to copy across threads.
struct RngKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    /// Digest of the derivation path from the root, for diagnostics only.
    std::uint64_t path_digest = 0;
};

/// Branch tags for child-key derivation. Distinct tags give independent
/// streams even for identical index tuples.
enum class Branch : std::uint64_t {
    TerminalSample = 1,  // terminal-difference Monte Carlo sample i
    FSampleCurrent = 2,  // inner iterate U_l at sample (l,i) and node j
    FSamplePrevious = 3, // inner iterate U_{l-1} at sample (l,i) and node j
    Path = 4,            // Brownian path of sample (l,i)
    Run = 5,             // top-level independent run
};

/// Threefry-2x64, 20 rounds. Fixed mixing function, platform independent.
std::array<std::uint64_t, 2> threefry2x64(std::array<std::uint64_t, 2> key,
                                          std::array<std::uint64_t, 2> ctr);

/// Derives the root key for a 64-bit seed. All randomness of a run is a
/// pure function of this key.
RngKey root_key_from_seed(std::uint64_t seed);

/// Derives a child key. Deterministic; distinct (branch, indices) pairs
/// under the same parent give independent streams.
RngKey derive_child_key(const RngKey& parent, Branch branch,
                        std::span<const std::int64_t> indices);
RngKey derive_child_key(const RngKey& parent, Branch branch,
                        std::initializer_list<std::int64_t> indices);

/// Counts scalar standard-normal draws consumed by a computation.
struct DrawCounter {
    std::uint64_t count = 0;
};

/// Fills `out` with standard normal variates: draw j depends only on
/// (key, j), so prefixes of a stream are stable. Uses the inverse-CDF
/// method on 64-bit uniforms (branch-free, platform-stable).
void standard_normals(const RngKey& key, std::span<double> out,
                      DrawCounter* counter = nullptr);

/// The j-th uniform in (0,1) of the key's stream.
double uniform01(const RngKey& key, std::uint64_t j);

/// Inverse of the standard normal CDF (Wichura's AS241, ~1 ulp in double).
double inverse_normal_cdf(double p);

std::string format_key(const RngKey& key);

} // namespace mlp
