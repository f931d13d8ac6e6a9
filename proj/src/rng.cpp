#include "mlp/rng.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mlp {

namespace {

constexpr std::uint64_t kSkeinParity = 0x1BD11BDAA9FC1A22ULL;
// Rotation schedule of Threefry-2x64 (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3").
constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

inline std::uint64_t rotl(std::uint64_t x, int r) {
    return (x << r) | (x >> (64 - r));
}

// splitmix64 finalizer; used for the diagnostic path digest only.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Domain-separation salts: derivation counters and draw counters must not
// collide as PRF inputs under the same key.
constexpr std::uint64_t kBranchSalt = 0x3C79AC492BA7B653ULL;
constexpr std::uint64_t kDrawSalt = 0x1518284D2B48AE5FULL;
constexpr std::uint64_t kRootKeyHi = 0x243F6A8885A308D3ULL; // pi digits
constexpr std::uint64_t kRootKeyLo = 0x13198A2E03707344ULL;

} // namespace

std::array<std::uint64_t, 2> threefry2x64(std::array<std::uint64_t, 2> key,
                                          std::array<std::uint64_t, 2> ctr) {
    const std::uint64_t ks[3] = {key[0], key[1], kSkeinParity ^ key[0] ^ key[1]};
    std::uint64_t x0 = ctr[0] + ks[0];
    std::uint64_t x1 = ctr[1] + ks[1];
    for (int round = 0; round < 20; ++round) {
        x0 += x1;
        x1 = rotl(x1, kRot[round % 8]);
        x1 ^= x0;
        if ((round & 3) == 3) {
            const std::uint64_t w = static_cast<std::uint64_t>(round / 4) + 1;
            x0 += ks[w % 3];
            x1 += ks[(w + 1) % 3] + w;
        }
    }
    return {x0, x1};
}

RngKey root_key_from_seed(std::uint64_t seed) {
    const auto words =
        threefry2x64({kRootKeyHi, kRootKeyLo}, {seed, 0x5EED5EED5EED5EEDULL});
    return RngKey{words[0], words[1], mix64(seed)};
}

RngKey derive_child_key(const RngKey& parent, Branch branch,
                        std::span<const std::int64_t> indices) {
    auto words = threefry2x64(
        {parent.hi, parent.lo},
        {kBranchSalt ^ static_cast<std::uint64_t>(branch), indices.size()});
    std::uint64_t digest =
        mix64(parent.path_digest ^ (static_cast<std::uint64_t>(branch) * 0x9E3779B97F4A7C15ULL));
    for (std::size_t p = 0; p < indices.size(); ++p) {
        const auto idx = static_cast<std::uint64_t>(indices[p]);
        words = threefry2x64(words, {idx, p + 1});
        digest = mix64(digest ^ (idx + 0x9E3779B97F4A7C15ULL));
    }
    return RngKey{words[0], words[1], digest};
}

RngKey derive_child_key(const RngKey& parent, Branch branch,
                        std::initializer_list<std::int64_t> indices) {
    return derive_child_key(
        parent, branch, std::span<const std::int64_t>(indices.begin(), indices.size()));
}

namespace {

inline double u64_to_unit_open(std::uint64_t x) {
    // 53-bit mantissa grid, offset to the open interval (0,1).
    return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

} // namespace

double inverse_normal_cdf(double p) {
    // Wichura (1988), algorithm AS241, PPND16.
    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,
        1.9715909503065514427e3,  1.3731693765509461125e4,
        4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e1,
        6.8718700749205790830e2,  5.3941960214247511077e3,
        2.1213794301586595867e4,  3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0,
        5.76949722146069140550e0, 3.64784832476320460504e0,
        1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                      2.05319162663775882187e0,
        1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0,
        1.78482653991729133580e0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                      5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    auto poly = [](const double* k, double r) {
        double acc = k[7];
        for (int i = 6; i >= 0; --i) acc = acc * r + k[i];
        return acc;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        val = poly(e, r) / poly(f, r);
    }
    return (q < 0.0) ? -val : val;
}

double uniform01(const RngKey& key, std::uint64_t j) {
    const auto words = threefry2x64({key.hi, key.lo}, {j >> 1, kDrawSalt});
    return u64_to_unit_open(words[j & 1]);
}

void standard_normals(const RngKey& key, std::span<double> out,
                      DrawCounter* counter) {
    const std::array<std::uint64_t, 2> k{key.hi, key.lo};
    std::size_t j = 0;
    const std::size_t n = out.size();
    while (j < n) {
        const auto words = threefry2x64(k, {static_cast<std::uint64_t>(j >> 1), kDrawSalt});
        out[j] = inverse_normal_cdf(u64_to_unit_open(words[0]));
        ++j;
        if (j < n) {
            out[j] = inverse_normal_cdf(u64_to_unit_open(words[1]));
            ++j;
        }
    }
    if (counter) counter->count += n;
}

std::string format_key(const RngKey& key) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "key{%016llx%016llx path=%016llx}",
                  static_cast<unsigned long long>(key.hi),
                  static_cast<unsigned long long>(key.lo),
                  static_cast<unsigned long long>(key.path_digest));
    return buf;
}

} // namespace mlp
