#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace negdep {

/// xoshiro256** seeded through splitmix64. Self-contained so that streams
/// are bit-reproducible across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// The 53-bit numerator of next_unit (dyadic tail representation).
    std::uint64_t next_bits53() { return next() >> 11; }

    /// Uniform in [0, bound), unbiased by rejection. bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> state_;
};

/// Named derivation of independent seed streams from one root seed.
/// Children are keyed by integer salts or string tags; the derivation is a
/// pure hash, so stream identity never depends on evaluation order.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t key) : key_(key) {}

    SeedStream child(std::uint64_t salt) const;
    SeedStream child(std::string_view tag) const;

    std::uint64_t key() const { return key_; }
    Rng rng() const { return Rng(key_); }

private:
    std::uint64_t key_;
};

/// Identity permutation 0..n-1 shuffled by rng.
std::vector<std::uint32_t> random_permutation(std::uint32_t n, Rng& rng);

}  // namespace negdep
