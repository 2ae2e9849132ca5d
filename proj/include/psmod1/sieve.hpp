#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psmod1 {

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 38;
/// Odd numbers per sieve segment.
inline constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 20;

/// n = p^k; Lambda(n) = log p.
struct PrimePower {
    std::uint64_t p = 0;
    int k = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes, von Mangoldt witnesses and the Moebius function on [1, limit].
///
/// Primality is an odd-number bitset (bit i <-> 2i+1). Lambda is stored as a
/// factorization witness: primes come from the bitset, proper prime powers from
/// a short sorted side table. Immutable after construction.
class ArithmeticTables {
public:
    ArithmeticTables() = default;

    std::uint64_t limit() const { return limit_; }

    bool is_prime(std::uint64_t n) const {
        if (n < 2 || n > limit_) return false;
        if (n == 2) return true;
        if ((n & 1) == 0) return false;
        const std::uint64_t i = n >> 1;
        return (odd_bits_[i >> 6] >> (i & 63)) & 1;
    }

    std::optional<PrimePower> lambda_witness(std::uint64_t n) const;
    double lambda(std::uint64_t n) const {
        const auto w = lambda_witness(n);
        return w ? std::log(static_cast<double>(w->p)) : 0.0;
    }
    int mu(std::uint64_t n) const;

    /// Calls fn(p) for every prime p in (lo, hi], ascending.
    template <class Fn>
    void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
        if (hi > limit_) hi = limit_;
        if (lo < 2 && hi >= 2) fn(std::uint64_t{2});
        if (hi < 3 || lo >= hi) return;
        // odd candidates n = 2i+1 with lo < n <= hi
        std::uint64_t first = lo < 2 ? 1 : (lo + 1) / 2;  // smallest i with 2i+1 > lo
        if (first == 0) first = 1;
        const std::uint64_t last = (hi - 1) / 2;  // largest i with 2i+1 <= hi
        for (std::uint64_t w = first >> 6; w <= (last >> 6); ++w) {
            std::uint64_t word = odd_bits_[w];
            if (w == (first >> 6)) word &= ~std::uint64_t{0} << (first & 63);
            if (w == (last >> 6) && (last & 63) != 63)
                word &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
            while (word) {
                const int b = std::countr_zero(word);
                fn(2 * ((w << 6) + static_cast<std::uint64_t>(b)) + 1);
                word &= word - 1;
            }
        }
    }

    std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;
    std::uint64_t prime_count(std::uint64_t x) const;

    std::span<const std::uint64_t> odd_bits() const { return odd_bits_; }

    friend bool operator==(const ArithmeticTables&, const ArithmeticTables&) = default;

private:
    friend ArithmeticTables sieve_range(std::uint64_t limit);
    friend ArithmeticTables load_cache(const std::filesystem::path& path);
    static ArithmeticTables build(std::uint64_t limit, const std::vector<std::uint64_t>* expected_bits);

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> odd_bits_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> power_n_;  // proper prime powers, ascending
    std::vector<PrimePower> power_witness_;
};

/// Segmented sieve over [1, limit]; segments run in parallel and write
/// disjoint words, so the result does not depend on the worker count.
ArithmeticTables sieve_range(std::uint64_t limit);

/// Ordered factorizations of n into k positive factors.
std::uint64_t tau_k(std::uint64_t n, int k);

// --- PrimeCacheFile ------------------------------------------------------
//
//   offset  size  field
//   0       4     magic "PSPC"
//   4       2     version (u16 LE) = 1
//   6       8     limit (u64 LE)
//   14      8*W   payload: odd-number bitset as u64 LE words, W = ceil(((limit+1)/2)/64)
//   14+8W   8     FNV-1a 64 over the payload bytes (u64 LE)

inline constexpr char kCacheMagic[4] = {'P', 'S', 'P', 'C'};
inline constexpr std::uint16_t kCacheVersion = 1;

std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
void save_cache(const ArithmeticTables& tables, const std::filesystem::path& path);
ArithmeticTables load_cache(const std::filesystem::path& path);

/// Cache path from PSMOD1_CACHE, or empty when unset.
std::string cache_path_from_env();

/// Loads `path` if it exists and covers `limit`, otherwise sieves (and saves
/// when a path is given).
ArithmeticTables obtain_tables(std::uint64_t limit, const std::string& path);

}  // namespace psmod1
