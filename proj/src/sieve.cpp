#include "psmod1/sieve.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>

#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"

namespace psmod1 {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t word_count(std::uint64_t limit) {
    const std::uint64_t odds = (limit + 1) / 2;
    return (odds + 63) / 64;
}

void put_u16(std::ostream& os, std::uint16_t v) {
    const std::array<unsigned char, 2> b{static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
    os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

ArithmeticTables ArithmeticTables::build(std::uint64_t limit,
                                         const std::vector<std::uint64_t>* expected_bits) {
    require(limit >= 2 && limit <= kMaxSieveLimit,
            "sieve_range: limit must lie in [2, 2^38], got " + std::to_string(limit));
    ArithmeticTables t;
    t.limit_ = limit;
    t.odd_bits_.assign(word_count(limit), 0);
    t.mu_.assign(limit + 1, 0);

    const std::uint64_t root = isqrt(limit);
    const auto base = small_primes(root);

    const auto segment = static_cast<std::int64_t>(2 * kSegmentOdds);
    map_chunks(
        0, static_cast<std::int64_t>(limit) + 1,
        [&](std::int64_t lo_s, std::int64_t hi_s) {
            const auto lo = static_cast<std::uint64_t>(lo_s);
            const auto hi = static_cast<std::uint64_t>(hi_s);
            const std::uint64_t len = hi - lo;
            std::vector<std::int8_t> mu(len, 1);
            std::vector<std::uint64_t> prod(len, 1);
            for (const std::uint64_t p : base) {
                if (p * p > hi - 1) break;
                std::uint64_t start = std::max<std::uint64_t>(p, (lo + p - 1) / p * p);
                for (std::uint64_t m = start; m < hi; m += p) {
                    mu[m - lo] = static_cast<std::int8_t>(-mu[m - lo]);
                    prod[m - lo] *= p;
                }
                const std::uint64_t pp = p * p;
                start = std::max<std::uint64_t>(pp, (lo + pp - 1) / pp * pp);
                for (std::uint64_t m = start; m < hi; m += pp) mu[m - lo] = 0;
            }
            const std::uint64_t first_word = lo / 128;
            const std::uint64_t last_word = std::min<std::uint64_t>(t.odd_bits_.size(), (hi + 127) / 128);
            std::vector<std::uint64_t> words(last_word - first_word, 0);
            for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n < hi; ++n) {
                const std::uint64_t k = n - lo;
                if (mu[k] != 0 && prod[k] != n) mu[k] = static_cast<std::int8_t>(-mu[k]);
                t.mu_[n] = mu[k];
                if ((n & 1) == 0 || n == 1) continue;
                const bool prime = prod[k] == 1 || (n <= root && std::binary_search(base.begin(), base.end(), n));
                if (prime) {
                    const std::uint64_t i = n >> 1;
                    words[(i >> 6) - first_word] |= std::uint64_t{1} << (i & 63);
                }
            }
            std::copy(words.begin(), words.end(), t.odd_bits_.begin() + static_cast<std::ptrdiff_t>(first_word));
            return 0;
        },
        segment);

    if (expected_bits && *expected_bits != t.odd_bits_)
        throw CacheError("load_cache: stored prime bitset disagrees with the sieve");

    for (const std::uint64_t p : base) {
        std::uint64_t q = p * p;
        int k = 2;
        while (q <= limit) {
            t.power_n_.push_back(q);
            t.power_witness_.push_back({p, k});
            if (q > limit / p) break;
            q *= p;
            ++k;
        }
    }
    std::vector<std::size_t> order(t.power_n_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t.power_n_[a] < t.power_n_[b]; });
    std::vector<std::uint64_t> pn;
    std::vector<PrimePower> pw;
    for (auto i : order) {
        pn.push_back(t.power_n_[i]);
        pw.push_back(t.power_witness_[i]);
    }
    t.power_n_ = std::move(pn);
    t.power_witness_ = std::move(pw);
    return t;
}

std::optional<PrimePower> ArithmeticTables::lambda_witness(std::uint64_t n) const {
    require(n >= 1 && n <= limit_, "lambda: n outside [1, limit]");
    if (is_prime(n)) return PrimePower{n, 1};
    const auto it = std::lower_bound(power_n_.begin(), power_n_.end(), n);
    if (it != power_n_.end() && *it == n) return power_witness_[static_cast<std::size_t>(it - power_n_.begin())];
    return std::nullopt;
}

int ArithmeticTables::mu(std::uint64_t n) const {
    require(n >= 1 && n <= limit_, "mu: n outside [1, limit]");
    return mu_[n];
}

std::vector<std::uint64_t> ArithmeticTables::primes(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::uint64_t ArithmeticTables::prime_count(std::uint64_t x) const {
    require(x <= limit_, "prime_count: x exceeds table limit");
    std::uint64_t count = x >= 2 ? 1 : 0;
    if (x < 3) return count;
    const std::uint64_t last = (x - 1) / 2;
    for (std::uint64_t w = 0; w < (last >> 6); ++w) count += std::popcount(odd_bits_[w]);
    std::uint64_t tail = odd_bits_[last >> 6];
    if ((last & 63) != 63) tail &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
    return count + std::popcount(tail);
}

ArithmeticTables sieve_range(std::uint64_t limit) { return ArithmeticTables::build(limit, nullptr); }

std::uint64_t tau_k(std::uint64_t n, int k) {
    require(n >= 1, "tau_k: n must be >= 1");
    require(k >= 1, "tau_k: k must be >= 1");
    // prod over p^e || n of C(e + k - 1, k - 1)
    auto binom = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::uint64_t result = 1;
    const auto kk = static_cast<std::uint64_t>(k);
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        std::uint64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) result *= binom(e + kk - 1, kk - 1 < e ? kk - 1 : e);
    }
    if (n > 1) result *= kk;
    return result;
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::vector<unsigned char> payload_bytes(std::span<const std::uint64_t> words) {
    std::vector<unsigned char> out(words.size() * 8);
    for (std::size_t w = 0; w < words.size(); ++w)
        for (int i = 0; i < 8; ++i) out[w * 8 + i] = static_cast<unsigned char>(words[w] >> (8 * i));
    return out;
}

}  // namespace

void save_cache(const ArithmeticTables& tables, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError("save_cache: cannot open " + path.string());
    const auto payload = payload_bytes(tables.odd_bits());
    os.write(kCacheMagic, 4);
    put_u16(os, kCacheVersion);
    put_u64(os, tables.limit());
    os.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    put_u64(os, fnv1a64(payload));
    if (!os) throw CacheError("save_cache: write failed for " + path.string());
}

ArithmeticTables load_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CacheError("load_cache: cannot open " + path.string());
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (raw.size() < 14 + 8) throw CacheError("load_cache: file too short");
    if (!std::equal(raw.begin(), raw.begin() + 4, kCacheMagic)) throw CacheError("load_cache: bad magic");
    const std::uint16_t version = static_cast<std::uint16_t>(raw[4] | (raw[5] << 8));
    if (version != kCacheVersion)
        throw CacheError("load_cache: unsupported version " + std::to_string(version));
    const std::uint64_t limit = get_u64(raw.data() + 6);
    if (limit < 2 || limit > kMaxSieveLimit) throw CacheError("load_cache: limit out of range");
    const std::uint64_t words = word_count(limit);
    if (raw.size() != 14 + 8 * words + 8) throw CacheError("load_cache: size does not match limit");
    const std::span<const unsigned char> payload(raw.data() + 14, 8 * words);
    if (fnv1a64(payload) != get_u64(raw.data() + 14 + 8 * words))
        throw CacheError("load_cache: checksum mismatch");
    std::vector<std::uint64_t> bits(words);
    for (std::uint64_t w = 0; w < words; ++w) bits[w] = get_u64(payload.data() + 8 * w);
    return ArithmeticTables::build(limit, &bits);
}

std::string cache_path_from_env() {
    const char* v = std::getenv("PSMOD1_CACHE");
    return v ? std::string(v) : std::string();
}

ArithmeticTables obtain_tables(std::uint64_t limit, const std::string& path) {
    if (!path.empty() && std::filesystem::exists(path)) {
        auto t = load_cache(path);
        if (t.limit() >= limit) return t;
    }
    auto t = sieve_range(limit);
    if (!path.empty()) save_cache(t, path);
    return t;
}

}  // namespace psmod1
