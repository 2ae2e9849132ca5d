#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "oracle.hpp"
#include "psmod1/error.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/sieve.hpp"

using namespace psmod1;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / (std::string("psmod1_") + name);
}

std::vector<unsigned char> read_all(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const std::filesystem::path& p, const std::vector<unsigned char>& b) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

}  // namespace

TEST_CASE("sieve_range examples") {
    const auto t100 = sieve_range(100);
    CHECK(t100.prime_count(100) == 25);
    const auto t2 = sieve_range(2);
    CHECK(t2.primes(0, 2) == std::vector<std::uint64_t>{2});
    const auto t30 = sieve_range(30);
    CHECK(t30.mu(30) == -1);
    CHECK(t30.lambda(8) == std::log(2.0));
    CHECK(t30.lambda(12) == 0.0);
    CHECK_THROWS_AS(sieve_range(1), ContractError);
    CHECK_THROWS_AS(sieve_range(kMaxSieveLimit + 1), ContractError);
}

TEST_CASE("tables agree with trial division up to 1e5") {
    const auto t = sieve_range(100'000);
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        REQUIRE(t.is_prime(n) == oracle::is_prime_td(n));
        REQUIRE(t.lambda(n) == oracle::von_mangoldt_td(n));
        REQUIRE(t.mu(n) == oracle::moebius_td(n));
    }
}

TEST_CASE("tables span several segments") {
    // three segments plus a partial one
    const std::uint64_t limit = 3 * 2 * kSegmentOdds + 12345;
    const auto t = sieve_range(limit);
    const auto flags = oracle::prime_flags(limit);
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n <= limit; ++n) {
        REQUIRE(t.is_prime(n) == flags[n]);
        count += flags[n];
    }
    CHECK(t.prime_count(limit) == count);
    for (std::uint64_t n = limit - 2000; n <= limit; ++n) REQUIRE(t.mu(n) == oracle::moebius_td(n));
}

TEST_CASE("Moebius inversion and Chebyshev scale") {
    const auto t = sieve_range(1'000'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        int s = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            s += t.mu(d);
            if (d * d != n) s += t.mu(n / d);
        }
        REQUIRE(s == (n == 1 ? 1 : 0));
    }
    double psi = 0.0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) psi += t.lambda(n);
    CHECK(psi / 1e6 >= 0.8);
    CHECK(psi / 1e6 <= 1.2);
}

TEST_CASE("sieve result does not depend on worker count") {
    const std::uint64_t limit = 5 * 2 * kSegmentOdds + 77;
    set_worker_count(1);
    const auto a = sieve_range(limit);
    set_worker_count(4);
    const auto b = sieve_range(limit);
    set_worker_count(0);
    CHECK(a == b);
}

TEST_CASE("tau_k examples") {
    CHECK(tau_k(1, 2) == 1);
    CHECK(tau_k(1, 7) == 1);
    CHECK(tau_k(4, 2) == 3);
    CHECK(tau_k(6, 3) == 9);
    // brute force for small n
    for (std::uint64_t n = 1; n <= 200; ++n) {
        std::uint64_t c = 0;
        for (std::uint64_t a = 1; a <= n; ++a)
            for (std::uint64_t b = 1; a * b <= n; ++b)
                if (n % (a * b) == 0) ++c;
        REQUIRE(tau_k(n, 3) == c);
    }
}

TEST_CASE("cache round trip and forced failures") {
    const auto path = temp_file("cache_rt.bin");
    const auto t = sieve_range(10'000);
    save_cache(t, path);
    CHECK(load_cache(path) == t);

    auto bytes = read_all(path);
    REQUIRE(bytes.size() > 30);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "PSPC");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);

    auto corrupt = bytes;
    corrupt[20] ^= 0x10;
    const auto bad = temp_file("cache_bad.bin");
    write_all(bad, corrupt);
    CHECK_THROWS_AS(load_cache(bad), CacheError);

    auto version = bytes;
    version[4] = 0xE7;  // 999 little-endian
    version[5] = 0x03;
    write_all(bad, version);
    CHECK_THROWS_AS(load_cache(bad), CacheError);

    auto magic = bytes;
    magic[0] = 'X';
    write_all(bad, magic);
    CHECK_THROWS_AS(load_cache(bad), CacheError);

    bytes.resize(bytes.size() - 3);
    write_all(bad, bytes);
    CHECK_THROWS_AS(load_cache(bad), CacheError);

    CHECK_THROWS_AS(load_cache(temp_file("does_not_exist.bin")), CacheError);
    std::filesystem::remove(path);
    std::filesystem::remove(bad);
}

TEST_CASE("fnv1a64 reference vectors") {
    const unsigned char empty[1] = {0};
    CHECK(fnv1a64(std::span<const unsigned char>(empty, 0)) == 0xcbf29ce484222325ULL);
    const unsigned char a[] = {'a'};
    CHECK(fnv1a64(a) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("obtain_tables reuses a larger cache") {
    const auto path = temp_file("cache_obtain.bin");
    std::filesystem::remove(path);
    const auto big = obtain_tables(50'000, path.string());
    CHECK(std::filesystem::exists(path));
    const auto again = obtain_tables(20'000, path.string());
    CHECK(again.limit() == 50'000);
    CHECK(again == big);
    std::filesystem::remove(path);
}
