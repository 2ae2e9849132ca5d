#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "psmod1/fourier.hpp"
#include "psmod1/psset.hpp"
#include "psmod1/sieve.hpp"

namespace psmod1 {

struct TheoremReport {
    double theta = 0.0;
    double epsilon = 0.0;
    std::uint64_t limit = 0;
    std::uint64_t witness_count = 0;
    std::vector<PrimeRecord> sample_witnesses;  // the first few, ascending
    std::uint64_t total_intersection_primes = 0;
};

struct MinimaRecord {
    std::uint64_t p = 0;
    double value = 0.0;  // ||alpha p + beta||
    std::uint64_t rank = 0;
    friend bool operator==(const MinimaRecord&, const MinimaRecord&) = default;
};

struct UpsilonReport {
    double total = 0.0;  // definition form over the intersection primes
    std::array<double, 4> parts{};
    double delta = 0.0;
    std::int64_t T = 0;
    std::uint64_t N = 0;

    double parts_sum() const;
    /// |total - sum(parts)| / max(1, |total|)
    double identity_error() const;
};

struct CountingRow {
    double x = 0.0;
    std::uint64_t count = 0;
    double main_term = 0.0;
    double ratio = 0.0;  // 0 when count is 0
};

/// sum over p <= N in both sets of (F_Delta(alpha p + beta) - 2 Delta) log p, together
/// with the four-part split of the floor-difference product taken over all primes.
UpsilonReport upsilon_eval(std::uint64_t N, const WindowParams& window, double alpha, double beta,
                           const GammaPair& pair, const ArithmeticTables& tables,
                           const PrecisionPolicy& policy = {});

/// Intersection primes p <= limit at which ||alpha p + beta|| beats every earlier one.
std::vector<MinimaRecord> record_minima_scan(double alpha, double beta, const GammaPair& pair,
                                             std::uint64_t limit, const ArithmeticTables& tables,
                                             const PrecisionPolicy& policy = {});

inline constexpr std::size_t kSampleWitnesses = 16;

/// Intersection primes p <= limit with ||alpha p + beta|| < p^(-theta + epsilon).
/// Accepts theorem-mode pairs and the gamma1 = 1 preset.
TheoremReport theorem_witness_count(double alpha, double beta, const GammaPair& pair, double epsilon,
                                    std::uint64_t limit, const ArithmeticTables& tables,
                                    const PrecisionPolicy& policy = {});

std::vector<CountingRow> counting_report(std::span<const double> xs, const GammaPair& pair,
                                         const ArithmeticTables& tables, const PrecisionPolicy& policy = {});

/// Star discrepancy of a sample in [0, 1) by the sorted-sample formula.
double discrepancy_estimate(std::vector<double> values);

}  // namespace psmod1
