#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace mahler {

// Deterministic 64-bit stream (splitmix64). Every randomized suite draws all
// of its samples from one seeded stream, so (suite, seed, bits) reproduce a
// report byte for byte.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    long next_long(long lo, long hi);  // uniform in [lo, hi]
    mpq_class next_unit_q();           // dyadic rational in [-1, 1]

private:
    std::uint64_t state_;
};

struct SuiteItem {
    std::string id;
    bool pass = false;
    std::string detail;
    // A documented discrepancy that the suite is expected to surface (it is
    // reported, not hidden, and does not fail the run).
    bool expected_note = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long bits = 0;
    std::vector<SuiteItem> items;
    double max_residual_log2 = 0.0;  // largest observed residual radius, log2

    bool passed() const;
    long fail_count() const;
    nlohmann::ordered_json to_json() const;
};

// Named verification suites:
//   feq          functional-equation residuals for random gamma/phi/lambda specs
//   remark2      the six rational-identity configurations at seeded points
//   bridge       number-side sums against their function-side counterparts
//   transforms   exact reciprocal-to-series constants, including the h = 0 note
//   theorem1     the exceptional algebraic value: oracle, minimal polynomial,
//                classifier fidelity, relation smoke tests
//   lemma3-table classifier/identity agreement plus interpolate-and-refute
// bits = 0 selects each suite's canonical precision.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, long bits);

std::vector<std::string> suite_names();

}  // namespace mahler
