#ifndef COLLATZ_VERIFY_HPP
#define COLLATZ_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "collatz/core.hpp"
#include "collatz/nat.hpp"
#include "collatz/tree.hpp"

// Empirical convergence checking over odd ranges: a memoized OpenMP range
// kernel with a serial reference kept for testing, cycle search, and the
// first-step valuation tables.
namespace collatz::verify {

enum class AnomalyKind { CycleDetected, LimitExhausted };

struct Anomaly {
    Nat start;
    AnomalyKind kind;
};

struct ExcursionEntry {
    Nat start;
    Nat max_odd;
    Nat full_max;  // 3 * max_odd + 1
};

struct StepsEntry {
    Nat start;
    uint64_t odd_steps = 0;
};

// Merged statistics of a verified odd range. Starts that fail to reach 1
// within the step budget are listed as anomalies and do not contribute to
// the maxima; every start contributes its first-step valuation.
struct VerificationReport {
    Nat lo;
    Nat hi;
    uint64_t verified_count = 0;
    bool all_reached_one = true;
    ExcursionEntry max_excursion;  // ties broken by smaller start
    StepsEntry max_odd_steps;
    std::map<uint64_t, uint64_t> valuation_histogram;
    std::vector<Anomaly> anomalies;  // ascending by start
};

struct VerifyOptions {
    uint64_t step_limit = core::kDefaultStepLimit;  // odd steps allowed per start
    uint64_t memo_cap = 1'000'000;                  // memoize verified starts below this value
    unsigned workers = 0;                           // 0 = all hardware threads
};

// Scans every odd start in [lo, hi]. Per-start statistics are exact whatever
// the memo and worker settings: memo entries carry full-path data, so early
// exits never change the report, only the work.
VerificationReport verify_range(const Nat& lo, const Nat& hi, const VerifyOptions& opts = {});

// Brute force: one full odd_sequence walk per start, no memo, no threads.
// The oracle the kernel is tested against, and the benchmark baseline.
VerificationReport verify_range_reference(const Nat& lo, const Nat& hi,
                                          uint64_t step_limit = core::kDefaultStepLimit);

// Combines reports of adjacent ranges (left.hi < right.lo) field by field:
// counts and histograms add, maxima compare with ties to the smaller start.
VerificationReport merge_reports(const VerificationReport& left, const VerificationReport& right);

std::string report_to_json(const VerificationReport& r);
std::string report_to_text(const VerificationReport& r);

struct CycleResult {
    enum class Kind { ReachesOne, TrivialCycle, NontrivialCycle, Inconclusive };
    Kind kind;
    // ReachesOne: odd steps to the first 1. NontrivialCycle: cycle length.
    // Inconclusive: the exhausted iteration budget.
    uint64_t steps = 0;
    std::vector<Nat> cycle;  // NontrivialCycle only; rotated so the smallest value leads
};

// Brent's cycle finding over an arbitrary successor map. A walk that hits 1
// reports ReachesOne; a cycle that excludes 1 is returned with its minimal
// rotation. Exposed as a template so tests can drive it with synthetic maps.
template <typename StepFn>
CycleResult find_cycle(const Nat& x, uint64_t max_iters, StepFn&& next_of) {
    if (x == Nat(1)) return CycleResult{CycleResult::Kind::TrivialCycle, 0, {}};
    Nat tortoise = x;
    Nat hare = x;
    uint64_t power = 1;
    uint64_t lambda = 1;
    for (uint64_t steps = 1; steps <= max_iters; ++steps) {
        hare = next_of(hare);
        if (hare == Nat(1)) return CycleResult{CycleResult::Kind::ReachesOne, steps, {}};
        if (tortoise == hare) {
            std::vector<Nat> cycle;
            cycle.reserve(lambda);
            Nat v = hare;
            for (uint64_t i = 0; i < lambda; ++i) {
                cycle.push_back(v);
                v = next_of(v);
            }
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            return CycleResult{CycleResult::Kind::NontrivialCycle, lambda, std::move(cycle)};
        }
        if (lambda == power) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        ++lambda;
    }
    return CycleResult{CycleResult::Kind::Inconclusive, max_iters, {}};
}

CycleResult cycle_search(const Nat& x, uint64_t max_iters = core::kDefaultStepLimit);

// One row of the first-step valuation table: the odd numbers whose step
// divides out exactly 2^p form an arithmetic progression generated by one
// family with a fixed second argument.
struct ResidueRow {
    uint64_t p;
    tree::Branch branch;
    uint64_t arg;               // fixed second argument of the generator
    Nat x0;                     // smallest member
    std::string pattern_bits;   // shared low p+1 bits, most significant first
    Nat stride;                 // 2^(p+1)
    std::string progression;    // closed form of the class
};

std::vector<ResidueRow> residue_table(uint64_t max_p);
std::string residue_table_csv(const std::vector<ResidueRow>& rows);

struct DensityResult {
    uint64_t members;
    uint64_t total_odds;
};

// Counts odd x < 2^m with first-step valuation exactly p. The count is
// exactly 2^(m-1-p): each class occupies a fixed fraction of the odds.
DensityResult density_check(uint64_t p, uint64_t m);

struct ExcursionMismatch {
    Nat start;
    Nat full_max;      // maximum of the full trajectory
    Nat from_odd_max;  // 3 * (maximum of the odd trajectory) + 1
};

// Compares the two maxima through independent walks for every odd start in
// [lo, hi]; any start where they disagree (expected: none) is returned.
std::vector<ExcursionMismatch> cross_check_excursions(const Nat& lo, const Nat& hi);

}  // namespace collatz::verify

#endif
