#ifndef COLLATZ_CORE_HPP
#define COLLATZ_CORE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/nat.hpp"

// Step engines for the full map (n -> n/2 | 3n+1) and the odd-to-odd map
// (x -> (3x+1)/2^p), plus excursion statistics of single trajectories.
namespace collatz::core {

inline constexpr uint64_t kDefaultStepLimit = 1'000'000;

// One application of the odd-to-odd map: next = (3x+1)/2^p with next odd.
struct OddStepResult {
    Nat next;
    uint64_t p;  // always >= 1: 3x+1 is even for odd x
};

enum class Termination {
    ReachedOne,     // last value is the first (and only) 1
    CycleDetected,  // a value repeated before any 1 appeared
    LimitExhausted  // step budget ran out
};

struct OddPath {
    std::vector<Nat> values;  // first element is the start
    Termination termination;
    std::vector<Nat> cycle;  // repeated suffix, only for CycleDetected
};

struct ExcursionStats {
    Nat max_odd;         // largest value of the odd trajectory
    Nat full_max;        // 3 * max_odd + 1: largest value of the full trajectory
    uint64_t odd_steps;  // odd steps from the start down to 1
};

// Largest j with 2^j dividing m. Rejects m = 0.
uint64_t v2(const Nat& m);

// n/2 for even n, 3n+1 for odd n. Rejects n = 0.
Nat collatz_step(const Nat& n);

// Trajectory of the full map from n, cut at the first 1 (inclusive) or
// after limit terms.
std::vector<Nat> collatz_sequence(const Nat& n, uint64_t limit);

// Rejects even or zero x.
OddStepResult odd_step(const Nat& x);

// Trajectory of the odd map from x, applying at most limit steps.
OddPath odd_sequence(const Nat& x, uint64_t limit);

// Empty when the trajectory does not reach 1 within limit steps; that is a
// divergence signal, not an arithmetic error.
std::optional<ExcursionStats> max_excursion(const Nat& x, uint64_t limit = kDefaultStepLimit);

}  // namespace collatz::core

#endif
