#include "collatz/core.hpp"

#include <stdexcept>
#include <unordered_map>

namespace collatz::core {

namespace {

void require_positive(const Nat& n, const char* who) {
    if (n.is_zero()) throw std::invalid_argument(std::string(who) + ": input must be >= 1");
}

void require_odd(const Nat& x, const char* who) {
    require_positive(x, who);
    if (x.is_even()) throw std::invalid_argument(std::string(who) + ": input must be odd");
}

}  // namespace

uint64_t v2(const Nat& m) {
    require_positive(m, "v2");
    return m.trailing_zeros();
}

Nat collatz_step(const Nat& n) {
    require_positive(n, "collatz_step");
    if (n.is_even()) return n >> 1;
    return n * 3 + Nat(1);
}

std::vector<Nat> collatz_sequence(const Nat& n, uint64_t limit) {
    require_positive(n, "collatz_sequence");
    if (limit < 1) throw std::invalid_argument("collatz_sequence: limit must be >= 1");
    std::vector<Nat> seq;
    seq.push_back(n);
    while (!(seq.back() == Nat(1)) && seq.size() < limit) {
        seq.push_back(collatz_step(seq.back()));
    }
    return seq;
}

OddStepResult odd_step(const Nat& x) {
    require_odd(x, "odd_step");
    Nat t = x * 3 + Nat(1);
    uint64_t p = t.trailing_zeros();
    return OddStepResult{t >> p, p};
}

OddPath odd_sequence(const Nat& x, uint64_t limit) {
    require_odd(x, "odd_sequence");
    if (limit < 1) throw std::invalid_argument("odd_sequence: limit must be >= 1");

    OddPath path;
    path.values.push_back(x);
    if (x == Nat(1)) {
        path.termination = Termination::ReachedOne;
        return path;
    }

    std::unordered_map<Nat, size_t, NatHash> seen;
    seen.emplace(x, 0);
    for (uint64_t steps = 0; steps < limit; ++steps) {
        Nat next = odd_step(path.values.back()).next;
        if (next == Nat(1)) {
            path.values.push_back(std::move(next));
            path.termination = Termination::ReachedOne;
            return path;
        }
        auto it = seen.find(next);
        if (it != seen.end()) {
            path.termination = Termination::CycleDetected;
            path.cycle.assign(path.values.begin() + static_cast<ptrdiff_t>(it->second), path.values.end());
            return path;
        }
        seen.emplace(next, path.values.size());
        path.values.push_back(std::move(next));
    }
    path.termination = Termination::LimitExhausted;
    return path;
}

std::optional<ExcursionStats> max_excursion(const Nat& x, uint64_t limit) {
    OddPath path = odd_sequence(x, limit);
    if (path.termination != Termination::ReachedOne) return std::nullopt;
    Nat max_odd(1);
    for (const Nat& v : path.values) {
        if (max_odd < v) max_odd = v;
    }
    Nat full_max = max_odd * 3 + Nat(1);
    return ExcursionStats{std::move(max_odd), std::move(full_max), path.values.size() - 1};
}

}  // namespace collatz::core
