// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Budgets are wall-clock bounds; a criterion with no stated budget prints
// its time but is not gated on it.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collatz/cli.hpp"
#include "collatz/core.hpp"
#include "collatz/tree.hpp"
#include "collatz/verify.hpp"

using namespace collatz;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

template <typename F>
void criterion(int idx, const std::string& name, double budget_ms, F&& body) {
    auto t0 = Clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string("  exception: ") + e.what();
        ok = false;
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (budget_ms > 0 && ms >= budget_ms) ok = false;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << name << "  (" << std::fixed
              << std::setprecision(1) << ms << " ms";
    if (budget_ms > 0) std::cout << ", budget " << std::setprecision(0) << budget_ms << " ms";
    std::cout << ")\n";
    if (!note.empty()) std::cout << note << "\n";
    if (!ok) ++failures;
}

}  // namespace

int main() {
    criterion(1, "golden sequences via the CLI", 1000, [] {
        std::ostringstream o1, e1, o2, e2;
        int c1 = cli::run({"seq", "9"}, o1, e1);
        int c2 = cli::run({"seq", "9", "--modified"}, o2, e2);
        return c1 == 0 && c2 == 0 &&
               o1.str() == "9 28 14 7 22 11 34 17 52 26 13 40 20 10 5 16 8 4 2 1\n" &&
               o2.str() == "9 7 11 17 13 5 1\n";
    });

    criterion(2, "valuation table rows p=1..6", 1000, [] {
        auto rows = verify::residue_table(6);
        if (rows.size() != 6) return false;
        const uint64_t want_x0[] = {3, 1, 13, 5, 53, 21};
        const char* want_bits[] = {"11", "001", "1101", "00101", "110101", "0010101"};
        const uint64_t want_stride[] = {4, 8, 16, 32, 64, 128};
        for (size_t i = 0; i < 6; ++i) {
            if (!(rows[i].x0 == Nat(want_x0[i]))) return false;
            if (rows[i].pattern_bits != want_bits[i]) return false;
            if (!(rows[i].stride == Nat(want_stride[i]))) return false;
        }
        return true;
    });

    criterion(3, "decomposition round trip and parent agreement below 2^20", 10000, [] {
        uint64_t bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : bad)
#endif
        for (int64_t x = 1; x < (int64_t(1) << 20); x += 2) {
            Nat value(static_cast<uint64_t>(x));
            auto d = tree::decompose(value);
            Nat rebuilt = d.branch == tree::Branch::Plus ? tree::f_plus(d.k, d.n) : tree::f_minus(d.k, d.n);
            if (!(rebuilt == value)) ++bad;
            auto e = tree::parent(value);
            auto s = core::odd_step(value);
            if (!(e.parent_value == s.next) || e.p != s.p) ++bad;
        }
        return bad == 0;
    });

    criterion(4, "generator injectivity, disjointness and childless multiples of 3", 5000, [] {
        std::vector<Nat> plus_vals, minus_vals;
        for (uint64_t k = 0; k <= 1024; ++k) {
            for (uint64_t n = 1; n <= 8; ++n) plus_vals.push_back(tree::f_plus(Nat(k), n));
        }
        for (uint64_t k = 1; k <= 1024; ++k) {
            for (uint64_t n = 0; n <= 8; ++n) minus_vals.push_back(tree::f_minus(Nat(k), n));
        }
        std::sort(plus_vals.begin(), plus_vals.end());
        std::sort(minus_vals.begin(), minus_vals.end());
        if (std::adjacent_find(plus_vals.begin(), plus_vals.end()) != plus_vals.end()) return false;
        if (std::adjacent_find(minus_vals.begin(), minus_vals.end()) != minus_vals.end()) return false;
        std::vector<Nat> both;
        std::set_intersection(plus_vals.begin(), plus_vals.end(), minus_vals.begin(), minus_vals.end(),
                              std::back_inserter(both));
        if (!both.empty()) return false;
        // Multiples of 3 occur among the generated values (they are the
        // leaves), but never as a step output: nothing has a multiple of 3
        // as its parent.
        for (const auto& v : plus_vals) {
            if (core::odd_step(v).next.mod_small(3) == 0) return false;
        }
        for (const auto& v : minus_vals) {
            if (core::odd_step(v).next.mod_small(3) == 0) return false;
        }
        return true;
    });

    criterion(5, "valuation class densities at m=16", 1000, [] {
        const uint64_t want[] = {16384, 8192, 4096, 2048, 1024, 512};
        for (uint64_t p = 1; p <= 6; ++p) {
            auto d = verify::density_check(p, 16);
            if (d.members != want[p - 1] || d.total_odds != 32768) return false;
        }
        return true;
    });

    criterion(6, "excursion maxima agree between the two walks below 1e4", 5000, [] {
        if (!verify::cross_check_excursions(Nat(1), Nat(9999)).empty()) return false;
        auto full = core::collatz_sequence(Nat(9), core::kDefaultStepLimit);
        Nat full_max(0);
        for (const auto& v : full) {
            if (full_max < v) full_max = v;
        }
        auto stats = core::max_excursion(Nat(9));
        return full_max == Nat(52) && stats.has_value() && stats->max_odd == Nat(17) &&
               stats->full_max == Nat(52);
    });

    criterion(7, "every odd start below 1e7 reaches 1", 60000, [] {
        auto big = verify::verify_range(Nat(1), Nat(9999999));
        bool ok = big.all_reached_one && big.anomalies.empty() && big.verified_count == 5000000;
        auto r27 = verify::verify_range(Nat(27), Nat(27));
        ok = ok && r27.max_excursion.start == Nat(27) && r27.max_excursion.max_odd == Nat(3077) &&
             r27.max_excursion.full_max == Nat(9232) && r27.max_odd_steps.odd_steps == 41;
        return ok;
    });

    criterion(8, "report invariance under memoization and worker count", 0, [] {
        verify::VerifyOptions off1, on1, off8, on8;
        off1.memo_cap = 0;
        off1.workers = 1;
        on1.memo_cap = 1'000'000;
        on1.workers = 1;
        off8.memo_cap = 0;
        off8.workers = 8;
        on8.memo_cap = 1'000'000;
        on8.workers = 8;
        auto base = verify::report_to_json(verify::verify_range(Nat(1), Nat(99999), off1));
        return base == verify::report_to_json(verify::verify_range(Nat(1), Nat(99999), on1)) &&
               base == verify::report_to_json(verify::verify_range(Nat(1), Nat(99999), off8)) &&
               base == verify::report_to_json(verify::verify_range(Nat(1), Nat(99999), on8));
    });

    criterion(9, "bounded tree expansion at 17", 0, [] {
        auto edges = tree::generate_tree(Nat(17));
        if (edges.size() != 7) return false;
        std::set<uint64_t> nodes{1};
        for (const auto& e : edges) {
            if (e.child_value == Nat(1)) return false;  // no incoming edge at the root
            if (!e.child_value.fits_word() || !e.parent_value.fits_word()) return false;
            if (!nodes.insert(e.child_value.word()).second) return false;  // each node once
            nodes.insert(e.parent_value.word());
        }
        return nodes == std::set<uint64_t>{1, 3, 5, 7, 9, 11, 13, 17};
    });

    criterion(10, "no nontrivial cycle from any odd start below 1e6", 60000, [] {
        if (verify::cycle_search(Nat(1)).kind != verify::CycleResult::Kind::TrivialCycle) return false;
        uint64_t nontrivial = 0;
        uint64_t unresolved = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : nontrivial, unresolved)
#endif
        for (int64_t x = 1; x < 1000000; x += 2) {
            auto r = verify::cycle_search(Nat(static_cast<uint64_t>(x)), core::kDefaultStepLimit);
            if (r.kind == verify::CycleResult::Kind::NontrivialCycle) ++nontrivial;
            if (r.kind == verify::CycleResult::Kind::Inconclusive) ++unresolved;
        }
        return nontrivial == 0 && unresolved == 0;
    });

    std::cout << (failures == 0 ? "all criteria passed\n" : "FAILURES: ") ;
    if (failures != 0) std::cout << failures << "\n";
    return failures;
}
