// Range-verification benchmark: the serial reference walker against the
// memoized kernel at several worker counts, with a report consistency check.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collatz/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;
using collatz::Nat;
namespace verify = collatz::verify;

namespace {

struct Row {
    std::string label;
    double ms;
    std::string json;
};

template <typename F>
Row timed(const std::string& label, F&& body) {
    auto t0 = Clock::now();
    auto report = body();
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return Row{label, ms, verify::report_to_json(report)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verify_range benchmark: serial reference vs memoized OpenMP kernel"};
    uint64_t to = 999'999;
    uint64_t step_limit = collatz::core::kDefaultStepLimit;
    uint64_t memo_cap = 1'000'000;
    app.add_option("--to", to, "last start of the scanned range [1, to]")->capture_default_str();
    app.add_option("--step-limit", step_limit, "odd steps allowed per start")->capture_default_str();
    app.add_option("--memo-cap", memo_cap, "memo value bound for the memoized runs")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    if (to % 2 == 0) --to;
    if (to < 1) to = 1;

    unsigned hw = 1;
#ifdef _OPENMP
    hw = static_cast<unsigned>(omp_get_max_threads());
#endif

    const Nat lo(1), hi(to);
    const double n_starts = static_cast<double>((to - 1) / 2 + 1);

    std::vector<Row> rows;
    rows.push_back(timed("reference (serial, no memo)",
                         [&] { return verify::verify_range_reference(lo, hi, step_limit); }));

    auto kernel = [&](uint64_t cap, unsigned workers, const std::string& label) {
        verify::VerifyOptions o;
        o.step_limit = step_limit;
        o.memo_cap = cap;
        o.workers = workers;
        rows.push_back(timed(label, [&] { return verify::verify_range(lo, hi, o); }));
    };
    kernel(0, 1, "kernel, memo off, 1 worker");
    kernel(memo_cap, 1, "kernel, memo on, 1 worker");
    if (hw > 1) {
        kernel(0, hw, "kernel, memo off, " + std::to_string(hw) + " workers");
        kernel(memo_cap, hw, "kernel, memo on, " + std::to_string(hw) + " workers");
    }

    std::cout << "range [1, " << to << "], " << static_cast<uint64_t>(n_starts) << " odd starts\n\n";
    std::cout << std::left << std::setw(36) << "configuration" << std::right << std::setw(12) << "time ms"
              << std::setw(14) << "starts/ms" << std::setw(12) << "speedup" << "\n";
    for (const auto& r : rows) {
        std::cout << std::left << std::setw(36) << r.label << std::right << std::setw(12) << std::fixed
                  << std::setprecision(2) << r.ms << std::setw(14) << std::setprecision(0)
                  << (n_starts / r.ms) << std::setw(12) << std::setprecision(2) << (rows[0].ms / r.ms)
                  << "\n";
    }

    bool consistent = true;
    for (const auto& r : rows) consistent = consistent && r.json == rows[0].json;
    std::cout << "\nreports identical across configurations: " << (consistent ? "yes" : "NO") << "\n";
    return consistent ? 0 : 1;
}
