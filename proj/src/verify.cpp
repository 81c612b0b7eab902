#include "collatz/verify.hpp"

#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace collatz::verify {

namespace {

constexpr uint32_t kNoEntry = UINT32_MAX;

// Full-path data for verified odd starts below a value cap. Entries carry
// exact continuation data (steps to 1 and the path maximum), so a lookup
// replaces the tail of a walk without changing any reported statistic.
// Written only during the ascending serial phase, read-only afterwards.
struct MemoTable {
    uint64_t cap = 0;  // covers odd values < cap
    std::vector<uint32_t> steps;
    std::vector<uint64_t> max_odd;

    explicit MemoTable(uint64_t value_cap) : cap(value_cap) {
        steps.assign(cap / 2 + 1, kNoEntry);
        max_odd.assign(cap / 2 + 1, 0);
    }
    bool has(uint64_t v) const { return v < cap && steps[v >> 1] != kNoEntry; }
    void put(uint64_t v, uint64_t total_steps, uint64_t max) {
        if (v < cap && total_steps < kNoEntry) {
            steps[v >> 1] = static_cast<uint32_t>(total_steps);
            max_odd[v >> 1] = max;
        }
    }
};

// Exact full-path data for one start.
struct Walk {
    bool reached_one = false;
    uint64_t odd_steps = 0;  // odd steps to the first 1 (valid when reached_one)
    Nat max_odd;             // maximum odd value on the whole path
    uint64_t first_p = 0;    // valuation of the first step
};

constexpr uint64_t kMaxSafeWord = (std::numeric_limits<uint64_t>::max() - 1) / 3;

// Word-sized walk; returns false when 3x+1 would leave uint64 range and the
// caller must redo the start generically.
bool walk_word(uint64_t start, uint64_t step_limit, const MemoTable& memo, Walk& out) {
    if (start > kMaxSafeWord) return false;
    out.first_p = std::countr_zero(3 * start + 1);

    uint64_t x = start;
    uint64_t max_odd = start;
    uint64_t steps = 0;
    uint64_t total = 0;
    bool reached = false;
    while (true) {
        if (x == 1) {
            total = steps;
            reached = true;
            break;
        }
        if (x < start && memo.has(x)) {
            total = steps + memo.steps[x >> 1];
            if (memo.max_odd[x >> 1] > max_odd) max_odd = memo.max_odd[x >> 1];
            reached = true;
            break;
        }
        if (steps == step_limit) {
            total = steps;
            break;
        }
        if (x > kMaxSafeWord) return false;
        uint64_t t = 3 * x + 1;
        x = t >> std::countr_zero(t);
        ++steps;
        if (x > max_odd) max_odd = x;
    }
    out.reached_one = reached && total <= step_limit;
    out.odd_steps = total;
    out.max_odd = Nat(max_odd);
    return true;
}

// Arbitrary-precision fallback; same semantics as walk_word.
Walk walk_generic(const Nat& start, uint64_t step_limit, const MemoTable& memo) {
    Walk out;
    out.first_p = core::odd_step(start).p;

    Nat x = start;
    Nat max_odd = start;
    uint64_t steps = 0;
    uint64_t total = 0;
    bool reached = false;
    while (true) {
        if (x == Nat(1)) {
            total = steps;
            reached = true;
            break;
        }
        if (x < start && x.fits_word() && memo.has(x.word())) {
            total = steps + memo.steps[x.word() >> 1];
            Nat memo_max(memo.max_odd[x.word() >> 1]);
            if (max_odd < memo_max) max_odd = std::move(memo_max);
            reached = true;
            break;
        }
        if (steps == step_limit) {
            total = steps;
            break;
        }
        x = core::odd_step(x).next;
        ++steps;
        if (max_odd < x) max_odd = x;
    }
    out.reached_one = reached && total <= step_limit;
    out.odd_steps = total;
    out.max_odd = std::move(max_odd);
    return out;
}

// Per-range (or per-chunk) statistics. Starts must be fed in ascending
// order; merging in range order then reproduces the serial result.
struct Accumulator {
    uint64_t count = 0;
    ExcursionEntry excursion{Nat(0), Nat(0), Nat(0)};  // start 0 = none yet
    StepsEntry steps{Nat(0), 0};
    std::map<uint64_t, uint64_t> hist;
    std::vector<Anomaly> anomalies;

    void add(Nat start, const Walk& w, uint64_t step_limit) {
        ++count;
        ++hist[w.first_p];
        if (!w.reached_one) {
            // Distinguish a genuine cycle from a slow trajectory.
            auto cyc = cycle_search(start, step_limit);
            AnomalyKind kind = cyc.kind == CycleResult::Kind::NontrivialCycle
                                   ? AnomalyKind::CycleDetected
                                   : AnomalyKind::LimitExhausted;
            anomalies.push_back(Anomaly{std::move(start), kind});
            return;
        }
        if (excursion.start.is_zero() || excursion.max_odd < w.max_odd) {
            excursion = ExcursionEntry{start, w.max_odd, w.max_odd * 3 + Nat(1)};
        }
        if (steps.start.is_zero() || steps.odd_steps < w.odd_steps) {
            steps = StepsEntry{std::move(start), w.odd_steps};
        }
    }

    // other must cover strictly larger starts
    void merge(Accumulator&& other) {
        count += other.count;
        if (excursion.start.is_zero() ||
            (!other.excursion.start.is_zero() && excursion.max_odd < other.excursion.max_odd)) {
            excursion = std::move(other.excursion);
        }
        if (steps.start.is_zero() ||
            (!other.steps.start.is_zero() && steps.odd_steps < other.steps.odd_steps)) {
            steps = std::move(other.steps);
        }
        for (const auto& [p, n] : other.hist) hist[p] += n;
        for (auto& a : other.anomalies) anomalies.push_back(std::move(a));
    }

    VerificationReport finish(Nat lo, Nat hi) && {
        VerificationReport r;
        r.lo = std::move(lo);
        r.hi = std::move(hi);
        r.verified_count = count;
        r.all_reached_one = anomalies.empty();
        r.max_excursion = std::move(excursion);
        r.max_odd_steps = std::move(steps);
        r.valuation_histogram = std::move(hist);
        r.anomalies = std::move(anomalies);
        return r;
    }
};

void require_odd_range(const Nat& lo, const Nat& hi, const char* who) {
    if (lo.is_zero() || lo.is_even() || hi.is_even()) {
        throw std::invalid_argument(std::string(who) + ": bounds must be positive odd numbers");
    }
    if (hi < lo) throw std::invalid_argument(std::string(who) + ": lo must not exceed hi");
}

unsigned resolve_workers(unsigned requested) {
#ifdef _OPENMP
    if (requested == 0) return static_cast<unsigned>(omp_get_max_threads());
    return std::min(requested, 256u);
#else
    (void)requested;
    return 1;
#endif
}

// Memo arrays are bounded regardless of the requested cap; entries above
// the range can never be read and 2^24 values keeps the table ~100 MB.
uint64_t clamp_memo_cap(uint64_t memo_cap, const Nat& hi) {
    constexpr uint64_t kHardCap = uint64_t(1) << 24;
    uint64_t cap = std::min(memo_cap, kHardCap);
    if (hi.fits_word()) cap = std::min(cap, hi.word() + 1);
    return cap;
}

nlohmann::ordered_json json_value(const Nat& v) {
    if (v.fits_word()) return v.word();
    return v.to_string();
}

}  // namespace

VerificationReport verify_range(const Nat& lo, const Nat& hi, const VerifyOptions& opts) {
    require_odd_range(lo, hi, "verify_range");

    MemoTable memo(clamp_memo_cap(opts.memo_cap, hi));
    Accumulator acc;

    if (!hi.fits_word()) {
        // Astronomic bounds: plain generic scan.
        for (Nat v = lo; !(hi < v); v = v + Nat(2)) {
            acc.add(v, walk_generic(v, opts.step_limit, memo), opts.step_limit);
        }
        return std::move(acc).finish(lo, hi);
    }

    const uint64_t first = lo.word();
    const uint64_t last = hi.word();

    // Phase 1: ascending serial scan of the memoizable prefix. Each start's
    // full-path data lands in the memo before any later start can need it.
    uint64_t next = first;
    for (; next <= last && next < memo.cap; next += 2) {
        Walk w;
        if (!walk_word(next, opts.step_limit, memo, w)) w = walk_generic(Nat(next), opts.step_limit, memo);
        if (w.reached_one && w.max_odd.fits_word()) memo.put(next, w.odd_steps, w.max_odd.word());
        acc.add(Nat(next), w, opts.step_limit);
    }

    // Phase 2: the rest in fixed-size chunks, memo read-only, one partial
    // accumulator per chunk merged in range order.
    if (next <= last) {
        constexpr uint64_t kChunkOdds = 1 << 15;
        const uint64_t n_odds = (last - next) / 2 + 1;
        const uint64_t n_chunks = (n_odds + kChunkOdds - 1) / kChunkOdds;
        std::vector<Accumulator> parts(n_chunks);
        const unsigned workers = resolve_workers(opts.workers);
        (void)workers;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
        for (int64_t c = 0; c < static_cast<int64_t>(n_chunks); ++c) {
            uint64_t v = next + 2 * static_cast<uint64_t>(c) * kChunkOdds;
            uint64_t stop = std::min(last, v + 2 * (kChunkOdds - 1));
            Accumulator& part = parts[static_cast<size_t>(c)];
            for (; v <= stop; v += 2) {
                Walk w;
                if (!walk_word(v, opts.step_limit, memo, w)) {
                    w = walk_generic(Nat(v), opts.step_limit, memo);
                }
                part.add(Nat(v), w, opts.step_limit);
            }
        }
        for (auto& part : parts) acc.merge(std::move(part));
    }

    return std::move(acc).finish(lo, hi);
}

VerificationReport verify_range_reference(const Nat& lo, const Nat& hi, uint64_t step_limit) {
    require_odd_range(lo, hi, "verify_range_reference");

    Accumulator acc;
    for (Nat v = lo; !(hi < v); v = v + Nat(2)) {
        auto path = core::odd_sequence(v, step_limit);
        ++acc.count;
        ++acc.hist[core::odd_step(v).p];
        if (path.termination != core::Termination::ReachedOne) {
            AnomalyKind kind = path.termination == core::Termination::CycleDetected
                                   ? AnomalyKind::CycleDetected
                                   : AnomalyKind::LimitExhausted;
            acc.anomalies.push_back(Anomaly{v, kind});
            continue;
        }
        Nat max_odd(1);
        for (const auto& val : path.values) {
            if (max_odd < val) max_odd = val;
        }
        if (acc.excursion.start.is_zero() || acc.excursion.max_odd < max_odd) {
            acc.excursion = ExcursionEntry{v, max_odd, max_odd * 3 + Nat(1)};
        }
        uint64_t steps = path.values.size() - 1;
        if (acc.steps.start.is_zero() || acc.steps.odd_steps < steps) {
            acc.steps = StepsEntry{v, steps};
        }
    }
    return std::move(acc).finish(lo, hi);
}

VerificationReport merge_reports(const VerificationReport& left, const VerificationReport& right) {
    if (!(left.hi < right.lo)) {
        throw std::invalid_argument("merge_reports: ranges must be disjoint and ordered");
    }
    VerificationReport r;
    r.lo = left.lo;
    r.hi = right.hi;
    r.verified_count = left.verified_count + right.verified_count;
    r.all_reached_one = left.all_reached_one && right.all_reached_one;
    r.max_excursion = left.max_excursion;
    if (r.max_excursion.start.is_zero() ||
        (!right.max_excursion.start.is_zero() && r.max_excursion.max_odd < right.max_excursion.max_odd)) {
        r.max_excursion = right.max_excursion;
    }
    r.max_odd_steps = left.max_odd_steps;
    if (r.max_odd_steps.start.is_zero() ||
        (!right.max_odd_steps.start.is_zero() && r.max_odd_steps.odd_steps < right.max_odd_steps.odd_steps)) {
        r.max_odd_steps = right.max_odd_steps;
    }
    r.valuation_histogram = left.valuation_histogram;
    for (const auto& [p, n] : right.valuation_histogram) r.valuation_histogram[p] += n;
    r.anomalies = left.anomalies;
    r.anomalies.insert(r.anomalies.end(), right.anomalies.begin(), right.anomalies.end());
    return r;
}

std::string report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["range"] = {{"lo", json_value(r.lo)}, {"hi", json_value(r.hi)}};
    j["verified_count"] = r.verified_count;
    j["all_reached_one"] = r.all_reached_one;
    if (r.max_excursion.start.is_zero()) {
        j["max_excursion"] = nullptr;
    } else {
        j["max_excursion"] = {{"start", json_value(r.max_excursion.start)},
                              {"max_odd", json_value(r.max_excursion.max_odd)},
                              {"full_max", json_value(r.max_excursion.full_max)}};
    }
    if (r.max_odd_steps.start.is_zero()) {
        j["max_odd_steps"] = nullptr;
    } else {
        j["max_odd_steps"] = {{"start", json_value(r.max_odd_steps.start)},
                              {"count", r.max_odd_steps.odd_steps}};
    }
    j["valuation_histogram"] = nlohmann::ordered_json::object();
    for (const auto& [p, n] : r.valuation_histogram) {
        j["valuation_histogram"][std::to_string(p)] = n;
    }
    j["anomalies"] = nlohmann::ordered_json::array();
    for (const auto& a : r.anomalies) {
        j["anomalies"].push_back(
            {{"start", json_value(a.start)},
             {"kind", a.kind == AnomalyKind::CycleDetected ? "cycle_detected" : "limit_exhausted"}});
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "range             [" << r.lo << ", " << r.hi << "]\n";
    os << "verified starts   " << r.verified_count << "\n";
    os << "all reached one   " << (r.all_reached_one ? "yes" : "NO") << "\n";
    if (!r.max_excursion.start.is_zero()) {
        os << "max excursion     start " << r.max_excursion.start << " -> max odd " << r.max_excursion.max_odd
           << " (full " << r.max_excursion.full_max << ")\n";
    }
    if (!r.max_odd_steps.start.is_zero()) {
        os << "max odd steps     start " << r.max_odd_steps.start << " -> " << r.max_odd_steps.odd_steps
           << " steps\n";
    }
    os << "valuation histogram\n";
    for (const auto& [p, n] : r.valuation_histogram) {
        os << "  p=" << p << "  " << n << "\n";
    }
    if (!r.anomalies.empty()) {
        os << "anomalies\n";
        for (const auto& a : r.anomalies) {
            os << "  " << a.start << "  "
               << (a.kind == AnomalyKind::CycleDetected ? "cycle detected" : "limit exhausted") << "\n";
        }
    }
    return os.str();
}

CycleResult cycle_search(const Nat& x, uint64_t max_iters) {
    if (x.is_zero() || x.is_even()) {
        throw std::invalid_argument("cycle_search: start must be a positive odd number");
    }
    return find_cycle(x, max_iters, [](const Nat& v) { return core::odd_step(v).next; });
}

std::vector<ResidueRow> residue_table(uint64_t max_p) {
    if (max_p < 1) throw std::invalid_argument("residue_table: max_p must be >= 1");

    std::vector<ResidueRow> rows;
    rows.reserve(max_p);
    for (uint64_t p = 1; p <= max_p; ++p) {
        ResidueRow row;
        row.p = p;
        row.stride = Nat(1) << (p + 1);
        if (p % 2 == 1) {
            row.branch = tree::Branch::Minus;
            row.arg = (p - 1) / 2;
            row.x0 = tree::f_minus(Nat(1), row.arg);
            row.progression = "f_minus(k," + std::to_string(row.arg) + ") = " + row.x0.to_string() +
                              " + " + row.stride.to_string() + "*(k-1), k >= 1";
        } else {
            row.branch = tree::Branch::Plus;
            row.arg = p / 2;
            row.x0 = tree::f_plus(Nat(0), row.arg);
            row.progression = "f_plus(k," + std::to_string(row.arg) + ") = " + row.x0.to_string() +
                              " + " + row.stride.to_string() + "*k, k >= 0";
        }
        row.pattern_bits.reserve(p + 1);
        for (uint64_t i = p + 1; i-- > 0;) {
            row.pattern_bits.push_back(row.x0.bit(i) ? '1' : '0');
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string residue_table_csv(const std::vector<ResidueRow>& rows) {
    std::string out = "p,x0,binary,stride\n";
    for (const auto& row : rows) {
        out += std::to_string(row.p) + "," + row.x0.to_string() + "," + row.pattern_bits + "," +
               row.stride.to_string() + "\n";
    }
    return out;
}

DensityResult density_check(uint64_t p, uint64_t m) {
    if (m < 2 || m > 62) throw std::invalid_argument("density_check: need 2 <= m <= 62");
    if (p < 1 || p > m - 1) throw std::invalid_argument("density_check: need 1 <= p <= m-1");

    const uint64_t end = uint64_t(1) << m;
    uint64_t members = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : members)
#endif
    for (int64_t x = 1; x < static_cast<int64_t>(end); x += 2) {
        uint64_t t = 3 * static_cast<uint64_t>(x) + 1;
        if (static_cast<uint64_t>(std::countr_zero(t)) == p) ++members;
    }
    return DensityResult{members, uint64_t(1) << (m - 1)};
}

std::vector<ExcursionMismatch> cross_check_excursions(const Nat& lo, const Nat& hi) {
    require_odd_range(lo, hi, "cross_check_excursions");

    std::vector<ExcursionMismatch> failures;
    for (Nat s = lo; !(hi < s); s = s + Nat(2)) {
        // Route A: the full trajectory. It never really stops; past the
        // first 1 it repeats 4, 2, 1, so 4 joins the maximum.
        auto full = core::collatz_sequence(s, core::kDefaultStepLimit);
        Nat full_max(4);
        for (const auto& v : full) {
            if (full_max < v) full_max = v;
        }
        // Route B: three times the odd-trajectory maximum plus one.
        auto stats = core::max_excursion(s);
        if (!(full.back() == Nat(1)) || !stats.has_value()) {
            failures.push_back(ExcursionMismatch{s, full_max, stats ? stats->full_max : Nat(0)});
            continue;
        }
        if (!(full_max == stats->full_max)) {
            failures.push_back(ExcursionMismatch{s, full_max, stats->full_max});
        }
    }
    return failures;
}

}  // namespace collatz::verify
