#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "collatz/core.hpp"
#include "collatz/verify.hpp"

using namespace collatz;
using namespace collatz::verify;

namespace {

// Independent oracle for density counts: a plain uint64 valuation scan.
uint64_t count_first_p(uint64_t p, uint64_t m) {
    uint64_t count = 0;
    for (uint64_t x = 1; x < (uint64_t(1) << m); x += 2) {
        uint64_t t = 3 * x + 1;
        uint64_t v = 0;
        while (t % 2 == 0) {
            t /= 2;
            ++v;
        }
        if (v == p) ++count;
    }
    return count;
}

VerifyOptions opts(uint64_t memo_cap, unsigned workers) {
    VerifyOptions o;
    o.memo_cap = memo_cap;
    o.workers = workers;
    return o;
}

}  // namespace

TEST_CASE("verify_range small golden values") {
    auto r = verify_range(Nat(1), Nat(9999));
    CHECK(r.verified_count == 5000);
    CHECK(r.all_reached_one);
    CHECK(r.anomalies.empty());

    r = verify_range(Nat(1), Nat(1));
    CHECK(r.verified_count == 1);
    CHECK(r.all_reached_one);
    CHECK(r.max_excursion.start == Nat(1));
    CHECK(r.max_excursion.max_odd == Nat(1));
    CHECK(r.max_excursion.full_max == Nat(4));
    CHECK(r.max_odd_steps.odd_steps == 0);

    r = verify_range(Nat(27), Nat(27));
    CHECK(r.max_excursion.start == Nat(27));
    CHECK(r.max_excursion.max_odd == Nat(3077));
    CHECK(r.max_excursion.full_max == Nat(9232));
    CHECK(r.max_odd_steps.start == Nat(27));
    CHECK(r.max_odd_steps.odd_steps == 41);
}

TEST_CASE("verify_range rejects invalid ranges") {
    CHECK_THROWS_AS(verify_range(Nat(2), Nat(9)), std::invalid_argument);
    CHECK_THROWS_AS(verify_range(Nat(1), Nat(8)), std::invalid_argument);
    CHECK_THROWS_AS(verify_range(Nat(9), Nat(1)), std::invalid_argument);
    CHECK_THROWS_AS(verify_range(Nat(0), Nat(1)), std::invalid_argument);
}

TEST_CASE("kernel agrees with the serial reference") {
    auto kernel = verify_range(Nat(1), Nat(9999));
    auto reference = verify_range_reference(Nat(1), Nat(9999));
    CHECK(report_to_json(kernel) == report_to_json(reference));

    kernel = verify_range(Nat(101), Nat(2001));
    reference = verify_range_reference(Nat(101), Nat(2001));
    CHECK(report_to_json(kernel) == report_to_json(reference));
}

TEST_CASE("memoization and worker count do not change the report") {
    auto baseline = report_to_json(verify_range(Nat(1), Nat(100001), opts(0, 1)));
    CHECK(report_to_json(verify_range(Nat(1), Nat(100001), opts(1'000'000, 1))) == baseline);
    CHECK(report_to_json(verify_range(Nat(1), Nat(100001), opts(0, 8))) == baseline);
    CHECK(report_to_json(verify_range(Nat(1), Nat(100001), opts(1'000'000, 8))) == baseline);
    CHECK(report_to_json(verify_range(Nat(1), Nat(100001), opts(1000, 3))) == baseline);
}

TEST_CASE("shard merge reproduces the whole-range report") {
    auto whole = verify_range(Nat(1), Nat(20001));
    auto a = verify_range(Nat(1), Nat(4999));
    auto b = verify_range(Nat(5001), Nat(12345));
    auto c = verify_range(Nat(12347), Nat(20001));
    auto merged = merge_reports(merge_reports(a, b), c);
    CHECK(report_to_json(merged) == report_to_json(whole));
    CHECK_THROWS_AS(merge_reports(b, a), std::invalid_argument);
}

TEST_CASE("valuation histogram matches the residue class densities") {
    auto r = verify_range(Nat(1), Nat((uint64_t(1) << 16) - 1));
    for (uint64_t p = 1; p <= 15; ++p) {
        CHECK(r.valuation_histogram.at(p) == (uint64_t(1) << (15 - p)));
    }
    uint64_t total = 0;
    for (const auto& [p, n] : r.valuation_histogram) total += n;
    CHECK(total == r.verified_count);
}

TEST_CASE("limit exhaustion is reported as an anomaly, not an error") {
    VerifyOptions o;
    o.step_limit = 5;
    auto r = verify_range(Nat(27), Nat(27), o);
    CHECK_FALSE(r.all_reached_one);
    REQUIRE(r.anomalies.size() == 1);
    CHECK(r.anomalies[0].start == Nat(27));
    CHECK(r.anomalies[0].kind == AnomalyKind::LimitExhausted);
    // the histogram still counts the start
    CHECK(r.valuation_histogram.at(1) == 1);

    // same classification without memo and in the reference
    o.memo_cap = 0;
    CHECK(report_to_json(verify_range(Nat(27), Nat(27), o)) ==
          report_to_json(verify_range_reference(Nat(27), Nat(27), 5)));
}

TEST_CASE("cycle_search golden values") {
    auto r = cycle_search(Nat(1));
    CHECK(r.kind == CycleResult::Kind::TrivialCycle);

    r = cycle_search(Nat(9));
    CHECK(r.kind == CycleResult::Kind::ReachesOne);
    CHECK(r.steps == 6);

    r = cycle_search(Nat(97));
    CHECK(r.kind == CycleResult::Kind::ReachesOne);
    auto path = core::odd_sequence(Nat(97), core::kDefaultStepLimit);
    CHECK(r.steps == path.values.size() - 1);

    CHECK(cycle_search(Nat(27), 10).kind == CycleResult::Kind::Inconclusive);
    CHECK_THROWS_AS(cycle_search(Nat(4)), std::invalid_argument);
}

TEST_CASE("find_cycle detects a synthetic nontrivial cycle") {
    // 7 -> 9 -> 3 -> 5 -> 9 -> ... : tail of one, cycle {9, 3, 5}
    auto fake_step = [](const Nat& v) -> Nat {
        if (v == Nat(7)) return Nat(9);
        if (v == Nat(9)) return Nat(3);
        if (v == Nat(3)) return Nat(5);
        if (v == Nat(5)) return Nat(9);
        return Nat(1);
    };
    auto r = find_cycle(Nat(7), 1000, fake_step);
    CHECK(r.kind == CycleResult::Kind::NontrivialCycle);
    CHECK(r.steps == 3);
    CHECK(r.cycle == std::vector<Nat>{Nat(3), Nat(5), Nat(9)});

    CHECK(find_cycle(Nat(7), 2, fake_step).kind == CycleResult::Kind::Inconclusive);
    CHECK(find_cycle(Nat(11), 10, fake_step).kind == CycleResult::Kind::ReachesOne);
}

TEST_CASE("cycle_search agrees with odd_sequence classification up to 1e5") {
    uint64_t mismatches = 0;
    for (uint64_t x = 1; x <= 100000; x += 2) {
        auto path = core::odd_sequence(Nat(x), core::kDefaultStepLimit);
        auto cyc = cycle_search(Nat(x));
        bool path_reaches = path.termination == core::Termination::ReachedOne;
        bool cyc_reaches = cyc.kind == CycleResult::Kind::ReachesOne ||
                           cyc.kind == CycleResult::Kind::TrivialCycle;
        if (path_reaches != cyc_reaches) ++mismatches;
        if (path_reaches && x != 1 && cyc.steps != path.values.size() - 1) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("residue_table reproduces the six known rows") {
    auto rows = residue_table(6);
    REQUIRE(rows.size() == 6);

    const uint64_t want_x0[] = {3, 1, 13, 5, 53, 21};
    const char* want_bits[] = {"11", "001", "1101", "00101", "110101", "0010101"};
    const uint64_t want_stride[] = {4, 8, 16, 32, 64, 128};
    for (size_t i = 0; i < 6; ++i) {
        CHECK(rows[i].p == i + 1);
        CHECK(rows[i].x0 == Nat(want_x0[i]));
        CHECK(rows[i].pattern_bits == want_bits[i]);
        CHECK(rows[i].stride == Nat(want_stride[i]));
    }
    CHECK(rows[0].branch == tree::Branch::Minus);
    CHECK(rows[0].arg == 0);
    CHECK(rows[1].branch == tree::Branch::Plus);
    CHECK(rows[1].arg == 1);
}

TEST_CASE("every member of a residue progression has first-step valuation p") {
    for (const auto& row : residue_table(8)) {
        bool minus = row.branch == tree::Branch::Minus;
        for (uint64_t k = minus ? 1 : 0; k < 50; ++k) {
            Nat member = minus ? tree::f_minus(Nat(k), row.arg) : tree::f_plus(Nat(k), row.arg);
            CHECK(core::odd_step(member).p == row.p);
            // progression form: x0 plus a multiple of the stride
            CHECK((member - row.x0).mod_small(static_cast<uint32_t>(row.stride.word())) == 0);
        }
    }
}

TEST_CASE("residue_table serializes to CSV") {
    auto csv = residue_table_csv(residue_table(2));
    CHECK(csv == "p,x0,binary,stride\n1,3,11,4\n2,1,001,8\n");
}

TEST_CASE("density_check golden values and oracle agreement") {
    auto d = density_check(1, 16);
    CHECK(d.members == 16384);
    CHECK(d.total_odds == 32768);
    d = density_check(2, 16);
    CHECK(d.members == 8192);
    d = density_check(3, 16);
    CHECK(d.members == 4096);

    for (uint64_t p = 1; p <= 6; ++p) {
        CHECK(density_check(p, 12).members == count_first_p(p, 12));
        CHECK(density_check(p, 12).members == (uint64_t(1) << (11 - p)));
    }

    CHECK_THROWS_AS(density_check(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(density_check(16, 16), std::invalid_argument);
}

TEST_CASE("cross_check_excursions finds no failures at desk scale") {
    CHECK(cross_check_excursions(Nat(1), Nat(999)).empty());
    CHECK(cross_check_excursions(Nat(9), Nat(9)).empty());
    CHECK(cross_check_excursions(Nat(1), Nat(1)).empty());
    CHECK_THROWS_AS(cross_check_excursions(Nat(3), Nat(1)), std::invalid_argument);
}

TEST_CASE("report JSON shape") {
    auto js = report_to_json(verify_range(Nat(1), Nat(99)));
    CHECK(js.find("\"verified_count\": 50") != std::string::npos);
    CHECK(js.find("\"all_reached_one\": true") != std::string::npos);
    CHECK(js.find("\"anomalies\": []") != std::string::npos);
    auto text = report_to_text(verify_range(Nat(1), Nat(99)));
    CHECK(text.find("50") != std::string::npos);
}
