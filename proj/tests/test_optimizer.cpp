#include "qsdes/optimizer.hpp"

#include "qsdes/construct_single.hpp"
#include "qsdes/metrics.hpp"
#include "reference_designs.hpp"

#include <algorithm>
#include <doctest.h>
#include <numeric>

using namespace qsdes;
namespace td = qsdes::testdata;

namespace {

SeqDesign relabel(const SeqDesign& o, const std::vector<std::int64_t>& lvl) {
    IMatrix a = o.values;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) a(i, j) = lvl[std::size_t(o.values(i, j) - 1)] + 1;
    }
    return SeqDesign(a);
}

Rational exhaustive_min_rave(const SeqDesign& o) {
    const Index m = o.m();
    std::vector<std::int64_t> lvl(static_cast<std::size_t>(m));
    std::iota(lvl.begin(), lvl.end(), 0);
    Rational best = r_ave(o);
    do {
        Rational r = r_ave(relabel(o, lvl));
        if (r < best) best = r;
    } while (std::next_permutation(lvl.begin(), lvl.end()));
    return best;
}

}  // namespace

TEST_CASE("threshold schedule") {
    TAConfig cfg;
    cfg.outer = 2;
    cfg.inner = 2;
    cfg.t1 = 0.1;
    cfg.t_tau = 0.01;
    auto ts = threshold_schedule(cfg);
    REQUIRE(ts.size() == 4);
    CHECK(ts[0] == doctest::Approx(0.1));
    CHECK(ts[1] == doctest::Approx(0.1));
    CHECK(ts[2] == doctest::Approx(0.01));
    CHECK(ts[3] == doctest::Approx(0.01));

    TAConfig degenerate;
    degenerate.outer = 1;
    degenerate.inner = 3;
    degenerate.t1 = 0.05;
    degenerate.t_tau = 0.05;
    auto flat = threshold_schedule(degenerate);
    REQUIRE(flat.size() == 3);
    for (double t : flat) CHECK(t == doctest::Approx(0.05));

    TAConfig big;
    CHECK(threshold_schedule(big).size() == std::size_t(big.outer * big.inner));
}

TEST_CASE("psi combines correlation and distance shortfall") {
    CHECK(psi_value(Rational(0), 7, 8) == Rational(0));
    CHECK(psi_value(Rational(1, 7), 6, 8) == Rational(1, 7) * Rational(1, 2) + Rational(1, 14));
    CHECK(psi_value(Rational(1, 2), 0, 5, Rational(1, 4)) ==
          Rational(1, 8) + Rational(3, 4));
}

TEST_CASE("level search reaches 1/7 on the m=8 square") {
    SeqDesign m8 = williams_latin_square(8);
    Rational best(1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        TAConfig cfg;
        cfg.seed = seed;
        auto [o, trace] = ta_minimize_rave(m8, cfg);
        CHECK(trace.final_objective == r_ave(o));
        best = std::min(best, trace.final_objective);
    }
    CHECK(best <= Rational(143, 1000));
}

TEST_CASE("search output is never worse and preserves structure") {
    SeqDesign m8 = williams_latin_square(8);
    TAConfig cfg;
    cfg.seed = 12;
    auto [o, trace] = ta_minimize_rave(m8, cfg);
    CHECK(r_ave(o) <= r_ave(m8));
    CHECK(is_latin_square(o.values));
    CHECK(hamming_distance(o) == 8);
    PairCounts pc = pair_counts(o);
    CHECK(pc.min_off_diagonal() == 1);
    CHECK(pc.max_off_diagonal() == 1);

    // best-so-far trace is non-increasing
    for (std::size_t i = 1; i < trace.best_per_outer.size(); ++i) {
        CHECK(trace.best_per_outer[i] <= trace.best_per_outer[i - 1] + 1e-15);
    }
}

TEST_CASE("search is deterministic in the seed") {
    SeqDesign m8 = williams_latin_square(8);
    TAConfig cfg;
    cfg.seed = 77;
    auto [o1, t1] = ta_minimize_rave(m8, cfg);
    auto [o2, t2] = ta_minimize_rave(m8, cfg);
    CHECK(o1.values == o2.values);
    CHECK(t1.accepted == t2.accepted);
    CHECK(t1.final_objective == t2.final_objective);
}

TEST_CASE("search attains the exhaustive optimum for small m") {
    for (Index m : {4, 6}) {
        SeqDesign base = williams_latin_square(m);
        Rational target = exhaustive_min_rave(base);
        Rational reached(1);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            TAConfig cfg;
            cfg.outer = 50;
            cfg.inner = 100;
            cfg.seed = seed;
            auto [o, trace] = ta_minimize_rave(base, cfg);
            reached = std::min(reached, trace.final_objective);
        }
        CAPTURE(m);
        CHECK(reached == target);
    }
}

TEST_CASE("rejects non-latin input") {
    CHECK_THROWS_AS(ta_minimize_rave(SeqDesign(td::mat({{1, 2}, {1, 2}})), TAConfig{}),
                    std::invalid_argument);
}

TEST_CASE("block search lowers the combined objective") {
    SeqDesign m8 = williams_latin_square(8);
    IMatrix init(16, 8);
    init.topRows(8) = m8.values;
    init.bottomRows(8) = m8.values;
    BlockedSeqDesign stacked(2, SeqDesign(init));

    TAConfig cfg;
    cfg.seed = 5;
    auto [out, trace] = ta_minimize_psi(stacked, cfg);
    // identical blocks start at dH = 0; the search must separate them
    SeqDesign result = out.stacked;
    CHECK(hamming_distance(result) >= 5);
    Rational start = psi_value(r_ave(stacked.stacked), hamming_distance(stacked.stacked), 8);
    CHECK(trace.final_objective <= start);
    for (std::int64_t b = 0; b < 2; ++b) {
        CHECK(is_latin_square(result.values.middleRows(b * 8, 8)));
    }
    CHECK(trace.final_objective ==
          psi_value(r_ave(result), hamming_distance(result), 8, cfg.weight));
    PairCounts pc = pair_counts(result);
    CHECK(pc.min_off_diagonal() == 2);  // block swaps keep the stack pair-balanced
    CHECK(pc.max_off_diagonal() == 2);

    CHECK_THROWS_AS(ta_minimize_psi(BlockedSeqDesign(1, m8), TAConfig{}), std::invalid_argument);
}
