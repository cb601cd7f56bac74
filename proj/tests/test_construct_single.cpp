#include "qsdes/construct_single.hpp"

#include "qsdes/glp.hpp"
#include "qsdes/metrics.hpp"
#include "reference_designs.hpp"

#include <cmath>
#include <doctest.h>

using namespace qsdes;
namespace td = qsdes::testdata;

TEST_CASE("shift selections match the frozen table") {
    for (const auto& row : td::shift_table()) {
        CAPTURE(row.p);
        B1Selection b1 = select_b1(row.p);
        CHECK(b1.minimizers == row.b1);
        CHECK(b1.chosen == row.b1.front());
        B2Selection b2 = select_b2(row.p);
        CHECK(b2.candidates == row.b2);
    }
}

TEST_CASE("the four corrupted published b2 cells are a displaced block") {
    const auto& rows = td::shift_table();
    // rows 10..13 (p = 41, 43, 47, 53) print the values belonging two rows earlier
    for (std::size_t i = 10; i <= 13; ++i) {
        CAPTURE(rows[i].p);
        CHECK(rows[i].b2_printed == rows[i - 2].b2);
    }
    // and the printed p=41 cell breaks the selection's own distance floor at b=3,
    // so it cannot be the true selection there; the corrected pair clears it
    const std::int64_t m = 40;
    const double floor_bound =
        double(m * m - m) / 3.0 + std::sqrt(double(m) * double(m + 2) / 27.0) - 2.0;
    auto d1_of = [](std::int64_t b) {
        return double(l1_distance(QuantDesign(leave_one_out_shifted(41, b))));
    };
    CHECK(std::min(d1_of(rows[10].b2_printed[0]), d1_of(rows[10].b2_printed[1])) < floor_bound);
    for (std::int64_t b : rows[10].b2) CHECK(d1_of(b) >= floor_bound);
}

TEST_CASE("b1 at p=59 sits at 0.018") {
    B1Selection b1 = select_b1(59);
    CHECK(b1.r_value.to_fixed(3) == "0.018");
}

TEST_CASE("b2 chooses the larger squared L2 candidate") {
    B2Selection b2 = select_b2(7);
    CHECK(b2.c == 2);
    CHECK(b2.candidates == std::vector<std::int64_t>{4, 6});
    std::int64_t d4 = l2_distance_sq(QuantDesign(leave_one_out_shifted(7, 4)));
    std::int64_t d6 = l2_distance_sq(QuantDesign(leave_one_out_shifted(7, 6)));
    CHECK(((b2.chosen == 4 && d4 >= d6) || (b2.chosen == 6 && d6 > d4)));

    CHECK(select_b2(13).c == 4);
}

TEST_CASE("cyclic pair-balanced square") {
    SeqDesign m8 = williams_latin_square(8);
    CHECK(m8.values.row(0).transpose() == IVector(td::mat({{8, 7, 1, 6, 2, 5, 3, 4}}).row(0)));
    CHECK(is_latin_square(m8.values));
    PairCounts pc = pair_counts(m8);
    CHECK(pc.min_off_diagonal() == 1);
    CHECK(pc.max_off_diagonal() == 1);
    CHECK(r_ave(m8) == Rational(1, 3));

    SeqDesign m2 = williams_latin_square(2);
    CHECK(m2.values == td::mat({{2, 1}, {1, 2}}));

    CHECK_THROWS_AS(williams_latin_square(5), std::invalid_argument);
}

TEST_CASE("totient modulus search") {
    TotientDecomposition t8 = find_totient_modulus(8);
    CHECK(t8.n_modulus == 17);
    CHECK(t8.cls == TotientClass::A);
    CHECK(t8.h == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8});

    TotientDecomposition t2 = find_totient_modulus(2);
    CHECK(t2.n_modulus == 5);
    CHECK(t2.cls == TotientClass::A);

    TotientDecomposition t32 = find_totient_modulus(32);
    CHECK(t32.n_modulus == 128);
    CHECK(t32.cls == TotientClass::C);

    // 68 is a nontotient: no modulus exists for m = 34
    CHECK_THROWS_AS(find_totient_modulus(34), SizeError);
    CHECK_THROWS_AS(find_totient_modulus(7), SizeError);
}

TEST_CASE("product square for m=8") {
    auto [x8, td8] = latin_square_L(8);
    CHECK(td8.n_modulus == 17);
    CHECK(x8.values == td::design8_x());
    CHECK(l1_distance(x8) == 24);
    CHECK(l2_distance_sq(x8) == 90);
    CHECK(is_latin_square(x8.values));
    CHECK(x8.values(0, 0) == 1);  // min(1, 16) = 1
}

TEST_CASE("product square ratios at m=14") {
    auto [x14, td14] = latin_square_L(14);
    DistanceBounds b = bounds(14, 14);
    CHECK(double(l1_distance(x14)) / double(b.d1_upper) == doctest::Approx(1.0));
    double d2r = std::sqrt(double(l2_distance_sq(x14)) / double(b.d2sq_upper));
    CHECK(d2r == doctest::Approx(0.958).epsilon(0.0006));
}

TEST_CASE("class-a product squares are L1 equidistant") {
    for (std::int64_t m : {2, 8, 14, 20}) {
        auto [x, tdx] = latin_square_L(m);
        REQUIRE(tdx.cls == TotientClass::A);
        const std::int64_t common = m * (m + 1) / 3;
        for (Index i = 0; i < m; ++i) {
            for (Index j = i + 1; j < m; ++j) {
                CHECK((x.values.row(i) - x.values.row(j)).cwiseAbs().sum() == common);
            }
        }
    }
}

TEST_CASE("n=m construction, m=6") {
    TAConfig ta;
    QSDesign d = construct_nm(6, ta, 0);
    CHECK(d.o.values == td::design6_o());
    MetricsReport r = evaluate(d);
    CHECK(r.d1 == 14);
    CHECK(r.d2sq == 40);
    CHECK(r.dH == 6);
    CHECK(*r.r_ave_exact == Rational(1, 5));
    CHECK(r.is_pair_balanced);
    CHECK(r.t.max_off_diagonal() == 1);
}

TEST_CASE("n=m construction, m=8") {
    TAConfig ta;
    ta.seed = 0;
    QSDesign d = construct_nm(8, ta, 3);
    MetricsReport r = evaluate(d);
    CHECK(r.d1 == 24);
    CHECK(r.d2sq == 90);
    CHECK(r.dH == 8);
    CHECK(r.r_ave_value <= 0.1430 + 1e-12);
    CHECK(r.t.max_off_diagonal() == 1);
}

TEST_CASE("n=m construction, m=4") {
    TAConfig ta;
    QSDesign d = construct_nm(4, ta, 0);
    CHECK(*d.meta.find("b1") == 1);
    CHECK(r_ave(d.o) == Rational(1, 3));
}

TEST_CASE("n=m construction errors") {
    TAConfig ta;
    CHECK_THROWS_AS(construct_nm(7, ta, 0), SizeError);   // odd, 8 composite
    CHECK_THROWS_AS(construct_nm(34, ta, 0), SizeError);  // even, nontotient
    CHECK_THROWS_AS(construct_nm(1, ta, 0), SizeError);
}

TEST_CASE("shifted-square distance floor for all primes up to 199") {
    for (std::int64_t p = 5; p <= 199; ++p) {
        if (!is_odd_prime(p)) continue;
        const std::int64_t m = p - 1;
        const double floor_bound =
            double(m * m - m) / 3.0 + std::sqrt(double(m) * double(m + 2) / 27.0) - 2.0;
        for (std::int64_t b : select_b2(p).candidates) {
            std::int64_t d1 = l1_distance(QuantDesign(leave_one_out_shifted(p, b)));
            CAPTURE(p);
            CAPTURE(b);
            CHECK(double(d1) >= floor_bound);
        }
    }
}

TEST_CASE("reference baseline") {
    QSDesign base = competitor_baseline(6);
    MetricsReport r = evaluate(base);
    CHECK(r.d1 == 12);
    CHECK(r.d2sq == 28);
    CHECK(r.r_ave_exact->to_fixed(2) == "0.36");
    for (Index i = 0; i < base.n(); ++i) {
        CHECK(is_permutation_1n(base.o.values.row(i).transpose(), base.m()));
    }
    CHECK_THROWS_AS(competitor_baseline(7), SizeError);
}

TEST_CASE("our n=m design dominates the baseline at m=58") {
    TAConfig ta;
    QSDesign ours = construct_nm(58, ta, 0);
    QSDesign base = competitor_baseline(58);
    MetricsReport ro = evaluate(ours);
    MetricsReport rb = evaluate(base);
    CHECK(double(ro.d1) / double(ro.d1_upper) > double(rb.d1) / double(rb.d1_upper));
    CHECK(ro.r_ave_value < rb.r_ave_value);
}
