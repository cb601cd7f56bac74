#include "qsdes/glp.hpp"

#include "qsdes/metrics.hpp"
#include "reference_designs.hpp"

#include <doctest.h>

using namespace qsdes;
namespace td = qsdes::testdata;

TEST_CASE("primality") {
    CHECK(is_odd_prime(3));
    CHECK(is_odd_prime(199));
    CHECK_FALSE(is_odd_prime(2));
    CHECK_FALSE(is_odd_prime(1));
    CHECK_FALSE(is_odd_prime(91));  // 7 * 13
}

TEST_CASE("lattice set layout") {
    GlpSet g7 = glp(7);
    CHECK(g7.values == td::lattice7());
    GlpSet g3 = glp(3);
    CHECK(g3.values == td::mat({{1, 2}, {2, 1}, {0, 0}}));
    GlpSet g5 = glp(5);
    CHECK(g5.values.row(1).transpose() == IVector(td::mat({{2, 4, 1, 3}}).row(0)));
    CHECK_THROWS_AS(glp(9), std::invalid_argument);
    CHECK_THROWS_AS(glp(2), std::invalid_argument);
}

TEST_CASE("level map values") {
    std::vector<std::int64_t> w7 = williams_map(7);
    CHECK(w7 == std::vector<std::int64_t>{0, 2, 4, 6, 5, 3, 1});
    CHECK(williams_map(5) == std::vector<std::int64_t>{0, 2, 4, 3, 1});
    CHECK(williams(0, 11) == 0);
    CHECK_THROWS_AS(williams(7, 7), std::invalid_argument);
}

TEST_CASE("inverse level map") {
    std::vector<std::int64_t> inv8;
    for (std::int64_t y = 0; y < 8; ++y) inv8.push_back(williams_inv(y, 8));
    CHECK(inv8 == std::vector<std::int64_t>{0, 7, 1, 6, 2, 5, 3, 4});
    for (std::int64_t mod : {5, 7, 8, 12, 199}) {
        for (std::int64_t x = 0; x < mod; ++x) {
            CHECK(williams_inv(williams(x, mod), mod) == x);
        }
    }
    CHECK(williams_inv(5, 7) == 4);
}

TEST_CASE("even-residue map") {
    CHECK(modified_williams(7, 13) == 12);
    CHECK(modified_williams(0, 13) == 0);
    CHECK(modified_williams(6, 13) == 12);  // two-to-one onto even residues
    CHECK_THROWS_AS(modified_williams(13, 13), std::invalid_argument);
}

TEST_CASE("shifted designs") {
    GlpSet g7 = glp(7);
    ShiftedDesign e1 = shifted(g7, 1, true);
    CHECK(e1.values == td::shifted7_b1());
    CHECK(e1.constant_level() == 2);  // W(1) = 2
    for (Index j = 0; j < 6; ++j) CHECK(e1.values(6, j) == 2);

    ShiftedDesign d0 = shifted(g7, 0, false);
    CHECK(d0.values == g7.values);
}

TEST_CASE("leave one out") {
    GlpSet g7 = glp(7);
    LeaveOneOutDesign t1 = leave_one_out(shifted(g7, 1, true));
    CHECK(t1.values == td::loo7_b1());
    CHECK(t1.deleted_level == 2);

    // relabel map is a bijection from the kept levels onto 1..m
    std::vector<bool> hit(7, false);
    int deleted = 0;
    for (std::int64_t z = 0; z < 7; ++z) {
        std::int64_t img = t1.relabel[std::size_t(z)];
        if (img < 0) {
            ++deleted;
            continue;
        }
        CHECK(img >= 1);
        CHECK(img <= 6);
        CHECK_FALSE(hit[std::size_t(img)]);
        hit[std::size_t(img)] = true;
    }
    CHECK(deleted == 1);

    for (Index i = 0; i < 6; ++i) CHECK(t1.values.row(i).sum() == 21);

    // a design without a constant last row is rejected
    ShiftedDesign broken = shifted(g7, 1, true);
    broken.values(6, 0) = 5;
    CHECK_THROWS_AS(leave_one_out(broken), std::invalid_argument);
}

TEST_CASE("p=5 leave-one-out squares match the references") {
    CHECK(leave_one_out_shifted(5, 1) == td::loo5_b1());
    CHECK(leave_one_out_shifted(5, 3) == td::loo5_b3());
    CHECK(leave_one_out_shifted(5, 4) == td::loo5_b4());
}

TEST_CASE("equidistant square") {
    QuantDesign e6 = equidistant_lhd(6);
    CHECK(l1_distance(e6) == 14);
    CHECK(l2_distance_sq(e6) == 40);
    CHECK(e6.values == td::design6_x());

    // all pairwise L1 distances equal m(m+1)/3
    for (Index i = 0; i < 6; ++i) {
        for (Index j = i + 1; j < 6; ++j) {
            std::int64_t d = (e6.values.row(i) - e6.values.row(j)).cwiseAbs().sum();
            CHECK(d == 14);
        }
    }
    CHECK_THROWS_AS(equidistant_lhd(8), SizeError);   // 2m+1 = 17 prime but m+1 = 9 not
    CHECK_THROWS_AS(equidistant_lhd(10), SizeError);  // 21 composite
}

TEST_CASE("leave-one-out suite over moderate primes") {
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        const std::int64_t m = p - 1;
        GlpSet g = glp(p);
        for (std::int64_t b = 0; b < p; ++b) {
            for (bool transform : {false, true}) {
                IMatrix loo = leave_one_out(shifted(g, b, transform)).values;
                CAPTURE(p);
                CAPTURE(b);
                CAPTURE(transform);
                REQUIRE(is_latin_square(loo));
                SeqDesign o(loo);
                PairCounts pc = pair_counts(o);
                CHECK(pc.min_off_diagonal() == 1);
                CHECK(pc.max_off_diagonal() == 1);
                CHECK(hamming_distance(o) == m);
            }
        }
    }
}

TEST_CASE("mirror pairs share r_ave over moderate primes") {
    for (std::int64_t p : {5, 7, 11, 13, 17, 19}) {
        std::vector<Rational> rs;
        for (std::int64_t b = 0; b < p; ++b) {
            rs.push_back(r_ave(SeqDesign(leave_one_out_shifted(p, b))));
        }
        for (std::int64_t b = 0; b < p; ++b) {
            for (std::int64_t b2 = b + 1; b2 < p; ++b2) {
                if (b + b2 == (p - 1) / 2 || b + b2 == (3 * p - 1) / 2) {
                    CAPTURE(p);
                    CAPTURE(b);
                    CAPTURE(b2);
                    CHECK(rs[std::size_t(b)] == rs[std::size_t(b2)]);
                }
            }
        }
    }
}

TEST_CASE("correlation stays below the coarse bound") {
    for (std::int64_t p : {7, 11, 13, 17, 19, 23, 29}) {
        Rational bound(5 * (p + 1), (p - 2) * (p - 2));
        for (std::int64_t b = 0; b < p; ++b) {
            CHECK(r_ave(SeqDesign(leave_one_out_shifted(p, b))) < bound);
        }
    }
}
