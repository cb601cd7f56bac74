#pragma once

#include "qsdes/optimizer.hpp"
#include "qsdes/rational.hpp"
#include "qsdes/types.hpp"

#include <vector>

namespace qsdes {

/// Shift selection for the sequence part: the b minimizing the exact r_ave of the
/// leave-one-out Williams design, ties broken to the smallest b.
struct B1Selection {
    std::int64_t p = 0;
    std::vector<std::int64_t> minimizers;  // sorted
    std::int64_t chosen = 0;
    Rational r_value;
};

B1Selection select_b1(std::int64_t p);

/// Shift selection for the quantitative part. c is the integer near
/// sqrt((p^2-1)/12), bumped by one when c^2 + 2(c+1)^2 < (p^2-1)/4; the candidate
/// shifts are W^{-1}((p-1)/2 +/- c). The direct floor((p^2-1)/12) reading does not
/// reproduce the frozen selection tables in the tests; the square-root reading does.
struct B2Selection {
    std::int64_t p = 0;
    std::int64_t c = 0;
    std::vector<std::int64_t> candidates;  // sorted, usually two
    std::int64_t chosen = 0;               // larger leave-one-out d2^2, tie -> smaller b
};

B2Selection select_b2(std::int64_t p);

/// Cyclic pair-balanced Latin square from the inverse Williams ordering:
/// row i = (W^{-1}(0), ..., W^{-1}(m-1)) + (i-1) mod m, with 0 replaced by m.
SeqDesign williams_latin_square(std::int64_t m);

enum class TotientClass { A, B, C, Other };  // N in {p, 2p} / 4p / 2^t / anything else

/// Modulus N with phi(N) = 2m plus the m residues below N/2 coprime to N.
/// Preference order: class A, then B, then C, then the smallest other N.
struct TotientDecomposition {
    std::int64_t m = 0;
    std::int64_t n_modulus = 0;
    TotientClass cls = TotientClass::Other;
    std::vector<std::int64_t> h;
};

TotientDecomposition find_totient_modulus(std::int64_t m);

const char* totient_class_name(TotientClass c);

/// Latin square l_ij = min(h_i h_j mod N, N - h_i h_j mod N), relabeled h_i -> i.
std::pair<QuantDesign, TotientDecomposition> latin_square_L(std::int64_t m);

/// n = m construction. Dispatches on m: when m+1 is an odd prime the design comes
/// from shifted leave-one-out lattice sets (with the equidistant variant preferred
/// for X when 2m+1 is also prime, lexicographically on (d1, d2^2)); otherwise, for
/// even m with a totient modulus, X = relabeled L and O is the level-permutation
/// search output started from the Williams Latin square.
QSDesign construct_nm(std::int64_t m, const TAConfig& ta, std::uint64_t seed);

/// Reference design both parts of which equal the first m rows of the lattice set.
QSDesign competitor_baseline(std::int64_t m);

}  // namespace qsdes
