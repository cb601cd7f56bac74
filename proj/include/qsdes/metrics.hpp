#pragma once

#include "qsdes/rational.hpp"
#include "qsdes/types.hpp"

#include <optional>

namespace qsdes {

/// Minimum pairwise L1 (Manhattan) distance over the rows of X.
std::int64_t l1_distance(const QuantDesign& x);

/// Minimum pairwise squared L2 distance over the rows of X. Kept integral;
/// callers take square roots only for display.
std::int64_t l2_distance_sq(const QuantDesign& x);

/// Minimum pairwise Hamming distance over the rows of O.
std::int64_t hamming_distance(const SeqDesign& o);

namespace detail {
std::int64_t l1_min(const IMatrix& a);
std::int64_t l2sq_min(const IMatrix& a);
std::int64_t hamming_min(const IMatrix& a);
}  // namespace detail

/// Average absolute column correlation, exact. Requires every column of O to share
/// its sum and sum of squares (true for Latin squares and stacked Latin squares,
/// hence for every constructed design). Throws std::domain_error on a zero-variance
/// column and std::invalid_argument when column moments differ.
Rational r_ave(const SeqDesign& o);

/// Average absolute column correlation in floating point, for arbitrary columns.
double r_ave_numeric(const SeqDesign& o);

/// Adjacent-pair counts: t[i][j] = occurrences of "i, j" in consecutive positions.
PairCounts pair_counts(const SeqDesign& o);

struct DistanceBounds {
    std::int64_t d1_upper;
    std::int64_t d2sq_upper;
    std::int64_t dH_upper;
};

/// Distance upper bounds for an n x m LHD / sequence design:
/// d1 <= floor((n+1)m/3), d2^2 <= floor(n(n+1)m/6), dH <= m (n <= m) or m-1.
DistanceBounds bounds(std::int64_t n, std::int64_t m);

/// Tighter L1/L2 bounds for marginally coupled designs with n = 2m:
/// floor((m+1)m/3) and floor(m^2(m+1)/6).
std::pair<std::int64_t, std::int64_t> n2m_bounds(std::int64_t m);

struct McdResult {
    bool coupled = false;
    // first violation, when not coupled: column of O (0-based) and component level
    Index bad_column = -1;
    std::int64_t bad_level = -1;
};

/// Marginally coupled structure check by definition: for every column j of O and
/// every level c, the k rows of X selected by O(.,j) = c collapse (x -> ceil(x/m))
/// to each of 1..k exactly once in every X column. Requires n to be a multiple of m.
McdResult is_marginally_coupled(const QSDesign& d);

/// Structural route to the same property: order rows by the given X column and test
/// that each of the k consecutive m-row blocks of O is a Latin square.
bool mcd_by_block_decomposition(const QSDesign& d, Index sort_column = 0);

struct MetricsReport {
    std::int64_t d1 = 0;
    std::int64_t d2sq = 0;
    std::int64_t dH = 0;
    double r_ave_value = 0.0;
    std::optional<Rational> r_ave_exact;
    PairCounts t;
    std::int64_t d1_upper = 0;
    std::int64_t d2sq_upper = 0;
    std::int64_t dH_upper = 0;
    bool is_lhd = false;
    bool is_pair_balanced = false;
    std::optional<bool> is_marginally_coupled;  // empty when n is not a multiple of m
};

/// Populate every criterion, bound and structural flag for a design.
MetricsReport evaluate(const QSDesign& d);

}  // namespace qsdes
