#pragma once

#include "qsdes/types.hpp"

#include <cstdint>
#include <vector>

namespace qsdes {

/// Salesman scheduling instance: city 0 is the start; s(i, j) is the travel time
/// in days from city i (0..m) to city j (1..m, stored 0-based by destination).
struct TspInstance {
    Index m = 0;
    double income_per_city = 0;      // a
    double commission_per_day = 0;   // e
    double expense_per_day = 0;      // b
    double penalty_per_day = 0;      // f
    DVector deadlines;               // d_1..d_m
    DMatrix travel;                  // (m+1) x m
    double stay_min = 0;
    double stay_max = 0;

    double travel_time(Index from, Index to) const { return travel(from, to - 1); }
};

/// Candidate strategy: the visit order and the stay durations in visit order
/// (stays[l] is the time spent at city order[l]).
struct TspStrategy {
    std::vector<Index> order;  // permutation of 1..m
    DVector stays;
};

/// Stay vector conversions between visit order and city index order.
DVector stays_by_city(const TspStrategy& s);
TspStrategy strategy_from_city_stays(const std::vector<Index>& order, const DVector& city_stays);

/// Completion time at each visited city: prefix sums of travel legs and stays.
DVector completion_times(const TspInstance& inst, const TspStrategy& s);

/// Per-city lateness: max(0, completion - deadline of the visited city).
DVector delays(const TspInstance& inst, const TspStrategy& s);

/// Total profit: m*a + e*sum(stays) - b*final_completion - f*sum(delays).
double profit(const TspInstance& inst, const TspStrategy& s);

/// The six-city benchmark instance with stay bounds [1, 4].
TspInstance paper_instance();

/// Map an n-run design to n strategies: X columns scaled affinely from {1..n} into
/// the stay box, O rows as visit orders.
std::vector<TspStrategy> strategies_from_design(const TspInstance& inst, const QSDesign& d);

struct BaselineResult {
    double best = 0;
    DVector profits;
    std::vector<TspStrategy> strategies;
};

/// n random strategies with pairwise-distinct visit orders and uniform stays in the
/// bound box. Errors when n exceeds m! distinct orders.
BaselineResult random_baseline(const TspInstance& inst, std::int64_t n, std::uint64_t seed);

}  // namespace qsdes
