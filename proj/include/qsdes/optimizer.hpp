#pragma once

#include "qsdes/rational.hpp"
#include "qsdes/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qsdes {

struct TAConfig {
    std::int64_t outer = 100;   // I
    std::int64_t inner = 100;   // J, so the move budget is I*J
    double t1 = 0.05;           // initial relative threshold
    double t_tau = 1e-6;        // final relative threshold
    Rational weight = Rational(1, 2);  // w in the combined criterion
    std::uint64_t seed = 0;
};

/// Thresholds T_1..T_{I*J}: constant within an outer round, decaying by
/// gamma = (T_tau/T_1)^(1/(I-1)) between rounds; constant T_1 when I = 1.
std::vector<double> threshold_schedule(const TAConfig& cfg);

struct TATrace {
    std::vector<double> best_per_outer;  // non-increasing
    std::int64_t accepted = 0;
    Rational final_objective;
};

/// Combined criterion for stacked designs: w*r_ave + (1-w)*(1 - dH/(m-1)), exact.
Rational psi_value(const Rational& rave, std::int64_t d_hamming, std::int64_t m,
                   const Rational& weight = Rational(1, 2));

/// Search over level permutations of a single Latin square, minimizing r_ave.
/// Each move swaps two levels everywhere; a move is kept when
/// r_ave(O') < (1+T_i) * r_ave(O), compared in exact arithmetic. The returned
/// design is the best visited, never worse than the input.
std::pair<SeqDesign, TATrace> ta_minimize_rave(const SeqDesign& o0, const TAConfig& cfg);

/// Search over per-block level permutations of a stacked design, minimizing psi.
/// Each move picks one block and swaps two levels inside it only.
std::pair<BlockedSeqDesign, TATrace> ta_minimize_psi(const BlockedSeqDesign& o0,
                                                     const TAConfig& cfg);

}  // namespace qsdes
