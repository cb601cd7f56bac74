#include "qsdes/optimizer.hpp"

#include "qsdes/metrics.hpp"
#include "qsdes/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdes {

std::vector<double> threshold_schedule(const TAConfig& cfg) {
    if (cfg.outer < 1 || cfg.inner < 1 || cfg.t1 <= 0 || cfg.t_tau <= 0 || cfg.t_tau > cfg.t1) {
        throw std::invalid_argument("threshold_schedule: need I,J >= 1 and 0 < T_tau <= T_1");
    }
    const double gamma =
        cfg.outer == 1 ? 1.0 : std::pow(cfg.t_tau / cfg.t1, 1.0 / double(cfg.outer - 1));
    std::vector<double> ts;
    ts.reserve(std::size_t(cfg.outer * cfg.inner));
    double t = cfg.t1;
    for (std::int64_t i = 0; i < cfg.outer; ++i) {
        for (std::int64_t j = 0; j < cfg.inner; ++j) ts.push_back(t);
        t *= gamma;
    }
    return ts;
}

Rational psi_value(const Rational& rave, std::int64_t d_hamming, std::int64_t m,
                   const Rational& weight) {
    Rational miss(m - 1 - d_hamming, m - 1);
    return weight * rave + (Rational(1) - weight) * miss;
}

namespace {

// Snap a threshold to a dyadic rational so the accept test stays exact.
Rational dyadic(double t) {
    return Rational::from_double(std::ldexp(std::nearbyint(std::ldexp(t, 30)), -30));
}

// Incremental state for level-swap search on a stack of k Latin squares.
// Tracks the column Gram matrix (for r_ave) and, optionally, all cross-block
// Hamming distances (within-block distances equal m for Latin squares and
// level swaps keep the blocks Latin, so only cross pairs can move).
class LevelSwapEngine {
public:
    LevelSwapEngine(IMatrix o, Index k, bool track_hamming)
        : o_(std::move(o)), n_(o_.rows()), m_(o_.cols()), k_(k), track_h_(track_hamming) {
        pos_.assign(std::size_t(n_), std::vector<Index>(std::size_t(m_) + 1, 0));
        for (Index i = 0; i < n_; ++i) {
            for (Index j = 0; j < m_; ++j) pos_[std::size_t(i)][std::size_t(o_(i, j))] = j;
        }
        std::int64_t s = 0, q = 0;
        for (Index i = 0; i < n_; ++i) {
            s += o_(i, 0);
            q += o_(i, 0) * o_(i, 0);
        }
        s2_ = Int128(s) * s;
        denom_ = Int128(n_) * q - s2_;
        gram_ = IMatrix::Zero(m_, m_);
        for (Index u = 0; u < m_; ++u) {
            for (Index v = u + 1; v < m_; ++v) {
                std::int64_t dot = 0;
                for (Index i = 0; i < n_; ++i) dot += o_(i, u) * o_(i, v);
                gram_(u, v) = dot;
            }
        }
        if (track_h_) {
            hist_.assign(std::size_t(m_) + 1, 0);
            dist_.resize(std::size_t(n_) * std::size_t(n_), 0);
            for (Index i = 0; i < n_; ++i) {
                for (Index j = i + 1; j < n_; ++j) {
                    if (i / m_ == j / m_) continue;  // within-block: constant m
                    std::int16_t d = 0;
                    for (Index c = 0; c < m_; ++c) d += (o_(i, c) != o_(j, c)) ? 1 : 0;
                    dist_[std::size_t(i) * std::size_t(n_) + std::size_t(j)] = d;
                    ++hist_[std::size_t(d)];
                }
            }
        }
    }

    // Swap levels l1 and l2 in block b (whole design when b covers it).
    // Applying the same swap again undoes it.
    void apply(Index block, std::int64_t l1, std::int64_t l2) {
        const Index lo = block * m_, hi = lo + m_;
        for (Index i = lo; i < hi; ++i) {
            auto& prow = pos_[std::size_t(i)];
            const Index a = prow[std::size_t(l1)], b = prow[std::size_t(l2)];
            const std::int64_t delta = l2 - l1;
            for (Index v = 0; v < m_; ++v) {
                if (v == a || v == b) continue;
                gram_(std::min(a, v), std::max(a, v)) += delta * o_(i, v);
                gram_(std::min(b, v), std::max(b, v)) -= delta * o_(i, v);
            }
            if (track_h_) update_hamming(i, a, b, l1, l2);
            o_(i, a) = l2;
            o_(i, b) = l1;
            prow[std::size_t(l1)] = b;
            prow[std::size_t(l2)] = a;
        }
    }

    // Sum over column pairs of |n*G_uv - S^2|; r_ave = 2*sum / (m(m-1)*denom).
    Int128 abs_numerator_sum() const {
        Int128 acc = 0;
        for (Index u = 0; u < m_; ++u) {
            for (Index v = u + 1; v < m_; ++v) {
                Int128 num = Int128(n_) * gram_(u, v) - s2_;
                acc += num < 0 ? -num : num;
            }
        }
        return acc;
    }

    Rational rave() const { return rave_of(abs_numerator_sum()); }

    Rational rave_of(Int128 abs_sum) const {
        return Rational(2 * abs_sum, denom_ * m_ * (m_ - 1));
    }

    std::int64_t min_hamming() const {
        if (k_ < 2) return m_;
        for (std::int64_t d = 0; d < m_; ++d) {
            if (hist_[std::size_t(d)] > 0) return d;
        }
        return m_;
    }

    std::int64_t pairs_at(std::int64_t d) const { return hist_[std::size_t(d)]; }
    const IMatrix& design() const { return o_; }

private:
    void update_hamming(Index i, Index a, Index b, std::int64_t l1, std::int64_t l2) {
        const Index my_block = i / m_;
        for (Index r = 0; r < n_; ++r) {
            if (r / m_ == my_block) continue;
            int delta = 0;
            delta += (o_(r, a) == l1 ? 1 : 0) - (o_(r, a) == l2 ? 1 : 0);
            delta += (o_(r, b) == l2 ? 1 : 0) - (o_(r, b) == l1 ? 1 : 0);
            if (delta == 0) continue;
            auto idx = r < i ? std::size_t(r) * std::size_t(n_) + std::size_t(i)
                             : std::size_t(i) * std::size_t(n_) + std::size_t(r);
            --hist_[std::size_t(dist_[idx])];
            dist_[idx] = std::int16_t(dist_[idx] + delta);
            ++hist_[std::size_t(dist_[idx])];
        }
    }

    IMatrix o_;
    Index n_, m_, k_;
    bool track_h_;
    std::vector<std::vector<Index>> pos_;
    IMatrix gram_;
    Int128 s2_ = 0;
    Int128 denom_ = 0;
    std::vector<std::int64_t> hist_;
    std::vector<std::int16_t> dist_;
};

}  // namespace

std::pair<SeqDesign, TATrace> ta_minimize_rave(const SeqDesign& o0, const TAConfig& cfg) {
    if (!is_latin_square(o0.values)) {
        throw std::invalid_argument("ta_minimize_rave: input must be a Latin square");
    }
    const Index m = o0.m();
    LevelSwapEngine eng(o0.values, 1, false);
    Rng rng(cfg.seed);
    const auto schedule = threshold_schedule(cfg);

    Int128 current = eng.abs_numerator_sum();
    Int128 best = current;
    IMatrix best_design = eng.design();
    TATrace trace;
    trace.best_per_outer.reserve(std::size_t(cfg.outer));

    std::size_t step = 0;
    for (std::int64_t outer = 0; outer < cfg.outer && best != 0; ++outer) {
        for (std::int64_t inner = 0; inner < cfg.inner; ++inner, ++step) {
            if (current == 0) break;
            std::int64_t l1 = rng.bounded(m) + 1;
            std::int64_t l2 = rng.bounded(m - 1) + 1;
            if (l2 >= l1) ++l2;
            eng.apply(0, l1, l2);
            Int128 cand = eng.abs_numerator_sum();
            // cand < (1+T)*current, exactly, with T snapped to a dyadic rational
            Rational thr = Rational(1) + dyadic(schedule[step]);
            bool accepted = Rational(cand, 1) < thr * Rational(current, 1);
            if (accepted) {
                current = cand;
                ++trace.accepted;
                if (current < best) {
                    best = current;
                    best_design = eng.design();
                }
            } else {
                eng.apply(0, l1, l2);  // level swaps are involutions
            }
        }
        trace.best_per_outer.push_back(eng.rave_of(best).to_double());
    }
    trace.final_objective = eng.rave_of(best);
    return {SeqDesign(std::move(best_design)), std::move(trace)};
}

std::pair<BlockedSeqDesign, TATrace> ta_minimize_psi(const BlockedSeqDesign& o0,
                                                     const TAConfig& cfg) {
    if (o0.k < 2) throw std::invalid_argument("ta_minimize_psi: need at least two blocks");
    const Index m = o0.m();
    LevelSwapEngine eng(o0.stacked.values, o0.k, true);
    Rng rng(cfg.seed);
    const auto schedule = threshold_schedule(cfg);

    auto objective = [&]() { return psi_value(eng.rave(), eng.min_hamming(), m, cfg.weight); };

    Rational current = objective();
    Rational best = current;
    IMatrix best_design = eng.design();
    TATrace trace;
    trace.best_per_outer.reserve(std::size_t(cfg.outer));

    const Rational zero(0);
    std::size_t step = 0;
    for (std::int64_t outer = 0; outer < cfg.outer && best != zero; ++outer) {
        for (std::int64_t inner = 0; inner < cfg.inner; ++inner, ++step) {
            if (current == zero) break;
            Index block = Index(rng.bounded(o0.k));
            std::int64_t l1 = rng.bounded(m) + 1;
            std::int64_t l2 = rng.bounded(m - 1) + 1;
            if (l2 >= l1) ++l2;
            eng.apply(block, l1, l2);
            Rational cand = objective();
            Rational thr = Rational(1) + dyadic(schedule[step]);
            if (cand < thr * current) {
                current = cand;
                ++trace.accepted;
                if (cand < best) {
                    best = cand;
                    best_design = eng.design();
                }
            } else {
                eng.apply(block, l1, l2);
            }
        }
        trace.best_per_outer.push_back(best.to_double());
    }
    trace.final_objective = best;
    return {BlockedSeqDesign(o0.k, SeqDesign(std::move(best_design))), std::move(trace)};
}

}  // namespace qsdes
