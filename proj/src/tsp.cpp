#include "qsdes/tsp.hpp"

#include "qsdes/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qsdes {

namespace {

void check_strategy(const TspInstance& inst, const TspStrategy& s) {
    const Index m = inst.m;
    if (Index(s.order.size()) != m || s.stays.size() != m) {
        throw std::invalid_argument("strategy dimensions do not match the instance");
    }
    std::vector<bool> seen(std::size_t(m), false);
    for (Index c : s.order) {
        if (c < 1 || c > m || seen[std::size_t(c - 1)]) {
            throw std::invalid_argument("visit order is not a permutation of 1..m");
        }
        seen[std::size_t(c - 1)] = true;
    }
}

std::int64_t factorial_capped(Index m) {
    std::int64_t f = 1;
    for (Index i = 2; i <= m; ++i) {
        if (f > (std::int64_t(1) << 62) / i) return std::int64_t(1) << 62;
        f *= i;
    }
    return f;
}

}  // namespace

DVector stays_by_city(const TspStrategy& s) {
    DVector by_city(Index(s.order.size()));
    for (std::size_t l = 0; l < s.order.size(); ++l) {
        by_city[s.order[l] - 1] = s.stays[Index(l)];
    }
    return by_city;
}

TspStrategy strategy_from_city_stays(const std::vector<Index>& order, const DVector& city_stays) {
    TspStrategy s;
    s.order = order;
    s.stays.resize(Index(order.size()));
    for (std::size_t l = 0; l < order.size(); ++l) {
        s.stays[Index(l)] = city_stays[order[l] - 1];
    }
    return s;
}

DVector completion_times(const TspInstance& inst, const TspStrategy& s) {
    check_strategy(inst, s);
    DVector c(inst.m);
    double t = 0;
    Index prev = 0;
    for (Index l = 0; l < inst.m; ++l) {
        t += inst.travel_time(prev, s.order[std::size_t(l)]) + s.stays[l];
        c[l] = t;
        prev = s.order[std::size_t(l)];
    }
    return c;
}

DVector delays(const TspInstance& inst, const TspStrategy& s) {
    DVector c = completion_times(inst, s);
    DVector d(inst.m);
    for (Index l = 0; l < inst.m; ++l) {
        d[l] = std::max(0.0, c[l] - inst.deadlines[s.order[std::size_t(l)] - 1]);
    }
    return d;
}

double profit(const TspInstance& inst, const TspStrategy& s) {
    DVector c = completion_times(inst, s);
    double total_delay = 0;
    for (Index l = 0; l < inst.m; ++l) {
        total_delay += std::max(0.0, c[l] - inst.deadlines[s.order[std::size_t(l)] - 1]);
    }
    return double(inst.m) * inst.income_per_city + inst.commission_per_day * s.stays.sum() -
           inst.expense_per_day * c[inst.m - 1] - inst.penalty_per_day * total_delay;
}

TspInstance paper_instance() {
    TspInstance inst;
    inst.m = 6;
    inst.income_per_city = 20;
    inst.commission_per_day = 10;
    inst.expense_per_day = 2;
    inst.penalty_per_day = 15;
    inst.deadlines.resize(6);
    inst.deadlines << 26, 10, 23, 25, 12, 10;
    inst.stay_min = 1;
    inst.stay_max = 4;
    inst.travel.resize(7, 6);
    inst.travel << 0.6, 2.2, 1.8, 2.6, 1.8, 1.7,  //
        0.0, 0.8, 1.5, 1.4, 2.8, 1.1,             //
        0.7, 0.0, 1.2, 2.4, 2.3, 1.4,             //
        1.5, 1.2, 0.0, 1.8, 1.3, 1.5,             //
        1.2, 2.4, 1.7, 0.0, 1.7, 2.1,             //
        2.7, 2.4, 1.3, 1.7, 0.0, 0.9,             //
        1.1, 1.3, 1.4, 2.3, 0.9, 0.0;
    return inst;
}

std::vector<TspStrategy> strategies_from_design(const TspInstance& inst, const QSDesign& d) {
    if (d.m() != inst.m) throw std::invalid_argument("design width does not match city count");
    const Index n = d.n();
    const double span = inst.stay_max - inst.stay_min;
    std::vector<TspStrategy> out;
    out.reserve(std::size_t(n));
    for (Index i = 0; i < n; ++i) {
        TspStrategy s;
        s.order.resize(std::size_t(inst.m));
        s.stays.resize(inst.m);
        for (Index j = 0; j < inst.m; ++j) {
            s.order[std::size_t(j)] = Index(d.o.values(i, j));
            double frac = n == 1 ? 0.5 : double(d.x.values(i, j) - 1) / double(n - 1);
            s.stays[j] = inst.stay_min + span * frac;
        }
        out.push_back(std::move(s));
    }
    return out;
}

BaselineResult random_baseline(const TspInstance& inst, std::int64_t n, std::uint64_t seed) {
    const std::int64_t max_orders = factorial_capped(inst.m);
    if (n < 1 || n > max_orders) {
        throw std::invalid_argument("random_baseline: need 1 <= n <= m! distinct orders");
    }
    Rng rng(seed);
    BaselineResult res;
    res.profits.resize(n);
    res.strategies.reserve(std::size_t(n));

    std::map<std::vector<Index>, bool> seen;
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<Index> order;
        do {
            auto perm = rng.permutation(inst.m);
            order.assign(perm.begin(), perm.end());
            for (auto& v : order) ++v;
        } while (seen.count(order) > 0);
        seen[order] = true;
        TspStrategy s;
        s.order = order;
        s.stays.resize(inst.m);
        for (Index j = 0; j < inst.m; ++j) {
            s.stays[j] = rng.uniform(inst.stay_min, inst.stay_max);
        }
        res.profits[i] = profit(inst, s);
        res.strategies.push_back(std::move(s));
    }
    res.best = res.profits.maxCoeff();
    return res;
}

}  // namespace qsdes
