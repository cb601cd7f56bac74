#include "qsdes/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qsdes {

namespace detail {

std::int64_t l1_min(const IMatrix& a) {
    const Index n = a.rows(), m = a.cols();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            std::int64_t d = 0;
            for (Index k = 0; k < m; ++k) d += std::abs(a(i, k) - a(j, k));
            best = std::min(best, d);
        }
    }
    return best;
}

std::int64_t l2sq_min(const IMatrix& a) {
    const Index n = a.rows(), m = a.cols();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            std::int64_t d = 0;
            for (Index k = 0; k < m; ++k) {
                std::int64_t e = a(i, k) - a(j, k);
                d += e * e;
            }
            best = std::min(best, d);
        }
    }
    return best;
}

std::int64_t hamming_min(const IMatrix& a) {
    const Index n = a.rows(), m = a.cols();
    std::int64_t best = m;
    for (Index i = 0; i < n && best > 0; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            std::int64_t d = 0;
            for (Index k = 0; k < m; ++k) d += (a(i, k) != a(j, k)) ? 1 : 0;
            best = std::min(best, d);
            if (best == 0) break;
        }
    }
    return best;
}

}  // namespace detail

namespace {

void require_two_runs(Index n) {
    if (n < 2) throw std::invalid_argument("distance undefined for a single-run design");
}

struct ColumnMoments {
    std::int64_t sum;
    std::int64_t sum_sq;
    bool uniform;  // all columns share (sum, sum_sq)
};

ColumnMoments column_moments(const IMatrix& a) {
    ColumnMoments cm{0, 0, true};
    for (Index j = 0; j < a.cols(); ++j) {
        std::int64_t s = 0, q = 0;
        for (Index i = 0; i < a.rows(); ++i) {
            s += a(i, j);
            q += a(i, j) * a(i, j);
        }
        if (j == 0) {
            cm.sum = s;
            cm.sum_sq = q;
        } else if (s != cm.sum || q != cm.sum_sq) {
            cm.uniform = false;
        }
    }
    return cm;
}

}  // namespace

std::int64_t l1_distance(const QuantDesign& x) {
    require_two_runs(x.n());
    return detail::l1_min(x.values);
}

std::int64_t l2_distance_sq(const QuantDesign& x) {
    require_two_runs(x.n());
    return detail::l2sq_min(x.values);
}

std::int64_t hamming_distance(const SeqDesign& o) {
    require_two_runs(o.n());
    return detail::hamming_min(o.values);
}

Rational r_ave(const SeqDesign& o) {
    const Index n = o.n(), m = o.m();
    if (n < 2 || m < 2) throw std::invalid_argument("r_ave needs n >= 2 and m >= 2");
    const IMatrix& a = o.values;
    for (Index j = 0; j < m; ++j) {
        if ((a.col(j).array() == a(0, j)).all()) {
            throw std::domain_error("r_ave: zero variance column");
        }
    }
    ColumnMoments cm = column_moments(a);
    if (!cm.uniform) {
        throw std::invalid_argument("r_ave: columns have unequal moments, no exact rational value");
    }
    // Pearson with shared mean/variance: r_uv = (n*sum(u.v) - S^2) / (n*Q - S^2).
    const Int128 s2 = Int128(cm.sum) * cm.sum;
    const Int128 den = Int128(n) * cm.sum_sq - s2;
    if (den == 0) throw std::domain_error("r_ave: zero variance column");
    Int128 acc = 0;
    for (Index u = 0; u < m; ++u) {
        for (Index v = u + 1; v < m; ++v) {
            std::int64_t dot = 0;
            for (Index i = 0; i < n; ++i) dot += a(i, u) * a(i, v);
            Int128 num = Int128(n) * dot - s2;
            acc += num < 0 ? -num : num;
        }
    }
    return Rational(2 * acc, den * m * (m - 1));
}

double r_ave_numeric(const SeqDesign& o) {
    const Index n = o.n(), m = o.m();
    if (n < 2 || m < 2) throw std::invalid_argument("r_ave needs n >= 2 and m >= 2");
    const IMatrix& a = o.values;
    std::vector<double> mean(static_cast<std::size_t>(m)), var(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
        double s = 0;
        for (Index i = 0; i < n; ++i) s += double(a(i, j));
        mean[std::size_t(j)] = s / double(n);
        double v = 0;
        for (Index i = 0; i < n; ++i) {
            double e = double(a(i, j)) - mean[std::size_t(j)];
            v += e * e;
        }
        if (v == 0.0) throw std::domain_error("r_ave: zero variance column");
        var[std::size_t(j)] = v;
    }
    double acc = 0;
    for (Index u = 0; u < m; ++u) {
        for (Index v = u + 1; v < m; ++v) {
            double cov = 0;
            for (Index i = 0; i < n; ++i) {
                cov += (double(a(i, u)) - mean[std::size_t(u)]) *
                       (double(a(i, v)) - mean[std::size_t(v)]);
            }
            acc += std::abs(cov) / std::sqrt(var[std::size_t(u)] * var[std::size_t(v)]);
        }
    }
    return 2.0 * acc / (double(m) * double(m - 1));
}

PairCounts pair_counts(const SeqDesign& o) {
    const Index n = o.n(), m = o.m();
    PairCounts pc;
    pc.m = m;
    pc.t = IMatrix::Zero(m, m);
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k + 1 < m; ++k) {
            pc.t(o.values(i, k) - 1, o.values(i, k + 1) - 1) += 1;
        }
    }
    return pc;
}

DistanceBounds bounds(std::int64_t n, std::int64_t m) {
    if (n < 2 || m < 1) throw std::invalid_argument("bounds need n >= 2, m >= 1");
    DistanceBounds b{};
    b.d1_upper = (n + 1) * m / 3;
    b.d2sq_upper = n * (n + 1) * m / 6;
    b.dH_upper = (n <= m) ? m : m - 1;
    return b;
}

std::pair<std::int64_t, std::int64_t> n2m_bounds(std::int64_t m) {
    if (m < 2) throw std::invalid_argument("n2m_bounds need m >= 2");
    return {(m + 1) * m / 3, m * m * (m + 1) / 6};
}

McdResult is_marginally_coupled(const QSDesign& d) {
    const Index n = d.n(), m = d.m();
    if (n % m != 0) throw SizeError("marginally coupled structure requires n to be a multiple of m");
    const Index k = n / m;
    McdResult res;
    // X columns are permutations of 1..n by construction; the collapsed levels
    // ceil(x/m) partition each column into k groups of m.
    for (Index j = 0; j < m; ++j) {
        for (std::int64_t level = 1; level <= m; ++level) {
            std::vector<Index> rows;
            for (Index i = 0; i < n; ++i) {
                if (d.o.values(i, j) == level) rows.push_back(i);
            }
            if (Index(rows.size()) != k) {
                res.bad_column = j;
                res.bad_level = level;
                return res;
            }
            for (Index xcol = 0; xcol < m; ++xcol) {
                std::vector<bool> seen(std::size_t(k), false);
                for (Index r : rows) {
                    std::int64_t collapsed = (d.x.values(r, xcol) + m - 1) / m;  // ceil(x/m)
                    if (seen[std::size_t(collapsed - 1)]) {
                        res.bad_column = j;
                        res.bad_level = level;
                        return res;
                    }
                    seen[std::size_t(collapsed - 1)] = true;
                }
            }
        }
    }
    res.coupled = true;
    return res;
}

bool mcd_by_block_decomposition(const QSDesign& d, Index sort_column) {
    const Index n = d.n(), m = d.m();
    if (n % m != 0) throw SizeError("marginally coupled structure requires n to be a multiple of m");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return d.x.values(a, sort_column) < d.x.values(b, sort_column);
    });
    const Index k = n / m;
    for (Index b = 0; b < k; ++b) {
        IMatrix block(m, m);
        for (Index i = 0; i < m; ++i) block.row(i) = d.o.values.row(order[std::size_t(b * m + i)]);
        if (!is_latin_square(block)) return false;
    }
    return true;
}

MetricsReport evaluate(const QSDesign& d) {
    MetricsReport r;
    r.d1 = l1_distance(d.x);
    r.d2sq = l2_distance_sq(d.x);
    r.dH = hamming_distance(d.o);
    r.t = pair_counts(d.o);
    try {
        r.r_ave_exact = r_ave(d.o);
        r.r_ave_value = r.r_ave_exact->to_double();
    } catch (const std::invalid_argument&) {
        r.r_ave_value = r_ave_numeric(d.o);
    }
    DistanceBounds b = bounds(d.n(), d.m());
    r.d1_upper = b.d1_upper;
    r.d2sq_upper = b.d2sq_upper;
    r.dH_upper = b.dH_upper;
    r.is_lhd = true;  // enforced by QuantDesign
    for (Index j = 0; j < d.m() && r.is_lhd; ++j) {
        r.is_lhd = is_permutation_1n(d.x.values.col(j), d.n());
    }
    r.is_pair_balanced = r.t.balanced();
    if (d.n() % d.m() == 0) {
        r.is_marginally_coupled = is_marginally_coupled(d).coupled;
    }
    return r;
}

}  // namespace qsdes
