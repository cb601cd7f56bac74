#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsdes {

using Index = Eigen::Index;
using IMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using DMatrix = Eigen::MatrixXd;
using DVector = Eigen::VectorXd;

/// True iff v contains each of {1, ..., n} exactly once.
inline bool is_permutation_1n(const IVector& v, std::int64_t n) {
    if (v.size() != n) return false;
    std::vector<bool> seen(std::size_t(n), false);
    for (Index i = 0; i < n; ++i) {
        std::int64_t x = v[i];
        if (x < 1 || x > n || seen[std::size_t(x - 1)]) return false;
        seen[std::size_t(x - 1)] = true;
    }
    return true;
}

inline bool is_latin_square(const IMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) return false;
    const Index m = a.rows();
    for (Index i = 0; i < m; ++i) {
        if (!is_permutation_1n(a.row(i).transpose(), m)) return false;
        if (!is_permutation_1n(a.col(i), m)) return false;
    }
    return true;
}

/// Latin hypercube part X: every column a permutation of {1, ..., n}.
struct QuantDesign {
    IMatrix values;

    QuantDesign() = default;
    explicit QuantDesign(IMatrix v) : values(std::move(v)) {
        for (Index j = 0; j < values.cols(); ++j) {
            if (!is_permutation_1n(values.col(j), values.rows())) {
                throw std::invalid_argument("QuantDesign: column " + std::to_string(j + 1) +
                                            " is not a permutation of 1.." +
                                            std::to_string(values.rows()));
            }
        }
    }

    Index n() const { return values.rows(); }
    Index m() const { return values.cols(); }
};

/// Component-order part O: every row a permutation of {1, ..., m}.
struct SeqDesign {
    IMatrix values;

    SeqDesign() = default;
    explicit SeqDesign(IMatrix v) : values(std::move(v)) {
        for (Index i = 0; i < values.rows(); ++i) {
            if (!is_permutation_1n(values.row(i).transpose(), values.cols())) {
                throw std::invalid_argument("SeqDesign: row " + std::to_string(i + 1) +
                                            " is not a permutation of 1.." +
                                            std::to_string(values.cols()));
            }
        }
    }

    Index n() const { return values.rows(); }
    Index m() const { return values.cols(); }
};

/// k Latin squares stacked into a km x m sequence design.
struct BlockedSeqDesign {
    Index k = 0;
    SeqDesign stacked;

    BlockedSeqDesign() = default;
    BlockedSeqDesign(Index k_, SeqDesign s) : k(k_), stacked(std::move(s)) {
        const Index m = stacked.m();
        if (k < 1 || stacked.n() != k * m) {
            throw std::invalid_argument("BlockedSeqDesign: run count must be k*m");
        }
        for (Index b = 0; b < k; ++b) {
            if (!is_latin_square(block(b))) {
                throw std::invalid_argument("BlockedSeqDesign: block " + std::to_string(b + 1) +
                                            " is not a Latin square");
            }
        }
    }

    Index m() const { return stacked.m(); }
    IMatrix block(Index b) const { return stacked.values.middleRows(b * m(), m()); }
};

struct DesignMeta {
    std::string route;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::int64_t>> params;

    void set(const std::string& key, std::int64_t value) { params.emplace_back(key, value); }
    const std::int64_t* find(const std::string& key) const {
        for (const auto& [k, v] : params) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

/// Paired design D = (X, O) with shared run count.
struct QSDesign {
    QuantDesign x;
    SeqDesign o;
    DesignMeta meta;

    QSDesign() = default;
    QSDesign(QuantDesign x_, SeqDesign o_, DesignMeta meta_ = {})
        : x(std::move(x_)), o(std::move(o_)), meta(std::move(meta_)) {
        if (x.n() != o.n() || x.m() != o.m()) {
            throw std::invalid_argument("QSDesign: X and O dimensions differ");
        }
    }

    Index n() const { return x.n(); }
    Index m() const { return x.m(); }
};

/// Adjacent-pair counts t[i][j] = occurrences of sub-sequence "i, j" across all rows.
struct PairCounts {
    Index m = 0;
    IMatrix t;  // m x m, diagonal unused (zero)

    std::int64_t min_off_diagonal() const {
        if (m < 2) return 0;
        std::int64_t best = t(0, 1);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j)
                if (i != j) best = std::min(best, t(i, j));
        return best;
    }
    std::int64_t max_off_diagonal() const {
        if (m < 2) return 0;
        std::int64_t best = t(0, 1);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j)
                if (i != j) best = std::max(best, t(i, j));
        return best;
    }
    bool balanced() const { return min_off_diagonal() == max_off_diagonal(); }
};

/// Raised when a requested design size has no construction route.
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised on malformed design files; carries a human-readable location.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsdes
