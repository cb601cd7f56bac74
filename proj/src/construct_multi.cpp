#include "qsdes/construct_multi.hpp"

#include "qsdes/construct_single.hpp"
#include "qsdes/glp.hpp"
#include "qsdes/metrics.hpp"
#include "qsdes/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsdes {

namespace {

// Sub-seed tags, drawn in a fixed order so (n, m, seed, config) pins the design.
constexpr std::uint64_t kTagRowPerms = 0;
constexpr std::uint64_t kTagColPerms = 1;
constexpr std::uint64_t kTagEll = 2;
constexpr std::uint64_t kTagOptimizer = 3;

// F_0 for the quantitative blocks: the equidistant square when 2m+1 is prime,
// otherwise the b2*-shifted leave-one-out square.
IMatrix quant_base(std::int64_t p, std::int64_t* b2_used) {
    const std::int64_t m = p - 1;
    if (is_odd_prime(2 * m + 1)) {
        if (b2_used) *b2_used = -1;
        return equidistant_lhd(m).values;
    }
    B2Selection b2 = select_b2(p);
    if (b2_used) *b2_used = b2.chosen;
    return leave_one_out_shifted(p, b2.chosen);
}

std::vector<std::vector<Index>> random_col_perms(std::int64_t k, std::int64_t m, Rng& rng) {
    std::vector<std::vector<Index>> perms;
    perms.reserve(std::size_t(k));
    for (std::int64_t i = 0; i < k; ++i) perms.push_back(rng.permutation(m));
    return perms;
}

std::vector<std::vector<std::int64_t>> random_ells(std::int64_t k, std::int64_t m, Rng& rng) {
    std::vector<std::vector<std::int64_t>> ells;
    ells.reserve(std::size_t(m));
    for (std::int64_t j = 0; j < m; ++j) ells.push_back(rng.permutation(k));
    return ells;
}

}  // namespace

QSDesign assemble_km(const IMatrix& f0, const std::vector<IMatrix>& o_blocks,
                     const std::vector<std::vector<Index>>& col_perms,
                     const std::vector<std::vector<std::int64_t>>& ells, DesignMeta meta) {
    const Index m = f0.rows();
    const auto k = std::int64_t(o_blocks.size());
    if (f0.cols() != m || k < 1) throw std::invalid_argument("assemble_km: bad shapes");
    if (std::int64_t(col_perms.size()) != k || std::int64_t(ells.size()) != m) {
        throw std::invalid_argument("assemble_km: permutation counts do not match k, m");
    }
    IMatrix x(k * m, m), o(k * m, m);
    for (std::int64_t b = 0; b < k; ++b) {
        if (o_blocks[std::size_t(b)].rows() != m || o_blocks[std::size_t(b)].cols() != m) {
            throw std::invalid_argument("assemble_km: O block has wrong shape");
        }
        o.middleRows(b * m, m) = o_blocks[std::size_t(b)];
        for (Index j = 0; j < m; ++j) {
            const Index src = col_perms[std::size_t(b)][std::size_t(j)];
            const std::int64_t offset = m * ells[std::size_t(j)][std::size_t(b)];
            for (Index i = 0; i < m; ++i) {
                x(b * m + i, j) = offset + f0(i, src);
            }
        }
    }
    return QSDesign(QuantDesign(std::move(x)), SeqDesign(std::move(o)), std::move(meta));
}

QSDesign three_step(std::int64_t p, std::int64_t k, std::uint64_t seed) {
    if (!is_odd_prime(p)) throw std::invalid_argument("three_step: p must be an odd prime");
    const std::int64_t m = p - 1;
    if (k < 2 || k > m + 1) {
        throw SizeError("three_step: k must be between 2 and m+1 (only " + std::to_string(p) +
                        " shifted squares exist)");
    }
    // Rank all shifts by (r_ave, b) and keep the k best.
    std::vector<std::pair<Rational, std::int64_t>> ranked;
    ranked.reserve(std::size_t(p));
    for (std::int64_t b = 0; b < p; ++b) {
        ranked.emplace_back(r_ave(SeqDesign(leave_one_out_shifted(p, b))), b);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });

    Rng row_rng(derive_seed(seed, kTagRowPerms));
    std::vector<IMatrix> blocks;
    blocks.reserve(std::size_t(k));
    for (std::int64_t i = 0; i < k; ++i) {
        IMatrix base = leave_one_out_shifted(p, ranked[std::size_t(i)].second);
        auto perm = row_rng.permutation(m);
        IMatrix shuffled(m, m);
        for (Index r = 0; r < m; ++r) shuffled.row(r) = base.row(perm[std::size_t(r)]);
        blocks.push_back(std::move(shuffled));
    }

    std::int64_t b2_used = 0;
    IMatrix f0 = quant_base(p, &b2_used);
    Rng col_rng(derive_seed(seed, kTagColPerms));
    Rng ell_rng(derive_seed(seed, kTagEll));
    DesignMeta meta;
    meta.route = "glp-stack";
    meta.seed = seed;
    meta.set("p", p);
    meta.set("k", k);
    if (b2_used >= 0) meta.set("b2", b2_used);
    return assemble_km(f0, blocks, random_col_perms(k, m, col_rng), random_ells(k, m, ell_rng),
                       std::move(meta));
}

QSDesign mirrored_pair_construct(std::int64_t p, std::uint64_t seed) {
    if (!is_odd_prime(p)) throw std::invalid_argument("mirrored_pair_construct: p must be an odd prime");
    const std::int64_t m = p - 1;
    B1Selection b1 = select_b1(p);
    if (b1.chosen == 0) {
        throw SizeError("mirrored_pair_construct: degenerate b1 = 0, mirrored block would repeat");
    }
    std::vector<IMatrix> blocks{leave_one_out_shifted(p, b1.chosen),
                                leave_one_out_shifted(p, p - b1.chosen)};
    std::int64_t b2_used = 0;
    IMatrix f0 = quant_base(p, &b2_used);
    Rng col_rng(derive_seed(seed, kTagColPerms));
    Rng ell_rng(derive_seed(seed, kTagEll));
    DesignMeta meta;
    meta.route = "glp-mirror";
    meta.seed = seed;
    meta.set("p", p);
    meta.set("k", 2);
    meta.set("b1", b1.chosen);
    if (b2_used >= 0) meta.set("b2", b2_used);
    return assemble_km(f0, blocks, random_col_perms(2, m, col_rng), random_ells(2, m, ell_rng),
                       std::move(meta));
}

QSDesign general_km(std::int64_t m, std::int64_t k, const TAConfig& ta, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("general_km: k must be at least 2");
    auto [x0, td] = latin_square_L(m);  // throws SizeError when no modulus exists

    Rng level_rng(derive_seed(seed, kTagRowPerms));
    SeqDesign m0 = williams_latin_square(m);
    IMatrix init(k * m, m);
    for (std::int64_t b = 0; b < k; ++b) {
        auto relabel = level_rng.permutation(m);  // level v -> relabel[v-1] + 1
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j < m; ++j) {
                init(b * m + i, j) = relabel[std::size_t(m0.values(i, j) - 1)] + 1;
            }
        }
    }
    TAConfig cfg = ta;
    cfg.seed = derive_seed(seed, kTagOptimizer);
    auto [optimized, trace] = ta_minimize_psi(BlockedSeqDesign(k, SeqDesign(std::move(init))), cfg);

    std::vector<IMatrix> blocks;
    blocks.reserve(std::size_t(k));
    for (std::int64_t b = 0; b < k; ++b) blocks.push_back(optimized.block(b));

    Rng col_rng(derive_seed(seed, kTagColPerms));
    Rng ell_rng(derive_seed(seed, kTagEll));
    DesignMeta meta;
    meta.route = "totient-stack";
    meta.seed = seed;
    meta.set("N", td.n_modulus);
    meta.set("k", k);
    return assemble_km(x0.values, blocks, random_col_perms(k, m, col_rng),
                       random_ells(k, m, ell_rng), std::move(meta));
}

QSDesign generate(std::int64_t n, std::int64_t m, const TAConfig& ta, std::uint64_t seed) {
    if (m < 2) throw SizeError("generate: m must be at least 2");
    if (n % m != 0) {
        throw SizeError("generate: n must be a multiple of m (got n = " + std::to_string(n) +
                        ", m = " + std::to_string(m) + ")");
    }
    const std::int64_t k = n / m;
    if (k < 1) throw SizeError("generate: n must be positive");
    if (k == 1) return construct_nm(m, ta, seed);
    const bool prime_route = is_odd_prime(m + 1);
    // m = 2 is the one prime-route size whose mirrored pair degenerates (b1 = 0);
    // the totient route below covers it instead
    if (prime_route && k == 2 && m > 2) return mirrored_pair_construct(m + 1, seed);
    if (prime_route && 3 <= k && k <= m + 1) return three_step(m + 1, k, seed);
    if (m % 2 == 0) return general_km(m, k, ta, seed);  // throws if no totient modulus
    throw SizeError("generate: no route for n = " + std::to_string(n) + ", m = " +
                    std::to_string(m) + "; supported sizes are n = k*m with m+1 an odd prime " +
                    "(k <= m+1) or m even with a totient modulus (any k)");
}

}  // namespace qsdes
