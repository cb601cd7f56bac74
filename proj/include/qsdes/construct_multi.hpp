#pragma once

#include "qsdes/optimizer.hpp"
#include "qsdes/types.hpp"

#include <cstdint>
#include <vector>

namespace qsdes {

/// Deterministic core of the stacked constructions. Blocks of O are given Latin
/// squares; block i of the quantitative part is f0 with columns permuted by
/// col_perms[i] (new column j = f0 column col_perms[i][j]); column j of X is then
/// offset per block by m * ells[j][block]. Every randomized route below reduces to
/// this with seeded draws, and tests can feed exact permutations through it.
QSDesign assemble_km(const IMatrix& f0, const std::vector<IMatrix>& o_blocks,
                     const std::vector<std::vector<Index>>& col_perms,
                     const std::vector<std::vector<std::int64_t>>& ells, DesignMeta meta);

/// n = km for m = p-1: stack the k leave-one-out designs with the smallest r_ave
/// (row-permuted at random), and assemble X from column-permuted copies of the
/// best n = m quantitative square. Marginally coupled with every t_ij = k.
QSDesign three_step(std::int64_t p, std::int64_t k, std::uint64_t seed);

/// n = 2m refinement: O stacks the b1* design with its p - b1* mirror, without row
/// permutation, giving minimum Hamming distance exactly m-2.
QSDesign mirrored_pair_construct(std::int64_t p, std::uint64_t seed);

/// n = km for even m with a totient modulus: O starts as k level-permuted copies of
/// the Williams Latin square and is improved by the combined-criterion search; X is
/// assembled from column-permuted copies of the relabeled product square L.
QSDesign general_km(std::int64_t m, std::int64_t k, const TAConfig& ta, std::uint64_t seed);

/// Dispatcher over every route for run size n = k*m.
QSDesign generate(std::int64_t n, std::int64_t m, const TAConfig& ta, std::uint64_t seed);

}  // namespace qsdes
