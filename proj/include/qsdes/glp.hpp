#pragma once

#include "qsdes/types.hpp"

#include <vector>

namespace qsdes {

/// Trial-division primality; inputs stay well below 10^4 here.
bool is_odd_prime(std::int64_t p);

/// Good lattice point set: p x (p-1) matrix over Z_p, row i = i*(1, ..., p-1) mod p.
/// The last row is all zeros and every column is a permutation of Z_p.
struct GlpSet {
    std::int64_t p = 0;
    IMatrix values;
};

GlpSet glp(std::int64_t p);

/// Level map x -> 2x (x < mod/2), 2(mod-x)-1 otherwise; a bijection on Z_mod for
/// any modulus >= 2, odd or even.
std::int64_t williams(std::int64_t x, std::int64_t modulus);
std::int64_t williams_inv(std::int64_t y, std::int64_t modulus);
std::vector<std::int64_t> williams_map(std::int64_t modulus);

/// Variant mapping onto even residues: x -> 2x (x < q/2), 2(q-x) otherwise.
std::int64_t modified_williams(std::int64_t x, std::int64_t q);

/// (D_0 + b) mod p, optionally pushed through the Williams map elementwise.
/// The last row is constant b (or W(b) when transformed).
struct ShiftedDesign {
    std::int64_t p = 0;
    std::int64_t b = 0;
    bool transformed = false;
    IMatrix values;

    std::int64_t constant_level() const;
};

ShiftedDesign shifted(const GlpSet& d0, std::int64_t b, bool transform);

/// m x m Latin square left after dropping the constant row of a shifted design and
/// compacting the remaining levels to 1..m via z -> z+1 (z < deleted), z (z > deleted).
struct LeaveOneOutDesign {
    std::int64_t m = 0;
    std::int64_t deleted_level = 0;
    std::vector<std::int64_t> relabel;  // old level (0..p-1) -> new level, -1 for deleted
    IMatrix values;
};

LeaveOneOutDesign leave_one_out(const ShiftedDesign& e);

/// Shorthand for the workhorse of the n=m construction: the leave-one-out design of
/// W(D_0 + b), written E~_b elsewhere in this codebase.
IMatrix leave_one_out_shifted(std::int64_t p, std::int64_t b, bool transform = true);

/// L1-equidistant m x m LHD with common row distance m(m+1)/3, built from the
/// leading m x m block of the (2m+1)-point lattice set, modified-Williams mapped
/// and halved. Requires m even with both m+1 and 2m+1 odd primes.
QuantDesign equidistant_lhd(std::int64_t m);

}  // namespace qsdes
