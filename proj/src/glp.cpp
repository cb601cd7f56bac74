#include "qsdes/glp.hpp"

#include <stdexcept>
#include <string>

namespace qsdes {

bool is_odd_prime(std::int64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

GlpSet glp(std::int64_t p) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("glp: " + std::to_string(p) + " is not an odd prime");
    }
    GlpSet g;
    g.p = p;
    g.values.resize(p, p - 1);
    for (std::int64_t i = 1; i <= p; ++i) {
        for (std::int64_t k = 1; k <= p - 1; ++k) {
            g.values(i - 1, k - 1) = (i * k) % p;
        }
    }
    return g;
}

std::int64_t williams(std::int64_t x, std::int64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("williams: modulus must be >= 2");
    if (x < 0 || x >= modulus) throw std::invalid_argument("williams: residue out of range");
    return 2 * x < modulus ? 2 * x : 2 * (modulus - x) - 1;
}

std::int64_t williams_inv(std::int64_t y, std::int64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("williams_inv: modulus must be >= 2");
    if (y < 0 || y >= modulus) throw std::invalid_argument("williams_inv: residue out of range");
    return y % 2 == 0 ? y / 2 : modulus - (y + 1) / 2;
}

std::vector<std::int64_t> williams_map(std::int64_t modulus) {
    std::vector<std::int64_t> w(static_cast<std::size_t>(modulus));
    for (std::int64_t x = 0; x < modulus; ++x) w[std::size_t(x)] = williams(x, modulus);
    return w;
}

std::int64_t modified_williams(std::int64_t x, std::int64_t q) {
    if (x < 0 || x >= q) throw std::invalid_argument("modified_williams: residue out of range");
    return 2 * x < q ? 2 * x : 2 * (q - x);
}

std::int64_t ShiftedDesign::constant_level() const {
    return transformed ? williams(b, p) : b;
}

ShiftedDesign shifted(const GlpSet& d0, std::int64_t b, bool transform) {
    if (b < 0 || b >= d0.p) throw std::invalid_argument("shifted: b out of range");
    ShiftedDesign s;
    s.p = d0.p;
    s.b = b;
    s.transformed = transform;
    s.values = d0.values;
    for (Index i = 0; i < s.values.rows(); ++i) {
        for (Index j = 0; j < s.values.cols(); ++j) {
            std::int64_t v = (s.values(i, j) + b) % d0.p;
            s.values(i, j) = transform ? williams(v, d0.p) : v;
        }
    }
    return s;
}

LeaveOneOutDesign leave_one_out(const ShiftedDesign& e) {
    const std::int64_t p = e.p;
    const Index m = p - 1;
    const std::int64_t v = e.constant_level();  // from metadata ...
    for (Index j = 0; j < m; ++j) {             // ... validated against the actual last row
        if (e.values(m, j) != v) {
            throw std::invalid_argument("leave_one_out: last row is not the expected constant");
        }
    }
    LeaveOneOutDesign out;
    out.m = m;
    out.deleted_level = v;
    out.relabel.assign(std::size_t(p), -1);
    for (std::int64_t z = 0; z < p; ++z) {
        if (z < v) out.relabel[std::size_t(z)] = z + 1;
        if (z > v) out.relabel[std::size_t(z)] = z;
    }
    out.values.resize(m, m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) {
            out.values(i, j) = out.relabel[std::size_t(e.values(i, j))];
        }
    }
    return out;
}

IMatrix leave_one_out_shifted(std::int64_t p, std::int64_t b, bool transform) {
    return leave_one_out(shifted(glp(p), b, transform)).values;
}

QuantDesign equidistant_lhd(std::int64_t m) {
    const std::int64_t q = 2 * m + 1;
    if (m % 2 != 0 || !is_odd_prime(m + 1) || !is_odd_prime(q)) {
        throw SizeError("equidistant construction needs m even with m+1 and 2m+1 both odd primes");
    }
    IMatrix a(m, m);
    for (std::int64_t i = 1; i <= m; ++i) {
        for (std::int64_t k = 1; k <= m; ++k) {
            a(i - 1, k - 1) = modified_williams((i * k) % q, q) / 2;  // outputs are even
        }
    }
    return QuantDesign(std::move(a));
}

}  // namespace qsdes
