#include "qsdes/construct_single.hpp"

#include "qsdes/glp.hpp"
#include "qsdes/metrics.hpp"
#include "qsdes/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsdes {

namespace {

std::int64_t isqrt64(std::int64_t v) {
    auto r = std::int64_t(std::sqrt(double(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n, x = n;
    for (std::int64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            result -= result / d;
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) result -= result / x;
    return result;
}

TotientClass classify_modulus(std::int64_t n) {
    if (is_odd_prime(n)) return TotientClass::A;
    if (n % 2 == 0 && is_odd_prime(n / 2)) return TotientClass::A;
    if (n % 4 == 0 && is_odd_prime(n / 4)) return TotientClass::B;
    if (n >= 8 && (n & (n - 1)) == 0) return TotientClass::C;
    return TotientClass::Other;
}

}  // namespace

B1Selection select_b1(std::int64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("select_b1: p must be an odd prime");
    B1Selection sel;
    sel.p = p;
    bool first = true;
    for (std::int64_t b = 0; b < p; ++b) {
        Rational r = r_ave(SeqDesign(leave_one_out_shifted(p, b)));
        if (first || r < sel.r_value) {
            sel.r_value = r;
            sel.minimizers = {b};
            first = false;
        } else if (r == sel.r_value) {
            sel.minimizers.push_back(b);
        }
    }
    sel.chosen = sel.minimizers.front();
    return sel;
}

B2Selection select_b2(std::int64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("select_b2: p must be an odd prime");
    B2Selection sel;
    sel.p = p;
    const std::int64_t target = (p * p - 1) / 4;
    std::int64_t c = isqrt64((p * p - 1) / 12);
    if (c * c + 2 * (c + 1) * (c + 1) < target) ++c;
    sel.c = c;
    const std::int64_t mid = (p - 1) / 2;
    std::int64_t y1 = ((mid + c) % p + p) % p;
    std::int64_t y2 = ((mid - c) % p + p) % p;
    sel.candidates = {williams_inv(y1, p), williams_inv(y2, p)};
    std::sort(sel.candidates.begin(), sel.candidates.end());
    sel.candidates.erase(std::unique(sel.candidates.begin(), sel.candidates.end()),
                         sel.candidates.end());
    sel.chosen = sel.candidates.front();
    std::int64_t best_d2 = -1;
    for (std::int64_t b : sel.candidates) {
        std::int64_t d2 = detail::l2sq_min(leave_one_out_shifted(p, b));
        if (d2 > best_d2) {
            best_d2 = d2;
            sel.chosen = b;
        }
    }
    return sel;
}

SeqDesign williams_latin_square(std::int64_t m) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("williams_latin_square: m must be even and >= 2");
    }
    std::vector<std::int64_t> h(static_cast<std::size_t>(m));
    for (std::int64_t y = 0; y < m; ++y) h[std::size_t(y)] = williams_inv(y, m);
    IMatrix a(m, m);
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < m; ++j) {
            std::int64_t v = (h[std::size_t(j)] + i) % m;
            a(i, j) = v == 0 ? m : v;
        }
    }
    return SeqDesign(std::move(a));
}

TotientDecomposition find_totient_modulus(std::int64_t m) {
    if (m < 1 || m % 2 != 0) {
        throw SizeError("find_totient_modulus: m must be a positive even integer");
    }
    // phi(N) >= sqrt(N/2), so every solution of phi(N) = 2m satisfies N <= 8m^2.
    // The practical ceiling 8m+8 finds them in all catalogued cases; widen if not.
    auto scan = [&](std::int64_t lo, std::int64_t hi, TotientDecomposition& best, bool& found) {
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (euler_phi(n) != 2 * m) continue;
            TotientClass cls = classify_modulus(n);
            if (!found || int(cls) < int(best.cls)) {
                best.n_modulus = n;
                best.cls = cls;
                found = true;
            }
        }
    };
    TotientDecomposition best;
    best.m = m;
    bool found = false;
    scan(3, 8 * m + 8, best, found);
    if (!found) scan(8 * m + 9, 8 * m * m, best, found);
    if (!found) {
        throw SizeError("no modulus N with phi(N) = " + std::to_string(2 * m) + " exists");
    }
    for (std::int64_t v = 1; 2 * v < best.n_modulus; ++v) {
        if (std::gcd(v, best.n_modulus) == 1) best.h.push_back(v);
    }
    return best;
}

const char* totient_class_name(TotientClass c) {
    switch (c) {
        case TotientClass::A: return "a";
        case TotientClass::B: return "b";
        case TotientClass::C: return "c";
        default: return "other";
    }
}

std::pair<QuantDesign, TotientDecomposition> latin_square_L(std::int64_t m) {
    TotientDecomposition td = find_totient_modulus(m);
    const std::int64_t N = td.n_modulus;
    std::vector<std::int64_t> rank(static_cast<std::size_t>(N), 0);  // h_i -> i relabeling
    for (std::size_t i = 0; i < td.h.size(); ++i) rank[std::size_t(td.h[i])] = std::int64_t(i) + 1;
    IMatrix a(m, m);
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < m; ++j) {
            std::int64_t prod = (td.h[std::size_t(i)] * td.h[std::size_t(j)]) % N;
            a(i, j) = rank[std::size_t(std::min(prod, N - prod))];
        }
    }
    return {QuantDesign(std::move(a)), std::move(td)};
}

QSDesign construct_nm(std::int64_t m, const TAConfig& ta, std::uint64_t seed) {
    if (m < 2) throw SizeError("construct_nm: m must be at least 2");
    const std::int64_t p = m + 1;
    if (is_odd_prime(p)) {
        B1Selection b1 = select_b1(p);
        SeqDesign o(leave_one_out_shifted(p, b1.chosen));
        B2Selection b2 = select_b2(p);
        QuantDesign x(leave_one_out_shifted(p, b2.chosen));
        DesignMeta meta;
        meta.route = "glp";
        meta.seed = seed;
        meta.set("p", p);
        meta.set("b1", b1.chosen);
        meta.set("b2", b2.chosen);
        if (is_odd_prime(2 * m + 1)) {
            // Prefer the equidistant variant lexicographically on (d1, d2^2).
            QuantDesign eq = equidistant_lhd(m);
            auto key = [](const QuantDesign& q) {
                return std::make_pair(detail::l1_min(q.values), detail::l2sq_min(q.values));
            };
            if (key(eq) >= key(x)) {
                x = std::move(eq);
                meta.route = "glp-equidistant";
            }
        }
        return QSDesign(std::move(x), std::move(o), std::move(meta));
    }
    if (m % 2 == 0) {
        auto [x, td] = latin_square_L(m);
        TAConfig cfg = ta;
        cfg.seed = derive_seed(seed, 3);
        auto [o, trace] = ta_minimize_rave(williams_latin_square(m), cfg);
        DesignMeta meta;
        meta.route = "totient";
        meta.seed = seed;
        meta.set("N", td.n_modulus);
        return QSDesign(std::move(x), std::move(o), std::move(meta));
    }
    throw SizeError("construct_nm: unsupported m = " + std::to_string(m) +
                    " (m+1 = " + std::to_string(p) + " is not an odd prime and m is odd)");
}

QSDesign competitor_baseline(std::int64_t m) {
    const std::int64_t p = m + 1;
    if (!is_odd_prime(p)) {
        throw SizeError("competitor_baseline: m + 1 must be an odd prime");
    }
    IMatrix top = glp(p).values.topRows(m);
    DesignMeta meta;
    meta.route = "baseline";
    meta.set("p", p);
    return QSDesign(QuantDesign(top), SeqDesign(top), std::move(meta));
}

}  // namespace qsdes
