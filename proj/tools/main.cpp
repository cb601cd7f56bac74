#include "qsdes/construct_multi.hpp"
#include "qsdes/construct_single.hpp"
#include "qsdes/design_io.hpp"
#include "qsdes/glp.hpp"
#include "qsdes/metrics.hpp"
#include "qsdes/rng.hpp"
#include "qsdes/tsp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace qsdes;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupportedSize = 3;
constexpr int kExitParse = 4;

std::string fixed3(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

std::string fixed2(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

std::string rave_string(const MetricsReport& r) {
    return r.r_ave_exact ? r.r_ave_exact->to_decimal(6) : fixed3(r.r_ave_value);
}

std::string mcd_string(const MetricsReport& r) {
    if (!r.is_marginally_coupled) return "n/a";
    return *r.is_marginally_coupled ? "yes" : "no";
}

void print_metrics_line(const MetricsReport& r, const std::string& route) {
    std::cout << "d1=" << r.d1 << " d2sq=" << r.d2sq << " dH=" << r.dH
              << " r_ave=" << rave_string(r) << " pair_balanced=" << (r.is_pair_balanced ? 1 : 0)
              << " mcd=" << mcd_string(r);
    if (!route.empty()) std::cout << " route=" << route;
    std::cout << "\n";
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

struct TAFlags {
    std::int64_t outer = 100;
    std::int64_t inner = 100;
    double t1 = 0.05;
    double t_tau = 1e-6;

    TAConfig config() const {
        TAConfig cfg;
        cfg.outer = outer;
        cfg.inner = inner;
        cfg.t1 = t1;
        cfg.t_tau = t_tau;
        return cfg;
    }
};

void add_ta_flags(CLI::App* cmd, TAFlags& ta) {
    cmd->add_option("--ta-outer", ta.outer, "Outer iterations of the level-permutation search");
    cmd->add_option("--ta-inner", ta.inner, "Inner iterations per threshold");
    cmd->add_option("--ta-t1", ta.t1, "Initial acceptance threshold");
    cmd->add_option("--ta-ttau", ta.t_tau, "Final acceptance threshold");
}

QSDesign best_nm_of(std::int64_t m, const TAConfig& ta, std::uint64_t seed, int restarts) {
    QSDesign best = construct_nm(m, ta, seed);
    if (restarts <= 1 || best.meta.route != "totient") return best;
    Rational best_r = r_ave(best.o);
    for (int i = 1; i < restarts; ++i) {
        QSDesign cand = construct_nm(m, ta, derive_seed(seed, 100 + std::uint64_t(i)));
        Rational r = r_ave(cand.o);
        if (r < best_r) {
            best_r = r;
            best = std::move(cand);
        }
    }
    return best;
}

int cmd_generate(std::int64_t n, std::int64_t m, std::uint64_t seed, const TAFlags& ta,
                 std::string out) {
    if (out.empty()) out = "qs_n" + std::to_string(n) + "_m" + std::to_string(m) + ".csv";
    QSDesign d = generate(n, m, ta.config(), seed);
    MetricsReport r = write_design(d, out);
    print_metrics_line(r, d.meta.route);
    std::cout << "wrote " << out << " and " << metadata_path(out).string() << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& path, bool as_json) {
    QSDesign d = read_design(path);
    MetricsReport r = evaluate(d);
    if (as_json) {
        std::cout << metadata_json(d, r, std::filesystem::path(path).filename().string());
    } else {
        std::cout << "n=" << d.n() << " m=" << d.m() << "\n";
        print_metrics_line(r, d.meta.route);
        std::cout << "bounds: d1<=" << r.d1_upper << " d2sq<=" << r.d2sq_upper
                  << " dH<=" << r.dH_upper << "\n";
        std::cout << "pair counts: min=" << r.t.min_off_diagonal()
                  << " max=" << r.t.max_off_diagonal() << "\n";
        if (r.r_ave_exact) {
            std::cout << "r_ave exact: " << r.r_ave_exact->num_str() << "/"
                      << r.r_ave_exact->den_str() << "\n";
        }
    }
    auto mpath = metadata_path(path);
    if (std::filesystem::exists(mpath)) {
        std::ifstream in(mpath);
        nlohmann::json meta = nlohmann::json::parse(in, nullptr, false);
        if (!meta.is_discarded() && meta.contains("metrics")) {
            const auto& mm = meta["metrics"];
            bool consistent = mm.value("d1", std::int64_t(-1)) == r.d1 &&
                              mm.value("d2sq", std::int64_t(-1)) == r.d2sq &&
                              mm.value("dH", std::int64_t(-1)) == r.dH;
            if (!consistent) {
                std::cerr << "warning: sidecar metadata disagrees with re-evaluation\n";
            }
        }
    }
    return kExitOk;
}

int cmd_table_b(std::int64_t max_p, const std::string& out) {
    if (max_p < 5) throw CLI::ValidationError("--max-p must be at least 5");
    std::ostringstream csv;
    csv << "p,b1,b2\n";
    for (std::int64_t p = 5; p <= max_p; ++p) {
        if (!is_odd_prime(p)) continue;
        B1Selection b1 = select_b1(p);
        B2Selection b2 = select_b2(p);
        csv << p << ",\"";
        for (std::size_t i = 0; i < b1.minimizers.size(); ++i) {
            csv << (i ? "," : "") << b1.minimizers[i];
        }
        csv << "\",\"";
        for (std::size_t i = 0; i < b2.candidates.size(); ++i) {
            csv << (i ? "," : "") << b2.candidates[i];
        }
        csv << "\"\n";
    }
    write_text(out, csv.str());
    return kExitOk;
}

int cmd_ratios(const std::vector<std::int64_t>& ms, std::uint64_t seed, int restarts,
               const TAFlags& ta, const std::string& out) {
    std::ostringstream csv;
    csv << "m,d1_ratio,d2_ratio,r_ave,baseline_d1_ratio,baseline_d2_ratio,baseline_r_ave\n";
    bool any_ok = false;
    for (std::int64_t m : ms) {
        try {
            QSDesign d = best_nm_of(m, ta.config(), seed, restarts);
            MetricsReport r = evaluate(d);
            csv << m << "," << fixed3(double(r.d1) / double(r.d1_upper)) << ","
                << fixed3(std::sqrt(double(r.d2sq) / double(r.d2sq_upper))) << ","
                << fixed3(r.r_ave_value);
            if (is_odd_prime(m + 1)) {
                QSDesign base = competitor_baseline(m);
                MetricsReport rb = evaluate(base);
                csv << "," << fixed3(double(rb.d1) / double(rb.d1_upper)) << ","
                    << fixed3(std::sqrt(double(rb.d2sq) / double(rb.d2sq_upper))) << ","
                    << fixed3(rb.r_ave_value);
            } else {
                csv << ",,,";
            }
            csv << "\n";
            any_ok = true;
        } catch (const SizeError& e) {
            std::cerr << "skipping m=" << m << ": " << e.what() << "\n";
        }
    }
    write_text(out, csv.str());
    return any_ok ? kExitOk : kExitUnsupportedSize;
}

int cmd_catalog(std::int64_t max_m, std::int64_t max_n, std::uint64_t seed, const TAFlags& ta,
                const std::string& out) {
    std::ostringstream csv;
    csv << "m,n,route,d1,d2sq,dH,r_ave,mcd\n";
    for (std::int64_t m = 2; m <= max_m; ++m) {
        for (std::int64_t n = m; n <= max_n; n += m) {
            try {
                QSDesign d = generate(n, m, ta.config(), seed);
                MetricsReport r = evaluate(d);
                csv << m << "," << n << "," << d.meta.route << "," << r.d1 << "," << r.d2sq << ","
                    << r.dH << "," << fixed3(r.r_ave_value) << "," << mcd_string(r) << "\n";
            } catch (const SizeError&) {
                break;  // no route at this k; larger k at the same m cannot help
            }
        }
    }
    write_text(out, csv.str());
    return kExitOk;
}

TspStrategy parse_strategy(const std::string& text, Index m) {
    auto semi = text.find(';');
    if (semi == std::string::npos) {
        throw ParseError("strategy must read \"x1,...,xm;o1,...,om\"");
    }
    auto parse_list = [](const std::string& part) {
        std::vector<std::string> items;
        std::string cur;
        for (char c : part) {
            if (c == ',') {
                items.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        items.push_back(cur);
        return items;
    };
    auto xs = parse_list(text.substr(0, semi));
    auto os = parse_list(text.substr(semi + 1));
    if (Index(xs.size()) != m || Index(os.size()) != m) {
        throw ParseError("strategy needs " + std::to_string(m) + " stays and " +
                         std::to_string(m) + " order entries");
    }
    TspStrategy s;
    s.stays.resize(m);
    s.order.resize(std::size_t(m));
    for (Index i = 0; i < m; ++i) {
        try {
            std::size_t pos = 0;
            s.stays[i] = std::stod(xs[std::size_t(i)], &pos);
            if (pos != xs[std::size_t(i)].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("stay " + std::to_string(i + 1) + ": expected a number, got \"" +
                             xs[std::size_t(i)] + "\"");
        }
        try {
            std::size_t pos = 0;
            s.order[std::size_t(i)] = std::stoll(os[std::size_t(i)], &pos);
            if (pos != os[std::size_t(i)].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("order " + std::to_string(i + 1) + ": expected an integer, got \"" +
                             os[std::size_t(i)] + "\"");
        }
    }
    return s;
}

int cmd_tsp_eval(const std::string& strategy_text) {
    TspInstance inst = paper_instance();
    TspStrategy s = parse_strategy(strategy_text, inst.m);
    DVector c = completion_times(inst, s);
    DVector t = delays(inst, s);
    std::cout << "profit=" << fixed2(profit(inst, s)) << "\n";
    std::cout << "final_completion=" << fixed2(c[inst.m - 1]) << " total_delay=" << fixed2(t.sum())
              << "\n";
    return kExitOk;
}

int cmd_tsp_random(std::int64_t n, std::uint64_t seed, const std::string& out) {
    TspInstance inst = paper_instance();
    BaselineResult res = random_baseline(inst, n, seed);
    std::cout << "max_profit=" << fixed2(res.best) << "\n";
    std::ostringstream csv;
    csv << "profit\n";
    for (Index i = 0; i < res.profits.size(); ++i) csv << fixed2(res.profits[i]) << "\n";
    if (!out.empty()) {
        write_text(out, csv.str());
        std::cout << "wrote " << out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantitative-sequence design construction and evaluation"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Construct a design and write it to a CSV file");
    std::int64_t gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    TAFlags gen_ta;
    gen->add_option("--n", gen_n, "Run count (a multiple of m)")->required();
    gen->add_option("--m", gen_m, "Factor/component count")->required();
    gen->add_option("--seed", gen_seed, "Root seed (default 0)");
    gen->add_option("--out", gen_out, "Output CSV path (default qs_n<N>_m<M>.csv)");
    add_ta_flags(gen, gen_ta);

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Evaluate a design file");
    std::string ev_path;
    bool ev_json = false;
    ev->add_option("path", ev_path, "Design CSV path")->required();
    ev->add_flag("--json", ev_json, "Emit the machine-readable report");

    // table-b
    auto* tb = app.add_subcommand("table-b", "Shift selections b1/b2 for odd primes up to a bound");
    std::int64_t tb_max = 97;
    std::string tb_out;
    tb->add_option("--max-p", tb_max, "Largest prime to include")->required();
    tb->add_option("--out", tb_out, "Output CSV path (default stdout)");

    // ratios
    auto* ra = app.add_subcommand("ratios", "Distance ratios and r_ave for n=m designs");
    std::vector<std::int64_t> ra_ms;
    std::uint64_t ra_seed = 0;
    int ra_restarts = 1;
    std::string ra_out;
    TAFlags ra_ta;
    ra->add_option("--m-list", ra_ms, "Component counts (comma separated)")
        ->required()
        ->delimiter(',');
    ra->add_option("--seed", ra_seed, "Root seed (default 0)");
    ra->add_option("--restarts", ra_restarts, "Search restarts per size, best kept");
    ra->add_option("--out", ra_out, "Output CSV path (default stdout)");
    add_ta_flags(ra, ra_ta);

    // catalog
    auto* ca = app.add_subcommand("catalog", "Catalog of supported sizes with metrics");
    std::int64_t ca_max_m = 20, ca_max_n = 50;
    std::uint64_t ca_seed = 0;
    std::string ca_out;
    TAFlags ca_ta;
    ca->add_option("--max-m", ca_max_m, "Largest component count");
    ca->add_option("--max-n", ca_max_n, "Largest run count");
    ca->add_option("--seed", ca_seed, "Root seed (default 0)");
    ca->add_option("--out", ca_out, "Output CSV path (default stdout)");
    add_ta_flags(ca, ca_ta);

    // tsp
    auto* tsp = app.add_subcommand("tsp", "Salesman-scheduling benchmark");
    tsp->require_subcommand(1);
    auto* tsp_eval = tsp->add_subcommand("eval", "Profit of one strategy on the benchmark instance");
    std::string tsp_strategy;
    tsp_eval->add_option("--strategy", tsp_strategy, "\"x1,...,xm;o1,...,om\"")->required();
    auto* tsp_rand = tsp->add_subcommand("random", "Random-strategy baseline");
    std::int64_t tsp_n = 300;
    std::uint64_t tsp_seed = 0;
    std::string tsp_out;
    tsp_rand->add_option("--n", tsp_n, "Number of strategies (distinct orders)");
    tsp_rand->add_option("--seed", tsp_seed, "Seed (default 0)");
    tsp_rand->add_option("--out", tsp_out, "Profit CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(gen_n, gen_m, gen_seed, gen_ta, gen_out);
        if (*ev) return cmd_evaluate(ev_path, ev_json);
        if (*tb) return cmd_table_b(tb_max, tb_out);
        if (*ra) return cmd_ratios(ra_ms, ra_seed, ra_restarts, ra_ta, ra_out);
        if (*ca) return cmd_catalog(ca_max_m, ca_max_n, ca_seed, ca_ta, ca_out);
        if (*tsp) {
            if (*tsp_eval) return cmd_tsp_eval(tsp_strategy);
            if (*tsp_rand) return cmd_tsp_random(tsp_n, tsp_seed, tsp_out);
        }
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupportedSize;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
