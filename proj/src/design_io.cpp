#include "qsdes/design_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <vector>

namespace qsdes {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::int64_t parse_int(const std::string& s, Index row, Index col) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": expected an integer, got \"" + s + "\"");
    }
    return v;
}

}  // namespace

std::string design_csv(const QSDesign& d) {
    std::ostringstream out;
    const Index m = d.m();
    for (Index j = 1; j <= m; ++j) out << "x" << j << ",";
    for (Index j = 1; j <= m; ++j) out << "o" << j << (j == m ? "" : ",");
    out << "\n";
    for (Index i = 0; i < d.n(); ++i) {
        for (Index j = 0; j < m; ++j) out << d.x.values(i, j) << ",";
        for (Index j = 0; j < m; ++j) out << d.o.values(i, j) << (j == m - 1 ? "" : ",");
        out << "\n";
    }
    return out.str();
}

std::string metadata_json(const QSDesign& d, const MetricsReport& r,
                          const std::string& design_filename) {
    json meta;
    meta["design"] = design_filename;
    meta["n"] = d.n();
    meta["m"] = d.m();
    meta["route"] = d.meta.route;
    meta["seed"] = d.meta.seed;
    json params = json::object();
    for (const auto& [k, v] : d.meta.params) params[k] = v;
    meta["params"] = params;

    json metrics;
    metrics["d1"] = r.d1;
    metrics["d2sq"] = r.d2sq;
    metrics["dH"] = r.dH;
    json rave;
    rave["value"] = r.r_ave_value;
    if (r.r_ave_exact) {
        rave["num"] = r.r_ave_exact->num_str();
        rave["den"] = r.r_ave_exact->den_str();
    }
    metrics["r_ave"] = rave;
    metrics["d1_upper"] = r.d1_upper;
    metrics["d2sq_upper"] = r.d2sq_upper;
    metrics["dH_upper"] = r.dH_upper;
    metrics["pair_count_min"] = r.t.min_off_diagonal();
    metrics["pair_count_max"] = r.t.max_off_diagonal();
    metrics["pair_balanced"] = r.is_pair_balanced;
    metrics["lhd"] = r.is_lhd;
    if (r.is_marginally_coupled) {
        metrics["mcd"] = *r.is_marginally_coupled;
    } else {
        metrics["mcd"] = nullptr;
    }
    meta["metrics"] = metrics;
    return meta.dump(2) + "\n";
}

std::filesystem::path metadata_path(const std::filesystem::path& design_path) {
    auto p = design_path;
    p += ".meta.json";
    return p;
}

MetricsReport write_design(const QSDesign& d, const std::filesystem::path& path) {
    MetricsReport r = evaluate(d);
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << design_csv(d);
    }
    {
        std::ofstream out(metadata_path(path), std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + metadata_path(path).string() +
                                     " for writing");
        }
        out << metadata_json(d, r, path.filename().string());
    }
    return r;
}

QSDesign read_design(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty design file " + path.string());
    auto header = split_csv_line(line);
    if (header.size() < 2 || header.size() % 2 != 0 || header[0] != "x1") {
        throw ParseError("header must read x1,...,xm,o1,...,om");
    }
    const auto m = Index(header.size() / 2);
    for (Index j = 0; j < m; ++j) {
        if (header[std::size_t(j)] != "x" + std::to_string(j + 1) ||
            header[std::size_t(m + j)] != "o" + std::to_string(j + 1)) {
            throw ParseError("header must read x1,...,xm,o1,...,om");
        }
    }

    std::vector<std::vector<std::int64_t>> rows;
    Index row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (Index(fields.size()) != 2 * m) {
            throw ParseError("row " + std::to_string(row_no) + ": expected " +
                             std::to_string(2 * m) + " fields, got " +
                             std::to_string(fields.size()));
        }
        std::vector<std::int64_t> vals(std::size_t(2 * m));
        for (Index j = 0; j < 2 * m; ++j) {
            vals[std::size_t(j)] = parse_int(fields[std::size_t(j)], row_no, j + 1);
        }
        rows.push_back(std::move(vals));
    }
    if (rows.size() < 1) throw ParseError("design file has no data rows");

    const auto n = Index(rows.size());
    IMatrix x(n, m), o(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) {
            x(i, j) = rows[std::size_t(i)][std::size_t(j)];
            o(i, j) = rows[std::size_t(i)][std::size_t(m + j)];
        }
    }
    DesignMeta meta;
    auto mpath = metadata_path(path);
    if (std::filesystem::exists(mpath)) {
        std::ifstream min(mpath);
        try {
            json j = json::parse(min);
            meta.route = j.value("route", "");
            meta.seed = j.value("seed", std::uint64_t(0));
            if (j.contains("params")) {
                for (auto& [key, val] : j["params"].items()) {
                    meta.set(key, val.get<std::int64_t>());
                }
            }
        } catch (const json::exception& e) {
            throw ParseError("metadata " + mpath.string() + ": " + e.what());
        }
    }
    try {
        return QSDesign(QuantDesign(std::move(x)), SeqDesign(std::move(o)), std::move(meta));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in " + path.string());
    }
}

}  // namespace qsdes
