#include "casimir/batch.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/pc_series.hpp"
#include "casimir/version.hpp"

namespace casimir::batch {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct KindColumns {
    Kind kind;
    const char* prefix;
    const char* unit;
};

const KindColumns kKindColumns[] = {
    {Kind::Energy, "E", "J"},
    {Kind::Force, "F", "N"},
    {Kind::Gradient, "G", "N_per_m"},
};

bool wants(Quantity q, Kind k) {
    switch (q) {
        case Quantity::All: return true;
        case Quantity::Energy: return k == Kind::Energy;
        case Quantity::Force: return k == Kind::Force;
        case Quantity::Gradient: return k == Kind::Gradient;
    }
    return false;
}

KindValues from_expansion(const ExpansionResult& r) {
    KindValues v;
    v.leading = r.leading;
    v.ntlo = r.ntlo;
    v.sum = r.leading + r.ntlo;
    v.normalized_leading = r.normalized_leading;
    v.normalized_sum = r.normalized_sum;
    v.theta = r.theta;
    return v;
}

double model_a(const DielectricModel& m, double d) {
    // 1/omega_d for the PC series; PC itself is a = 0.
    if (m.perfect()) return 0.0;
    return constants::c / (m.omega_p() * d);
}

ResultRecord evaluate_point(const RunConfig& cfg, double d) {
    ResultRecord rec;
    rec.d = d;
    rec.e = d / cfg.radius;
    const Geometry geom(cfg.radius, d);
    switch (cfg.method) {
        case Method::Ntlo: {
            const ExpansionSet set = compute_all(cfg.material1, cfg.material2, geom, cfg.engine);
            if (wants(cfg.quantity, Kind::Energy)) rec.energy = from_expansion(set.energy);
            if (wants(cfg.quantity, Kind::Force)) rec.force = from_expansion(set.force);
            if (wants(cfg.quantity, Kind::Gradient)) rec.gradient = from_expansion(set.gradient);
            rec.diag = set.energy.diag;
            break;
        }
        case Method::Pfa: {
            // leading order only; NTLO fields stay zero
            const ExpansionSet set = compute_all(cfg.material1, cfg.material2, geom, cfg.engine);
            for (const auto& kc : kKindColumns) {
                if (!wants(cfg.quantity, kc.kind)) continue;
                const ExpansionResult& r = set.of(kc.kind);
                KindValues v;
                v.leading = r.leading;
                v.sum = r.leading;
                v.normalized_leading = r.normalized_leading;
                v.normalized_sum = r.normalized_leading;
                v.theta = 0.0;
                if (kc.kind == Kind::Energy) rec.energy = v;
                if (kc.kind == Kind::Force) rec.force = v;
                if (kc.kind == Kind::Gradient) rec.gradient = v;
            }
            rec.diag = set.energy.diag;
            break;
        }
        case Method::PcSeries: {
            const bool ok1 = cfg.material1.perfect() || cfg.material1.kind() == MaterialKind::Plasma;
            const bool ok2 = cfg.material2.perfect() || cfg.material2.kind() == MaterialKind::Plasma;
            if (!ok1 || !ok2)
                throw std::invalid_argument(
                    "method pc-series requires plasma or pc materials (a_i = 1/omega_d)");
            const double a1 = model_a(cfg.material1, d);
            const double a2 = model_a(cfg.material2, d);
            for (const auto& kc : kKindColumns) {
                if (!wants(cfg.quantity, kc.kind)) continue;
                const double ref = pfa_pc_reference(kc.kind, geom);
                double lead = 0.0, next = 0.0;
                // split the multiplier into its beta and e*lambda parts
                const double m0 = pc_series::pc_series_eval(kc.kind, a1, a2, 0.0);
                const double m1 = pc_series::pc_series_eval(kc.kind, a1, a2, geom.e);
                lead = m0 * ref;
                next = (m1 - m0) * ref;
                KindValues v;
                v.leading = lead;
                v.ntlo = next;
                v.sum = lead + next;
                v.normalized_leading = m0;
                v.normalized_sum = m1;
                v.theta = m0 != 0.0 ? (m1 - m0) / (geom.e * m0) : 0.0;
                if (kc.kind == Kind::Energy) rec.energy = v;
                if (kc.kind == Kind::Force) rec.force = v;
                if (kc.kind == Kind::Gradient) rec.gradient = v;
            }
            break;
        }
        case Method::Exact: {
            if (cfg.quantity != Quantity::Energy)
                throw std::invalid_argument("method exact computes quantity=energy only");
            const double e_exact = exact_energy(cfg.material1, cfg.material2, geom, cfg.trunc);
            KindValues v;
            v.leading = e_exact;
            v.sum = e_exact;
            v.normalized_leading = e_exact / pfa_pc_reference(Kind::Energy, geom);
            v.normalized_sum = v.normalized_leading;
            rec.energy = v;
            break;
        }
    }
    return rec;
}

void emit_kind_header(std::ostream& os, Quantity q) {
    for (const auto& kc : kKindColumns) {
        if (!wants(q, kc.kind)) continue;
        os << ',' << kc.prefix << "_leading_" << kc.unit << ',' << kc.prefix << "_ntlo_"
           << kc.unit << ',' << kc.prefix << "_sum_" << kc.unit << ',' << kc.prefix
           << "_norm_leading," << kc.prefix << "_norm_sum,theta1_" << kc.prefix;
    }
}

const KindValues* kind_values(const ResultRecord& r, Kind k) {
    switch (k) {
        case Kind::Energy: return r.energy ? &*r.energy : nullptr;
        case Kind::Force: return r.force ? &*r.force : nullptr;
        case Kind::Gradient: return r.gradient ? &*r.gradient : nullptr;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) return kNan;
        return v;
    } catch (...) {
        return kNan;
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("radius: must be positive");
    if (!(gap.min > 0.0)) throw std::invalid_argument("gap.min: must be positive");
    if (gap.points < 1) throw std::invalid_argument("gap.points: must be >= 1");
    if (gap.points > 1 && !(gap.max > gap.min))
        throw std::invalid_argument("gap: sweep requires min < max and points >= 2");
    if (jobs < 0) throw std::invalid_argument("jobs: must be >= 0");
    if (format != OutputFormat::Csv && format != OutputFormat::Json)
        throw std::invalid_argument("format: csv or json");
}

std::vector<double> sweep_gaps(const SweepSpec& spec) {
    std::vector<double> gaps;
    gaps.reserve(spec.points);
    if (spec.points == 1) {
        gaps.push_back(spec.min);
        return gaps;
    }
    for (int i = 0; i < spec.points; ++i) {
        const double t = static_cast<double>(i) / (spec.points - 1);
        gaps.push_back(spec.log ? spec.min * std::pow(spec.max / spec.min, t)
                                : spec.min + (spec.max - spec.min) * t);
    }
    return gaps;
}

RunOutput run_sweep(const RunConfig& config) {
    config.validate();
    const std::vector<double> gaps = sweep_gaps(config.gap);
    RunOutput out;
    out.records.resize(gaps.size());

    const int jobs = config.jobs > 0 ? config.jobs
                                     : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<size_t> next{0};
    std::atomic<bool> any_error{false};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= gaps.size()) return;
            try {
                out.records[i] = evaluate_point(config, gaps[i]);
            } catch (const ConvergenceError& err) {
                out.records[i].d = gaps[i];
                out.records[i].e = gaps[i] / config.radius;
                out.records[i].status = std::string("convergence_error: ") + err.what();
                any_error = true;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<size_t>(jobs, gaps.size());
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    out.any_error = any_error;
    return out;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void emit_preamble_line(std::ostream& os, const std::string& line) { os << "# " << line << "\n"; }

std::vector<std::string> config_echo(const RunConfig& c) {
    std::vector<std::string> lines;
    lines.push_back("casimir-sphere-plate " + std::string(version));
    lines.push_back("method = " + method_name(c.method));
    lines.push_back("quantity = " + quantity_name(c.quantity));
    lines.push_back("material1 = " + c.material1.label());
    lines.push_back("material2 = " + c.material2.label());
    lines.push_back("radius_m = " + format_g17(c.radius));
    lines.push_back("gap_m = " + format_g17(c.gap.min) + " .. " + format_g17(c.gap.max) + " (" +
                    std::to_string(c.gap.points) + (c.gap.log ? ", log)" : ", linear)"));
    lines.push_back("engine = phi:" + std::to_string(c.engine.phi_nodes) +
                    " t:" + std::to_string(c.engine.t_nodes) +
                    " smax:" + std::to_string(c.engine.s_max));
    return lines;
}

}  // namespace

void write_csv(std::ostream& os, const RunConfig& config,
               const std::vector<ResultRecord>& records) {
    for (const auto& line : config_echo(config)) emit_preamble_line(os, line);
    os << "d_m,e";
    emit_kind_header(os, config.quantity);
    os << ",s_reached,phi_nodes,t_nodes,err_leading,err_ntlo,status\n";
    for (const auto& r : records) {
        os << format_g17(r.d) << ',' << format_g17(r.e);
        for (const auto& kc : kKindColumns) {
            if (!wants(config.quantity, kc.kind)) continue;
            const KindValues* v = kind_values(r, kc.kind);
            if (!v) {
                os << ",nan,nan,nan,nan,nan,nan";
                continue;
            }
            os << ',' << format_g17(v->leading) << ',' << format_g17(v->ntlo) << ','
               << format_g17(v->sum) << ',' << format_g17(v->normalized_leading) << ','
               << format_g17(v->normalized_sum) << ',' << format_g17(v->theta);
        }
        os << ',' << r.diag.s_reached << ',' << r.diag.phi_nodes << ',' << r.diag.t_nodes << ','
           << format_g17(r.diag.err_leading) << ',' << format_g17(r.diag.err_ntlo) << ','
           << (r.status == "ok" ? "ok" : "failed") << '\n';
    }
}

void write_json(std::ostream& os, const RunConfig& config,
                const std::vector<ResultRecord>& records) {
    // Hand-rolled emission so numbers are serialized with the same 17
    // significant digits as the CSV writer.
    auto kv = [&](const char* name, const std::string& raw, bool comma = true) {
        os << "    \"" << name << "\": " << raw;
        if (comma) os << ',';
        os << '\n';
    };
    os << "{\n  \"config\": {\n";
    os << "    \"tool\": \"casimir-sphere-plate\",\n";
    os << "    \"version\": \"" << version << "\",\n";
    os << "    \"method\": \"" << method_name(config.method) << "\",\n";
    os << "    \"quantity\": \"" << quantity_name(config.quantity) << "\",\n";
    os << "    \"material1\": \"" << config.material1.label() << "\",\n";
    os << "    \"material2\": \"" << config.material2.label() << "\",\n";
    os << "    \"radius_m\": " << format_g17(config.radius) << "\n";
    os << "  },\n  \"records\": [\n";
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << "  {\n";
        kv("d_m", format_g17(r.d));
        kv("e", format_g17(r.e));
        for (const auto& kc : kKindColumns) {
            if (!wants(config.quantity, kc.kind)) continue;
            const KindValues* v = kind_values(r, kc.kind);
            const std::string pre(kc.prefix);
            const std::string unit = std::string("_") + kc.unit;
            kv((pre + "_leading" + unit).c_str(), v ? format_g17(v->leading) : "null");
            kv((pre + "_ntlo" + unit).c_str(), v ? format_g17(v->ntlo) : "null");
            kv((pre + "_sum" + unit).c_str(), v ? format_g17(v->sum) : "null");
            kv((pre + "_norm_leading").c_str(), v ? format_g17(v->normalized_leading) : "null");
            kv((pre + "_norm_sum").c_str(), v ? format_g17(v->normalized_sum) : "null");
            kv(("theta1_" + pre).c_str(), v ? format_g17(v->theta) : "null");
        }
        kv("s_reached", std::to_string(r.diag.s_reached));
        kv("phi_nodes", std::to_string(r.diag.phi_nodes));
        kv("t_nodes", std::to_string(r.diag.t_nodes));
        kv("err_leading", format_g17(r.diag.err_leading));
        kv("err_ntlo", format_g17(r.diag.err_ntlo));
        kv("status", r.status == "ok" ? "\"ok\"" : "\"failed\"", false);
        os << (i + 1 < records.size() ? "  },\n" : "  }\n");
    }
    os << "  ]\n}\n";
}

namespace {

ResultTable table_from_json(const std::string& path) {
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& err) {
        throw DataError(path + ": JSON parse error: " + err.what());
    }
    ResultTable t;
    if (!j.contains("records") || !j["records"].is_array())
        throw DataError(path + ": missing records array");
    const auto& recs = j["records"];
    if (recs.empty()) return t;
    for (auto it = recs[0].begin(); it != recs[0].end(); ++it) t.columns.push_back(it.key());
    for (const auto& rec : recs) {
        std::vector<double> row;
        for (const auto& col : t.columns) {
            if (!rec.contains(col) || !rec[col].is_number())
                row.push_back(kNan);
            else
                row.push_back(rec[col].get<double>());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

ResultTable read_result_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open result file: " + path);
    // sniff: JSON emissions start with '{'
    char first = 0;
    in >> first;
    if (first == '{') {
        in.close();
        return table_from_json(path);
    }
    in.seekg(0);
    ResultTable t;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (trimmed[0] == '#') {
            t.preamble.push_back(trimmed);
            continue;
        }
        if (!header_seen) {
            t.columns = split(trimmed, ',');
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells = split(trimmed, ',');
        if (cells.size() != t.columns.size())
            throw DataError(path + ":" + std::to_string(lineno) + ": column count mismatch");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c));
        t.rows.push_back(std::move(row));
    }
    if (!header_seen) throw DataError(path + ": no header row found");
    return t;
}

CompareReport compare_tables(const ResultTable& a, const ResultTable& b,
                             const std::vector<std::string>& keys) {
    auto col_index = [](const ResultTable& t, const std::string& name) -> int {
        for (size_t i = 0; i < t.columns.size(); ++i)
            if (t.columns[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int da = col_index(a, "d_m");
    const int db = col_index(b, "d_m");
    if (da < 0 || db < 0) throw DataError("compare: both files need a d_m column");
    if (a.rows.size() != b.rows.size())
        throw DataError("compare: row counts differ (" + std::to_string(a.rows.size()) + " vs " +
                        std::to_string(b.rows.size()) + ")");
    for (size_t r = 0; r < a.rows.size(); ++r) {
        const double x = a.rows[r][da], y = b.rows[r][db];
        if (!(std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y))))
            throw DataError("compare: d grids do not match at row " + std::to_string(r));
    }

    std::vector<std::string> cols;
    if (!keys.empty()) {
        cols = keys;
    } else {
        for (const auto& name : a.columns) {
            if (name == "d_m" || name == "e" || name == "status" || name == "s_reached" ||
                name == "phi_nodes" || name == "t_nodes" || name == "err_leading" ||
                name == "err_ntlo")
                continue;
            if (col_index(b, name) >= 0) cols.push_back(name);
        }
    }

    CompareReport rep;
    rep.columns = cols;
    rep.max_abs_dev.assign(cols.size(), 0.0);
    for (size_t r = 0; r < a.rows.size(); ++r) {
        std::vector<double> row;
        row.push_back(a.rows[r][da]);
        for (size_t c = 0; c < cols.size(); ++c) {
            const int ia = col_index(a, cols[c]);
            const int ib = col_index(b, cols[c]);
            if (ia < 0 || ib < 0) throw DataError("compare: missing column " + cols[c]);
            const double x = a.rows[r][ia], y = b.rows[r][ib];
            const double ratio = x / y;
            row.push_back(ratio);
            if (std::isfinite(ratio))
                rep.max_abs_dev[c] = std::max(rep.max_abs_dev[c], std::fabs(ratio - 1.0));
        }
        rep.ratios.push_back(std::move(row));
    }
    for (double v : rep.max_abs_dev) rep.overall = std::max(rep.overall, v);
    return rep;
}

DielectricModel parse_material(const std::string& spec) {
    const std::string s = trim(spec);
    auto freq = [](const std::string& txt) {
        const std::string v = trim(txt);
        if (v.size() > 2 && v.substr(v.size() - 2) == "eV")
            return ev_to_angular_frequency(std::stod(v.substr(0, v.size() - 2)));
        std::string w = v;
        if (v.size() > 3 && v.substr(v.size() - 3) == "rad") w = v.substr(0, v.size() - 3);
        return std::stod(w);
    };
    try {
        if (s == "pc" || s == "perfect" || s == "perfect-conductor")
            return DielectricModel::perfect_conductor();
        if (s == "vacuum") return DielectricModel::vacuum();
        if (s.rfind("plasma:", 0) == 0) return DielectricModel::plasma(freq(s.substr(7)));
        if (s.rfind("drude:", 0) == 0) {
            const auto parts = split(s.substr(6), ',');
            if (parts.size() != 2)
                throw std::invalid_argument("drude spec needs omega_p,gamma");
            return DielectricModel::drude(freq(parts[0]), freq(parts[1]));
        }
        if (s.rfind("table:", 0) == 0) return DielectricModel::from_file(s.substr(6));
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& err) {
        throw std::invalid_argument("material spec '" + s + "': " + err.what());
    }
    throw std::invalid_argument("material spec '" + s +
                                "': expected pc|vacuum|plasma:..|drude:..,..|table:path");
}

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::Energy: return "energy";
        case Quantity::Force: return "force";
        case Quantity::Gradient: return "gradient";
        case Quantity::All: return "all";
    }
    return "?";
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Pfa: return "pfa";
        case Method::Ntlo: return "ntlo";
        case Method::PcSeries: return "pc-series";
        case Method::Exact: return "exact";
    }
    return "?";
}

}  // namespace casimir::batch
