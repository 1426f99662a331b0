// nradius — certified numerical-radius computations and inequality checking
//
// Machine-parsable output goes to stdout (or the --out file); diagnostics go
// to stderr.  Exit codes: 0 success, 1 violations found, 2 usage/input error.

#include "nr/catalog.hpp"
#include "nr/harness.hpp"
#include "nr/json_io.hpp"
#include "nr/radius.hpp"
#include "nr/transforms.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using nr::Json;

struct CliConfig {
    std::string quantity;
    std::string matrix_path;
    std::vector<std::string> entries;
    std::vector<std::string> families;
    std::string dims = "2..6";
    int trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    double scale = 1.0;
    std::vector<double> t_values;
    int budget = 5000;
    std::string format = "json";
    std::string out_path;
};

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    const auto push = [&](int d) {
        if (d < 1 || d > 64) throw CLI::ValidationError("--dims", "dimensions must lie in [1, 64]");
        dims.push_back(d);
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string token = text.substr(pos, next - pos);
        const std::size_t dots = token.find("..");
        try {
            if (dots != std::string::npos) {
                const int lo = std::stoi(token.substr(0, dots));
                const int hi = std::stoi(token.substr(dots + 2));
                if (hi < lo) throw CLI::ValidationError("--dims", "empty range: " + token);
                for (int d = lo; d <= hi; ++d) push(d);
            } else {
                push(std::stoi(token));
            }
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("--dims", "cannot parse: " + token);
        } catch (const std::out_of_range&) {
            throw CLI::ValidationError("--dims", "cannot parse: " + token);
        }
        pos = next + 1;
    }
    if (dims.empty()) throw CLI::ValidationError("--dims", "no dimensions given");
    return dims;
}

/// write the payload to --out if given, else to stdout
void emit(const CliConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw nr::LinalgError("cannot open output file: " + cfg.out_path);
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << "\n";
    std::cerr << "wrote " << cfg.out_path << "\n";
}

Json operand_to_json(const nr::Operand& op) {
    if (const nr::Matrix* m = std::get_if<nr::Matrix>(&op)) return nr::matrix_to_json(*m);
    if (const double* t = std::get_if<double>(&op)) {
        Json j;
        j["t"] = *t;
        return j;
    }
    Json j;
    j["sign"] = std::get<int>(op);
    return j;
}

// ===== compute =====

int cmd_compute(const CliConfig& cfg, bool tol_given, bool t_given) {
    const nr::Matrix m = nr::read_matrix_file(cfg.matrix_path);
    const double tol = tol_given ? cfg.tol : 0.0; // 0 = library default

    if (cfg.quantity == "w") {
        nr::require_square(m, "compute w");
        emit(cfg, nr::certified_to_json(nr::numerical_radius(m, tol)).dump(2));
        return 0;
    }
    if (cfg.quantity == "norm") {
        const double s = nr::spectral_norm(m);
        const double rad = 16.0 * static_cast<double>(std::max(m.rows(), m.cols())) *
                           std::numeric_limits<double>::epsilon() * s;
        emit(cfg, nr::certified_to_json({s, rad}).dump(2));
        return 0;
    }
    if (cfg.quantity == "aluthge") {
        if (!t_given) {
            std::cerr << "error: compute aluthge requires --t\n";
            return 2;
        }
        emit(cfg, nr::matrix_to_json(nr::aluthge_t(m, cfg.t_values.front())).dump(2));
        return 0;
    }
    if (cfg.quantity == "polar") {
        emit(cfg, nr::polar_to_json(nr::polar_decompose(m)).dump(2));
        return 0;
    }
    std::cerr << "error: unknown quantity '" << cfg.quantity
              << "' (expected w, norm, aluthge, polar)\n";
    return 2;
}

// ===== check =====

std::vector<const nr::CatalogEntry*> select_entries(const CliConfig& cfg) {
    std::vector<const nr::CatalogEntry*> selected;
    if (cfg.entries.empty()) {
        for (const nr::CatalogEntry& e : nr::registry()) selected.push_back(&e);
    } else {
        for (const std::string& id : cfg.entries) selected.push_back(&nr::find_entry(id));
    }
    return selected;
}

std::vector<nr::Family> select_families(const CliConfig& cfg, const nr::CatalogEntry& e,
                                        bool explicit_entries) {
    const std::vector<nr::Family> compatible = nr::compatible_families(e);
    if (cfg.families.empty()) return compatible;
    std::vector<nr::Family> chosen;
    for (const std::string& name : cfg.families) {
        const nr::Family f = nr::family_from_name(name);
        if (std::find(compatible.begin(), compatible.end(), f) != compatible.end())
            chosen.push_back(f);
        else if (explicit_entries)
            throw nr::HarnessError("incompatible entry/family pairing: " + e.id + " with " + name);
    }
    return chosen;
}

int cmd_check(const CliConfig& cfg) {
    const std::vector<int> dims = parse_dims(cfg.dims);
    const auto selected = select_entries(cfg);

    std::vector<nr::CheckReport> reports;
    std::size_t covered = 0;
    for (const nr::CatalogEntry* e : selected) {
        const auto families = select_families(cfg, *e, !cfg.entries.empty());
        if (families.empty()) continue;
        bool entry_ran = false;
        for (int dim : dims) {
            if (e->id == "C-nilp" || e->id == "R-zero") {
                if (dim != 2) continue; // the hypothesis pins the dimension
            }
            // split the per-(entry, dim) trial budget across the families
            const int per_family =
                (cfg.trials + static_cast<int>(families.size()) - 1) /
                static_cast<int>(families.size());
            for (nr::Family f : families) {
                nr::GeneratorSpec spec;
                spec.family = f;
                spec.dim = dim;
                spec.scale = cfg.scale;
                spec.seed = nr::sub_seed(cfg.seed, fnv64(e->id + ":" + nr::family_name(f) + ":" +
                                                         std::to_string(dim)));
                auto batch = nr::run_suite({e->id}, {spec}, per_family, cfg.tol);
                reports.insert(reports.end(), batch.begin(), batch.end());
                entry_ran = true;
            }
        }
        if (entry_ran) ++covered;
        std::cerr << "checked " << e->id << "\n";
    }
    if (cfg.entries.empty() && covered != nr::registry().size())
        throw nr::HarnessError("coverage assertion failed: " + std::to_string(covered) + " of " +
                               std::to_string(nr::registry().size()) + " entries ran");

    std::size_t violations = 0;
    long long trials_total = 0;
    for (const nr::CheckReport& r : reports) {
        violations += r.violations.size();
        trials_total += r.trials;
    }

    if (cfg.format == "csv") {
        emit(cfg, nr::reports_to_csv(reports));
    } else {
        Json out;
        Json list = Json::array();
        for (const nr::CheckReport& r : reports) list.push_back(nr::report_to_json(r));
        out["reports"] = std::move(list);
        Json summary;
        summary["entries"] = covered;
        summary["reports"] = reports.size();
        summary["trials_total"] = trials_total;
        summary["violations"] = violations;
        summary["pass"] = violations == 0;
        out["summary"] = std::move(summary);
        emit(cfg, out.dump(2));
    }
    std::cerr << (violations == 0 ? "PASS" : "FAIL") << ": " << violations << " violation(s) in "
              << trials_total << " trials across " << reports.size() << " reports\n";
    return violations == 0 ? 0 : 1;
}

// ===== sweep =====

int cmd_sweep(const CliConfig& cfg) {
    if (cfg.entries.size() != 1) {
        std::cerr << "error: sweep requires exactly one --entry\n";
        return 2;
    }
    const nr::CatalogEntry& e = nr::find_entry(cfg.entries.front());
    if (!e.t_parameterized) {
        std::cerr << "error: " << e.id << " has no t parameter to sweep\n";
        return 2;
    }
    for (double t : cfg.t_values)
        if (!(t >= 0.0 && t <= 1.0)) {
            std::cerr << "error: --t values must lie in [0, 1]\n";
            return 2;
        }
    const std::vector<double> grid =
        cfg.t_values.empty() ? nr::default_t_grid() : cfg.t_values;
    const std::vector<int> dims = parse_dims(cfg.dims);
    const auto families = select_families(cfg, e, true);
    if (families.empty()) {
        std::cerr << "error: no compatible family selected\n";
        return 2;
    }

    const int cells = static_cast<int>(dims.size() * families.size());
    const int per_cell = std::max(1, (cfg.trials + cells - 1) / cells);

    bool any_violation = false;
    Json rows = Json::array();
    for (double t : grid) {
        double worst = std::numeric_limits<double>::infinity();
        double worst_threshold = 0.0;
        int trials_at_t = 0;
        int violations_at_t = 0;
        for (int dim : dims)
            for (nr::Family f : families) {
                nr::GeneratorSpec spec;
                spec.family = f;
                spec.dim = dim;
                spec.scale = cfg.scale;
                spec.seed = nr::sub_seed(cfg.seed, fnv64(e.id + ":" + nr::family_name(f) + ":" +
                                                         std::to_string(dim)));
                for (int trial = 0; trial < per_cell; ++trial) {
                    const auto ops = nr::draw_trial_operands(
                        e, spec, static_cast<std::uint64_t>(trial), t, trial % 2 == 0 ? 1 : -1);
                    const nr::EvalResult res = nr::evaluate(e.id, ops, cfg.tol);
                    ++trials_at_t;
                    if (res.margin < worst) {
                        worst = res.margin;
                        worst_threshold = (cfg.tol + res.certified_error) *
                                          std::max(1.0, std::abs(res.rhs));
                    }
                    if (!nr::passes(res, cfg.tol)) ++violations_at_t;
                }
            }
        if (violations_at_t > 0) any_violation = true;
        Json row;
        row["entry"] = e.id;
        row["t"] = t;
        row["trials"] = trials_at_t;
        row["worst_margin"] = worst;
        row["pass_threshold"] = -worst_threshold;
        row["violations"] = violations_at_t;
        rows.push_back(std::move(row));
        std::cerr << "swept t = " << t << "\n";
    }

    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "entry,t,trials,worst_margin,violations\n";
        for (const Json& row : rows)
            csv << row["entry"].get<std::string>() << ',' << row["t"].dump() << ','
                << row["trials"] << ',' << row["worst_margin"].dump() << ','
                << row["violations"] << '\n';
        emit(cfg, csv.str());
    } else {
        Json out;
        out["sweep"] = std::move(rows);
        emit(cfg, out.dump(2));
    }
    return any_violation ? 1 : 0;
}

// ===== search =====

int cmd_search(const CliConfig& cfg) {
    if (cfg.entries.size() != 1) {
        std::cerr << "error: search requires exactly one entry\n";
        return 2;
    }
    if (cfg.budget < 1) {
        std::cerr << "error: --budget must be >= 1\n";
        return 2;
    }
    const nr::CatalogEntry& e = nr::find_entry(cfg.entries.front());
    const std::vector<int> dims = parse_dims(cfg.dims);
    const auto families = select_families(cfg, e, true);
    if (families.empty()) {
        std::cerr << "error: no compatible family selected\n";
        return 2;
    }

    nr::GeneratorSpec spec;
    spec.family = families.front();
    spec.dim = dims.front();
    spec.seed = cfg.seed;
    spec.scale = cfg.scale;

    const nr::SearchResult result = nr::tightness_search(e.id, spec, cfg.budget, cfg.tol);
    const nr::EvalResult best = nr::evaluate(e.id, result.best_operands, cfg.tol);

    Json out;
    out["entry"] = e.id;
    out["budget"] = cfg.budget;
    out["evaluations"] = result.evaluations;
    out["best_margin"] = result.best_margin;
    out["lhs"] = best.lhs;
    out["rhs"] = best.rhs;
    out["certified_error"] = best.certified_error;
    out["violation"] = !nr::passes(best, cfg.tol);
    Json ops = Json::array();
    for (const nr::Operand& op : result.best_operands) ops.push_back(operand_to_json(op));
    out["operands"] = std::move(ops);
    emit(cfg, out.dump(2));
    return nr::passes(best, cfg.tol) ? 0 : 1;
}

// ===== list =====

int cmd_list(const CliConfig& cfg) {
    std::ostringstream lines;
    for (const nr::CatalogEntry& e : nr::registry())
        lines << nr::registry_entry_to_json(e).dump() << "\n";
    emit(cfg, lines.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified numerical radius computations and inequality checks"};
    app.require_subcommand(1);

    CliConfig cfg;

    CLI::App* compute = app.add_subcommand("compute", "compute w/norm/aluthge/polar of a matrix");
    compute->add_option("quantity", cfg.quantity, "w | norm | aluthge | polar")->required();
    compute->add_option("matrix", cfg.matrix_path, "path to a matrix JSON file")->required();
    CLI::Option* compute_t = compute->add_option("--t", cfg.t_values, "Aluthge parameter in [0, 1]");
    CLI::Option* compute_tol = compute->add_option("--tol", cfg.tol, "certification tolerance");
    compute->add_option("--out", cfg.out_path, "write the result to this file");

    CLI::App* check = app.add_subcommand("check", "run catalog entries over random corpora");
    check->add_option("--entry", cfg.entries, "entry id(s); default: whole registry");
    check->add_option("--family", cfg.families, "restrict generator families");
    check->add_option("--dims", cfg.dims, "dimensions, e.g. 2..6 or 2,4,8");
    check->add_option("--trials", cfg.trials, "trials per (entry, dimension)");
    check->add_option("--seed", cfg.seed, "master seed");
    check->add_option("--tol", cfg.tol, "pass tolerance");
    check->add_option("--scale", cfg.scale, "generator scale");
    check->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    check->add_option("--out", cfg.out_path, "write the report to this file");

    CLI::App* sweep = app.add_subcommand("sweep", "margin profile of one entry across t");
    sweep->add_option("--entry", cfg.entries, "t-parameterized entry id")->required();
    sweep->add_option("--t", cfg.t_values, "t values (repeatable); default grid 0.05..0.95");
    sweep->add_option("--family", cfg.families, "restrict generator families");
    sweep->add_option("--dims", cfg.dims, "dimensions");
    sweep->add_option("--trials", cfg.trials, "total trials per t value");
    sweep->add_option("--seed", cfg.seed, "master seed");
    sweep->add_option("--tol", cfg.tol, "pass tolerance");
    sweep->add_option("--scale", cfg.scale, "generator scale");
    sweep->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--out", cfg.out_path, "write the table to this file");

    CLI::App* search = app.add_subcommand("search", "hill-descent toward an entry's equality case");
    std::string search_positional;
    search->add_option("entry_id", search_positional, "entry id");
    search->add_option("--entry", cfg.entries, "entry id (alternative spelling)");
    search->add_option("--budget", cfg.budget, "number of margin evaluations");
    search->add_option("--family", cfg.families, "starting family");
    search->add_option("--dims", cfg.dims, "dimension of the starting operands");
    search->add_option("--seed", cfg.seed, "search seed");
    search->add_option("--tol", cfg.tol, "pass tolerance");
    search->add_option("--scale", cfg.scale, "generator scale");
    search->add_option("--out", cfg.out_path, "write the result to this file");

    app.add_subcommand("list", "print the entry registry, one JSON object per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err); // --help
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    if (!search_positional.empty()) cfg.entries.push_back(search_positional);

    try {
        if (compute->parsed()) return cmd_compute(cfg, !compute_tol->empty(), !compute_t->empty());
        if (check->parsed()) return cmd_check(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (search->parsed()) return cmd_search(cfg);
        return cmd_list(cfg);
    } catch (const nr::CatalogError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const nr::HarnessError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const nr::LinalgError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
