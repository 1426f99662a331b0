#include "nr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nr {

Json matrix_to_json(const Matrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = std::move(data);
    return out;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw LinalgError("matrix JSON: expected an object with rows, cols, data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw LinalgError("matrix JSON: rows/cols must be integers");
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 1 || cols < 1 || rows > 64 || cols > 64)
        throw LinalgError("matrix JSON: dimensions must lie in [1, 64]");
    const Json& data = j["data"];
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols))
        throw LinalgError("matrix JSON: data must hold rows*cols [re, im] pairs");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k) {
            const Json& cell = data[k];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw LinalgError("matrix JSON: each entry must be an [re, im] pair");
            m(i, j2) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    if (!m.allFinite()) throw LinalgError("matrix JSON: non-finite entries");
    return m;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LinalgError("cannot open matrix file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw LinalgError("cannot parse matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw LinalgError("cannot open file for writing: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

Json certified_to_json(const CertifiedValue& v) {
    Json out;
    out["value"] = v.value;
    out["error_radius"] = v.error_radius;
    return out;
}

Json spec_to_json(const GeneratorSpec& spec) {
    Json out;
    out["family"] = family_name(spec.family);
    out["dim"] = spec.dim;
    out["seed"] = spec.seed;
    out["scale"] = spec.scale;
    return out;
}

Json report_to_json(const CheckReport& report) {
    Json violations = Json::array();
    for (const Violation& v : report.violations) {
        Json item;
        item["seed"] = v.seed;
        item["digest"] = v.digest;
        item["margin"] = v.margin;
        violations.push_back(std::move(item));
    }
    Json out;
    out["entry"] = report.entry_id;
    out["spec"] = spec_to_json(report.spec);
    out["trials"] = report.trials;
    out["min_margin"] = report.min_margin;
    out["quantiles"] = Json::array({report.quantiles[0], report.quantiles[1], report.quantiles[2],
                                    report.quantiles[3], report.quantiles[4]});
    out["violations"] = std::move(violations);
    out["runtime_ms"] = report.runtime_ms;
    return out;
}

Json polar_to_json(const PolarParts& parts) {
    Json out;
    out["isometry"] = matrix_to_json(parts.isometry);
    out["positive"] = matrix_to_json(parts.positive);
    out["rank_tol"] = parts.rank_tol;
    return out;
}

Json registry_entry_to_json(const CatalogEntry& e) {
    Json out;
    out["id"] = e.id;
    out["anchor"] = e.anchor;
    out["arity"] = e.signature.size();
    out["kind"] = kind_name(e.kind);
    Json sig = Json::array();
    for (Role r : e.signature) sig.push_back(role_name(r));
    out["signature"] = std::move(sig);
    return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << "entry,family,dim,seed,scale,trials,min_margin,p0,p25,p50,p75,p100,violations,"
           "runtime_ms\n";
    for (const CheckReport& r : reports) {
        // route doubles through the JSON writer so CSV numbers match the
        // JSON report byte for byte
        const auto num = [](double v) { return Json(v).dump(); };
        out << r.entry_id << ',' << family_name(r.spec.family) << ',' << r.spec.dim << ','
            << r.spec.seed << ',' << num(r.spec.scale) << ',' << r.trials << ','
            << num(r.min_margin);
        for (double q : r.quantiles) out << ',' << num(q);
        out << ',' << r.violations.size() << ',' << num(r.runtime_ms) << '\n';
    }
    return out.str();
}

} // namespace nr
