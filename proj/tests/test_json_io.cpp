#include <doctest.h>

#include "nr/json_io.hpp"

#include <cstdio>
#include <filesystem>

using namespace nr;

namespace {

Matrix sample_matrix() {
    Matrix m(2, 3);
    m << Complex(1, -2), Complex(0, 0.5), Complex(-3.25, 0), Complex(0, 0), Complex(1e-12, 7),
        Complex(2, 2);
    return m;
}

} // namespace

// ===== matrix schema =====

TEST_CASE("matrix json: schema shape and lossless round trip") {
    const Matrix m = sample_matrix();
    const Json j = matrix_to_json(m);
    CHECK(j.at("rows") == 2);
    CHECK(j.at("cols") == 3);
    REQUIRE(j.at("data").size() == 6);
    // row-major: data[1] is entry (0,1)
    CHECK(j.at("data")[1][0].get<double>() == 0.0);
    CHECK(j.at("data")[1][1].get<double>() == 0.5);

    const Matrix back = matrix_from_json(j);
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    CHECK(back == m); // bitwise round trip

    // and through the text form too
    const Matrix reparsed = matrix_from_json(Json::parse(j.dump()));
    CHECK(reparsed == m);
}

TEST_CASE("matrix json: malformed documents are rejected") {
    const Json good = matrix_to_json(sample_matrix());

    Json missing = good;
    missing.erase("data");
    CHECK_THROWS_AS(matrix_from_json(missing), LinalgError);

    Json short_data = good;
    short_data["data"].erase(0);
    CHECK_THROWS_AS(matrix_from_json(short_data), LinalgError);

    Json bad_pair = good;
    bad_pair["data"][0] = Json::array({1.0});
    CHECK_THROWS_AS(matrix_from_json(bad_pair), LinalgError);

    Json zero_dim = good;
    zero_dim["rows"] = 0;
    CHECK_THROWS_AS(matrix_from_json(zero_dim), LinalgError);

    Json too_big = good;
    too_big["rows"] = 65;
    CHECK_THROWS_AS(matrix_from_json(too_big), LinalgError);

    Json non_finite = good;
    non_finite["data"][0][0] = "nan";
    CHECK_THROWS_AS(matrix_from_json(non_finite), LinalgError);

    CHECK_THROWS_AS(matrix_from_json(Json::array()), LinalgError);
}

TEST_CASE("matrix files: write then read restores the matrix") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "nr_json_io_roundtrip.json";
    const Matrix m = sample_matrix();
    write_matrix_file(path.string(), m);
    const Matrix back = read_matrix_file(path.string());
    CHECK(back == m);
    std::remove(path.string().c_str());

    CHECK_THROWS_AS(read_matrix_file("/nonexistent/definitely_missing.json"), LinalgError);
}

// ===== report serialization =====

TEST_CASE("certified values and generator specs serialize with stable fields") {
    const CertifiedValue v{0.5, 1e-10};
    const Json jv = certified_to_json(v);
    CHECK(jv.at("value") == 0.5);
    CHECK(jv.at("error_radius") == 1e-10);

    GeneratorSpec spec;
    spec.family = Family::nilpotent;
    spec.dim = 2;
    spec.seed = 987654321;
    spec.scale = 2.5;
    const Json js = spec_to_json(spec);
    CHECK(js.at("family") == "nilpotent");
    CHECK(js.at("dim") == 2);
    CHECK(js.at("seed") == 987654321);
    CHECK(js.at("scale") == 2.5);
}

TEST_CASE("check reports serialize losslessly, with violations") {
    CheckReport r;
    r.entry_id = "L1.1a-eq10";
    r.spec.family = Family::gaussian;
    r.spec.dim = 4;
    r.spec.seed = 42;
    r.trials = 100;
    r.min_margin = -0.25;
    r.quantiles = {-0.25, 0.0, 0.125, 0.5, 1.0};
    r.violations.push_back({123456789ull, "00deadbeef001122", -0.25});
    r.runtime_ms = 12.5;

    const Json j = report_to_json(r);
    CHECK(j.at("entry") == "L1.1a-eq10");
    CHECK(j.at("spec").at("family") == "gaussian");
    CHECK(j.at("trials") == 100);
    CHECK(j.at("min_margin") == -0.25);
    REQUIRE(j.at("quantiles").size() == 5);
    CHECK(j.at("quantiles")[4] == 1.0);
    REQUIRE(j.at("violations").size() == 1);
    CHECK(j.at("violations")[0].at("seed") == 123456789ull);
    CHECK(j.at("violations")[0].at("digest") == "00deadbeef001122");
    CHECK(j.at("violations")[0].at("margin") == -0.25);
    CHECK(j.contains("runtime_ms"));
}

TEST_CASE("csv flattening: header plus one row per report, json-identical doubles") {
    CheckReport r;
    r.entry_id = "EQ-equiv-hi";
    r.spec.family = Family::unitary;
    r.spec.dim = 3;
    r.spec.seed = 5;
    r.trials = 10;
    r.min_margin = 1.25e-9;
    r.quantiles = {1.25e-9, 2e-9, 3e-9, 4e-9, 5e-9};
    r.runtime_ms = 1.0;

    const std::string csv = reports_to_csv({r, r});
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < csv.size()) {
        const size_t nl = csv.find('\n', start);
        lines.push_back(csv.substr(start, nl - start));
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] ==
          "entry,family,dim,seed,scale,trials,min_margin,p0,p25,p50,p75,p100,violations,"
          "runtime_ms");
    CHECK(lines[1] == lines[2]); // identical reports flatten identically
    CHECK(lines[1].find("EQ-equiv-hi,unitary,3,5,") == 0);
    // shortest-round-trip double text matches the json serializer
    CHECK(lines[1].find(Json(1.25e-9).dump()) != std::string::npos);
}

TEST_CASE("registry entries export id, anchor, arity, kind") {
    const Json j = registry_entry_to_json(find_entry("EQ-yam2"));
    CHECK(j.at("id") == "EQ-yam2");
    CHECK(j.at("kind") == "ORDERING");
    CHECK(j.at("arity") == 1);
    CHECK(!j.at("anchor").get<std::string>().empty());
    REQUIRE(j.at("signature").size() == 1);
    CHECK(j.at("signature")[0] == "square_matrix");

    const Json jt = registry_entry_to_json(find_entry("T2.5-t"));
    CHECK(jt.at("kind") == "INEQUALITY");
    CHECK(jt.at("arity") == 7); // six matrices plus the t parameter
}

TEST_CASE("polar parts serialize as two matrices plus the rank tolerance") {
    Matrix d(2, 2);
    d << 2, 0, 0, 0;
    PolarParts pp;
    pp.isometry = Matrix::Identity(2, 2);
    pp.positive = d;
    pp.rank_tol = 1e-15;
    const Json j = polar_to_json(pp);
    CHECK(j.at("isometry").at("rows") == 2);
    CHECK(j.at("positive").at("data")[0][0] == 2.0);
    CHECK(j.at("rank_tol") == 1e-15);
}
