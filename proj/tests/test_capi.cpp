#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyspec.h"

using nlohmann::json;

namespace {

const char* kUnitWeight = R"({
  "segments": [{"t0": -1.0, "t1": 1.0, "kind": "constant", "value": 1.0}],
  "limit_origin": 1.0,
  "limit_infinity": 1.0
})";

const char* kBumpOverOne = R"({
  "segments": [{"t0": 0.0, "t1": 0.6931471805599453, "kind": "constant",
                "value": 10.0}],
  "limit_origin": 1.0,
  "limit_infinity": 1.0
})";

const char* kCompactBump = R"({
  "segments": [{"t0": 0.0, "t1": 0.6931471805599453, "kind": "constant",
                "value": 9.0}],
  "limit_origin": 0.0,
  "limit_infinity": 0.0
})";

hs_weight* load(const char* text) {
    hs_weight* w = nullptr;
    REQUIRE(hs_weight_from_json(text, &w) == HS_OK);
    REQUIRE(w != nullptr);
    return w;
}

json parse_result(const hs_result* r) {
    const char* text = hs_result_json(r);
    REQUIRE(text != nullptr);
    return json::parse(text);
}

}  // namespace

TEST_CASE("version and default options") {
    CHECK(std::string(hs_version()) == "1.0.0");
    hs_run_opts o;
    hs_run_opts_default(&o);
    CHECK(o.dim == 3);
    CHECK(o.t_min == -30.0);
    CHECK(o.t_max == 30.0);
    CHECK(o.n == 6001);
    CHECK(o.l_max == 3);
    CHECK(o.tol == 1e-10);
    CHECK(o.max_iter == 200000);
    CHECK(o.jobs == 1);
    CHECK(o.classification_tol == 1e-3);
}

TEST_CASE("weight lifecycle and queries") {
    hs_weight* w = load(kBumpOverOne);
    double v = 0.0;
    CHECK(hs_weight_eval(w, 0.3, &v) == HS_OK);
    CHECK(v == 10.0);
    CHECK(hs_weight_eval(w, -5.0, &v) == HS_OK);
    CHECK(v == 1.0);
    double l0 = 0.0, li = 0.0;
    CHECK(hs_weight_limits(w, &l0, &li) == HS_OK);
    CHECK(l0 == 1.0);
    CHECK(li == 1.0);
    CHECK(hs_weight_sup_norm(w, &v) == HS_OK);
    CHECK(v == 10.0);
    double lo = 0.0, hi = 0.0;
    CHECK(hs_weight_ball_extrema(w, std::exp(-2.0), &lo, &hi) == HS_OK);
    CHECK(lo == 1.0);
    CHECK(hi == 1.0);
    CHECK(hs_weight_ball_extrema(w, std::exp(10.0), &lo, &hi) == HS_OK);
    CHECK(lo == 1.0);
    CHECK(hi == 10.0);
    CHECK(hs_weight_ball_extrema(w, 0.0, &lo, &hi) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "radius") != nullptr);

    int flag = -1;
    CHECK(hs_weight_check_periodic(w, 2.0, 1e-9, &flag) == HS_OK);
    CHECK(flag == 0);  // the localized profile is not log-periodic
    CHECK(hs_weight_check_periodic(w, 1.0, 1e-9, &flag) == HS_ERR_INVALID);

    hs_weight* m1 = load(kUnitWeight);
    CHECK(hs_weight_check_periodic(m1, 2.0, 1e-9, &flag) == HS_OK);
    CHECK(flag == 1);

    CHECK(hs_weight_eval(w, std::nan(""), &v) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "finite") != nullptr);

    hs_weight_free(w);
    hs_weight_free(m1);
    hs_weight_free(nullptr);  // must be a safe no-op
}

TEST_CASE("null arguments and parse failures") {
    hs_weight* w = nullptr;
    CHECK(hs_weight_from_json(nullptr, &w) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "null pointer argument") != nullptr);
    CHECK(hs_weight_from_json(kUnitWeight, nullptr) == HS_ERR_INVALID);

    CHECK(hs_weight_from_json("{nope", &w) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "weight JSON parse error") != nullptr);
    CHECK(w == nullptr);
    CHECK(hs_weight_from_json("{}", &w) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "segments") != nullptr);

    CHECK(hs_weight_from_file("/nonexistent/weight.json", &w) ==
          HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "cannot open weight file") != nullptr);

    hs_result* res = nullptr;
    CHECK(hs_eigen(nullptr, nullptr, &res) == HS_ERR_INVALID);
    CHECK(res == nullptr);
    hs_weight* m1 = load(kUnitWeight);
    CHECK(hs_eigen(m1, nullptr, nullptr) == HS_ERR_INVALID);
    hs_weight_free(m1);

    CHECK(hs_result_json(nullptr) == nullptr);
    CHECK(hs_result_csv(nullptr) == nullptr);
    hs_result_free(nullptr);  // must be a safe no-op
}

TEST_CASE("eigen and classify reports") {
    hs_weight* m1 = load(kUnitWeight);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.n = 1001;

    hs_result* res = nullptr;
    REQUIRE(hs_eigen(m1, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "spectral_report");
    CHECK(j["N"] == 3);
    CHECK(j["classification"] == "HardySaturated");
    CHECK(j["lambda_plus"] == 0.25);
    CHECK(j["lambda_minus"] == 0.25);
    CHECK(j["lambda_star"] == 0.25);
    double lm = j["lambda_m"].get<double>();
    CHECK(lm >= 0.25);
    CHECK(lm <= 0.26);
    CHECK(j["winning_sector"] == 0);
    CHECK(j["psi"].size() == 1001);
    CHECK(j["sector_values"].contains("0"));
    CHECK(j["sector_values"].contains("3"));
    CHECK(j["grid"]["n"] == 1001);
    CHECK(j["provenance"]["version"] == "1.0.0");
    CHECK(j["provenance"]["grid"]["n"] == 1001);
    CHECK(j["provenance"]["iterations"].contains("l0"));
    CHECK(hs_result_csv(res) == nullptr);  // CSV is sigma-only

    // a second identical run renders byte-identical JSON
    hs_result* res2 = nullptr;
    REQUIRE(hs_eigen(m1, &o, &res2) == HS_OK);
    CHECK(std::string(hs_result_json(res)) ==
          std::string(hs_result_json(res2)));
    hs_result_free(res2);

    hs_result* cls = nullptr;
    REQUIRE(hs_classify(m1, &o, &cls) == HS_OK);
    json jc = parse_result(cls);
    CHECK_FALSE(jc.contains("psi"));
    CHECK(jc["lambda_m"].get<double>() == lm);
    CHECK(jc["classification"] == "HardySaturated");
    hs_result_free(cls);
    hs_result_free(res);
    hs_weight_free(m1);
}

TEST_CASE("infinite critical levels render as strings") {
    hs_weight* bump = load(kCompactBump);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.n = 1001;
    hs_result* res = nullptr;
    REQUIRE(hs_classify(bump, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["lambda_plus"] == "inf");
    CHECK(j["lambda_minus"] == "inf");
    CHECK(j["lambda_star"] == "inf");
    CHECK(j["classification"] == "MinimizerExists");
    hs_result_free(res);
    hs_weight_free(bump);
}

TEST_CASE("option validation and solver failure mapping") {
    hs_weight* m1 = load(kUnitWeight);
    hs_result* res = nullptr;

    hs_run_opts o;
    hs_run_opts_default(&o);
    o.dim = 2;
    CHECK(hs_eigen(m1, &o, &res) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "dimension must be") != nullptr);

    hs_run_opts_default(&o);
    o.tol = -1.0;
    CHECK(hs_eigen(m1, &o, &res) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "tol") != nullptr);

    hs_run_opts_default(&o);
    o.max_iter = 0;
    CHECK(hs_eigen(m1, &o, &res) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "max_iter") != nullptr);

    hs_run_opts_default(&o);
    o.jobs = 0;
    CHECK(hs_eigen(m1, &o, &res) == HS_ERR_INVALID);

    hs_run_opts_default(&o);
    o.n = 1001;
    o.max_iter = 1;
    CHECK(hs_eigen(m1, &o, &res) == HS_ERR_SOLVER);
    CHECK(res == nullptr);
    CHECK(std::strstr(hs_last_error(), "max_iter") != nullptr);

    hs_weight_free(m1);
}

TEST_CASE("oracle cross-check") {
    hs_weight* m1 = load(kUnitWeight);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.n = 402;
    hs_result* res = nullptr;
    REQUIRE(hs_oracle(m1, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "oracle_check");
    CHECK(j["agree"] == true);
    CHECK(j["rel_diff"].get<double>() <= 1e-9);
    CHECK(j["lambda_principal"].get<double>() > 0.0);
    hs_result_free(res);

    o.n = 6001;
    CHECK(hs_oracle(m1, &o, &res) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "at most 400") != nullptr);
    hs_weight_free(m1);
}

TEST_CASE("ball bound report") {
    hs_result* res = nullptr;
    REQUIRE(hs_ballbound(3, 1.0, 2.0, 1.0, 1.0, 100.0, 0, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "ball_bound_report");
    CHECK(j["apriori_bound"].get<double>() == 0.9);
    CHECK(j["sharp_bound"].get<double>() == 0.9);
    CHECK(j["criterion_holds"] == false);
    CHECK(j["use_sharp"] == false);
    hs_result_free(res);

    REQUIRE(hs_ballbound(3, 1.0, 2.0, 1.0, 1.0, 100.0, 1, &res) == HS_OK);
    json s = parse_result(res);
    CHECK(s["use_sharp"] == true);
    CHECK(s["sharp_bound"].get<double>() < s["apriori_bound"].get<double>());
    hs_result_free(res);

    CHECK(hs_ballbound(3, 1.0, 0.5, 1.0, 1.0, 100.0, 0, &res) ==
          HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "d > r") != nullptr);
}

TEST_CASE("sigma curve carries json and csv renderings") {
    hs_weight* m1 = load(kUnitWeight);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.n = 1001;
    double lams[2] = {0.1, 0.2};
    hs_result* res = nullptr;
    REQUIRE(hs_sigma(nullptr, m1, lams, 2, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "sigma_curve");
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][0]["lambda"] == 0.1);
    CHECK(j["points"][0]["feasible"] == true);
    CHECK(std::fabs(j["points"][0]["sigma"].get<double>() - 2.5) <= 1e-8);
    CHECK(std::fabs(j["points"][1]["sigma"].get<double>() - 1.25) <= 1e-8);
    const char* csv = hs_result_csv(res);
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("lambda,sigma,feasible\n", 0) == 0);
    CHECK(std::string(csv).find("true") != std::string::npos);
    hs_result_free(res);
    hs_weight_free(m1);
}

TEST_CASE("periodic and null-sequence reports") {
    hs_weight* m1 = load(kUnitWeight);
    hs_run_opts o;
    hs_run_opts_default(&o);
    hs_result* res = nullptr;
    REQUIRE(hs_periodic(m1, 2.0, 64, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "periodic_ground_state");
    CHECK(std::fabs(j["lambda_circ"].get<double>() - 0.25) <= 1e-10);
    CHECK(j["cell"]["n"] == 64);
    CHECK(j["psi"].size() == 64);
    CHECK(j["sandwich_c"].get<double>() >= 1.0);
    hs_result_free(res);

    long ks[2] = {8, 16};
    REQUIRE(hs_nullseq(m1, 2.0, 64, ks, 2, &o, &res) == HS_OK);
    json nj = parse_result(res);
    CHECK(nj["type"] == "null_sequence_decay");
    REQUIRE(nj["points"].size() == 2);
    double four_pi = 4.0 * 3.14159265358979323846;
    for (const auto& pt : nj["points"]) {
        CHECK(std::fabs(pt["kq"].get<double>() - four_pi) <= 1e-6 * four_pi);
    }
    CHECK(nj["points"][0]["k"] == 8);
    hs_result_free(res);
    hs_weight_free(m1);
}

TEST_CASE("threshold report") {
    hs_weight* bump = load(kCompactBump);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.t_min = -10.0;
    o.t_max = 10.0;
    o.n = 1001;
    hs_result* res = nullptr;
    REQUIRE(hs_threshold(bump, 1.0, 0.1, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "threshold_result");
    CHECK(j["converged"] == true);
    double b_low = j["b_low"].get<double>();
    double b_high = j["b_high"].get<double>();
    CHECK(b_low > 0.0);
    CHECK(b_high / b_low <= 1.1 + 1e-12);
    CHECK(j["lambda_at"].size() >= 2);
    hs_result_free(res);
    hs_weight_free(bump);
}

TEST_CASE("decay report") {
    hs_weight* bump = load(kBumpOverOne);
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.n = 3001;
    double r_hi = std::exp(-7.0);
    double r_lo = r_hi * std::exp(-7.0);
    hs_result* res = nullptr;
    REQUIRE(hs_decay(bump, r_lo, r_hi, r_hi, 0.05, &o, &res) == HS_OK);
    json j = parse_result(res);
    CHECK(j["type"] == "decay_fit");
    CHECK(j["pass"] == true);
    CHECK(j["window"]["r_lo"].get<double>() == r_lo);
    CHECK(j["predicted_band"]["s_lower"].get<double>() > 0.0);
    hs_result_free(res);

    hs_weight* m1 = load(kUnitWeight);
    o.n = 501;
    CHECK(hs_decay(m1, r_lo, r_hi, r_hi, 0.05, &o, &res) == HS_ERR_INVALID);
    CHECK(std::strstr(hs_last_error(), "MinimizerExists") != nullptr);
    hs_weight_free(m1);
    hs_weight_free(bump);
}
