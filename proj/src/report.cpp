#include "hardyspec/report.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "hardyspec/common.hpp"

namespace hs {

nlohmann::json json_number(double v) {
    if (std::isnan(v)) fail_internal("NaN reached the report serializer");
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json grid_json(const LogGrid& g) {
    return {{"t_min", g.t_min},
            {"t_max", g.t_max},
            {"n", g.n},
            {"h", g.h()}};
}

}  // namespace

nlohmann::json provenance_json(const Provenance& p) {
    nlohmann::json j;
    j["version"] = p.version;
    j["tol"] = p.tol;
    j["max_iter"] = p.max_iter;
    if (p.has_grid) j["grid"] = grid_json(p.grid);
    nlohmann::json iters = nlohmann::json::object();
    for (const auto& kv : p.iterations) iters[kv.first] = kv.second;
    j["iterations"] = iters;
    return j;
}

nlohmann::json spectral_json(const SpectralReport& r, bool include_psi,
                             const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "spectral_report";
    j["N"] = r.N;
    nlohmann::json sectors = nlohmann::json::object();
    for (const auto& s : r.sectors) {
        sectors[std::to_string(s.l)] = json_number(s.lambda);
    }
    j["sector_values"] = sectors;
    j["lambda_m"] = json_number(r.lambda_m);
    j["lambda_plus"] = json_number(r.lambda_plus);
    j["lambda_minus"] = json_number(r.lambda_minus);
    j["lambda_star"] = json_number(r.lambda_star);
    j["gap"] = json_number(r.gap);
    j["classification"] = classification_name(r.classification);
    j["classification_tol"] = r.classification_tol;
    j["winning_sector"] = r.winning_l;
    j["grid"] = grid_json(r.grid);
    if (include_psi) {
        nlohmann::json psi = nlohmann::json::array();
        for (double v : r.psi) psi.push_back(json_number(v));
        j["psi"] = psi;
    }
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json periodic_json(const PeriodicState& s, const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "periodic_ground_state";
    j["N"] = s.N;
    j["gamma"] = s.gamma;
    j["lambda_circ"] = json_number(s.lambda_circ);
    j["sandwich_c"] = json_number(s.sandwich_c);
    nlohmann::json psi = nlohmann::json::array();
    for (double v : s.psi) psi.push_back(json_number(v));
    j["psi"] = psi;
    double L = std::log(s.gamma);
    j["cell"] = {{"n", s.n_cell},
                 {"h", L / s.n_cell},
                 {"t_lo", 0.0},
                 {"t_hi", L}};
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json nullseq_json(const PeriodicState& s,
                            const std::vector<std::pair<long, double>>& pts,
                            const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "null_sequence_decay";
    j["N"] = s.N;
    j["gamma"] = s.gamma;
    j["lambda_circ"] = json_number(s.lambda_circ);
    j["sandwich_c"] = json_number(s.sandwich_c);
    nlohmann::json points = nlohmann::json::array();
    for (const auto& kv : pts) {
        points.push_back({{"k", kv.first},
                          {"q", json_number(kv.second)},
                          {"kq", json_number(kv.first * kv.second)}});
    }
    j["points"] = points;
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json sigma_json(const std::vector<SigmaPoint>& pts, int N,
                          const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "sigma_curve";
    j["N"] = N;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : pts) {
        points.push_back({{"lambda", json_number(p.lambda)},
                          {"sigma", json_number(p.sigma)},
                          {"feasible", p.feasible}});
    }
    j["points"] = points;
    j["provenance"] = provenance_json(prov);
    return j;
}

std::string sigma_csv(const std::vector<SigmaPoint>& pts) {
    std::string out = "lambda,sigma,feasible\n";
    for (const auto& p : pts) {
        out += format_double(p.lambda);
        out += ',';
        out += format_double(p.sigma);
        out += ',';
        out += p.feasible ? "true" : "false";
        out += '\n';
    }
    return out;
}

nlohmann::json threshold_json(const ThresholdResult& r,
                              const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "threshold_result";
    j["N"] = r.N;
    j["a_level"] = r.a_level;
    j["lambda_circ"] = json_number(r.lambda_circ);
    j["gap_tol"] = r.gap_tol;
    j["bracket_tol"] = r.bracket_tol;
    j["b_low"] = json_number(r.b_low);
    j["b_high"] = json_number(r.b_high);
    j["converged"] = r.converged;
    nlohmann::json at = nlohmann::json::array();
    for (const auto& kv : r.lambda_at) {
        at.push_back({{"b", json_number(kv.first)},
                      {"lambda1", json_number(kv.second)}});
    }
    j["lambda_at"] = at;
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json ballbound_json(const BallBoundReport& r,
                              const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "ball_bound_report";
    j["N"] = r.N;
    j["r"] = r.r;
    j["d"] = r.d;
    j["m_origin"] = r.m_origin;
    j["m_infinity"] = r.m_infinity;
    j["m_peak"] = r.m_peak;
    j["criterion_rhs"] = json_number(r.criterion_rhs);
    j["criterion_holds"] = r.criterion_holds;
    j["apriori_bound"] = json_number(r.apriori_bound);
    j["sharp_bound"] = json_number(r.sharp_bound);
    j["use_sharp"] = r.use_sharp;
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json decay_json(const DecayFit& f, int N, const Provenance& prov) {
    nlohmann::json j;
    j["type"] = "decay_fit";
    j["N"] = N;
    j["window"] = {{"r_lo", json_number(f.r_lo)},
                   {"r_hi", json_number(f.r_hi)}};
    j["fitted_s"] = json_number(f.fitted_s);
    j["predicted_band"] = {{"s_lower", json_number(f.s_lower)},
                           {"s_upper", json_number(f.s_upper)}};
    j["band_margin"] = f.band_margin;
    j["band_r"] = json_number(f.band_r);
    j["lambda_m"] = json_number(f.lambda_m);
    j["pass"] = f.pass;
    j["provenance"] = provenance_json(prov);
    return j;
}

nlohmann::json oracle_json(int N, double lambda_principal,
                           double lambda_oracle, const Provenance& prov) {
    double rel = std::fabs(lambda_principal - lambda_oracle) /
                 std::fabs(lambda_oracle);
    nlohmann::json j;
    j["type"] = "oracle_check";
    j["N"] = N;
    j["lambda_principal"] = json_number(lambda_principal);
    j["lambda_oracle"] = json_number(lambda_oracle);
    j["rel_diff"] = json_number(rel);
    j["agree"] = rel <= 1e-9;
    j["provenance"] = provenance_json(prov);
    return j;
}

}  // namespace hs
