#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hardyspec/periodic.hpp"
#include "hardyspec/perturb.hpp"
#include "hardyspec/spectra.hpp"

namespace hs {

// Non-finite reals have no JSON literal; they serialize as the strings
// "inf" / "-inf".  NaN is never emitted: results containing NaN are bugs.
nlohmann::json json_number(double v);

// Deterministic rendering: sorted keys (nlohmann object order), two-space
// indent, shortest round-trip doubles, trailing newline.
std::string dump_json(const nlohmann::json& j);

struct Provenance {
    std::string version;
    double tol = 0.0;
    long max_iter = 0;
    bool has_grid = false;
    LogGrid grid;
    std::vector<std::pair<std::string, int>> iterations;
};

nlohmann::json provenance_json(const Provenance& p);

nlohmann::json spectral_json(const SpectralReport& r, bool include_psi,
                             const Provenance& prov);
nlohmann::json periodic_json(const PeriodicState& s, const Provenance& prov);
nlohmann::json nullseq_json(const PeriodicState& s,
                            const std::vector<std::pair<long, double>>& pts,
                            const Provenance& prov);
nlohmann::json sigma_json(const std::vector<SigmaPoint>& pts, int N,
                          const Provenance& prov);
std::string sigma_csv(const std::vector<SigmaPoint>& pts);
nlohmann::json threshold_json(const ThresholdResult& r,
                              const Provenance& prov);
nlohmann::json ballbound_json(const BallBoundReport& r,
                              const Provenance& prov);
nlohmann::json decay_json(const DecayFit& f, int N, const Provenance& prov);
nlohmann::json oracle_json(int N, double lambda_principal,
                           double lambda_oracle, const Provenance& prov);

}  // namespace hs
