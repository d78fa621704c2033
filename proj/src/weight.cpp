#include "hardyspec/weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "hardyspec/common.hpp"

namespace hs {
namespace {

constexpr double kRampWidth = 1.0;
constexpr double kMinPositiveRun = 0.01;

bool finite(double v) { return std::isfinite(v); }

// Reports the sub-intervals of [x0, x1] where the affine value
// v(t) = va + (t - x0) * (vb - va) / (x1 - x0) is strictly positive.
template <typename Fn>
void affine_positive(double x0, double x1, double va, double vb, Fn&& add) {
    if (va > 0.0 && vb > 0.0) {
        add(x0, x1);
    } else if (va > 0.0) {
        double root = x0 + (x1 - x0) * (va / (va - vb));
        add(x0, root);
    } else if (vb > 0.0) {
        double root = x0 + (x1 - x0) * (-va / (vb - va));
        add(root, x1);
    }
}

template <typename Fn>
void positive_intervals(const Segment& s, Fn&& add) {
    switch (s.kind) {
        case SegmentKind::Constant:
            if (s.value > 0.0) add(s.t0, s.t1);
            break;
        case SegmentKind::Affine:
            affine_positive(s.t0, s.t1, s.a + s.b * s.t0, s.a + s.b * s.t1,
                            add);
            break;
        case SegmentKind::Table:
            for (size_t j = 0; j + 1 < s.ts.size(); ++j) {
                affine_positive(s.ts[j], s.ts[j + 1], s.values[j],
                                s.values[j + 1], add);
            }
            break;
    }
}

}  // namespace

double Segment::eval(double t) const {
    switch (kind) {
        case SegmentKind::Constant:
            return value;
        case SegmentKind::Affine:
            return a + b * t;
        case SegmentKind::Table: {
            if (t <= ts.front()) return values.front();
            if (t >= ts.back()) return values.back();
            auto it = std::upper_bound(ts.begin(), ts.end(), t);
            size_t j = static_cast<size_t>(it - ts.begin());
            double x0 = ts[j - 1], x1 = ts[j];
            double f = (t - x0) / (x1 - x0);
            return values[j - 1] * (1.0 - f) + values[j] * f;
        }
    }
    return 0.0;
}

void Segment::extrema_on(double lo, double hi, double& mn, double& mx) const {
    if (!(hi >= lo)) return;
    auto upd = [&](double v) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    };
    switch (kind) {
        case SegmentKind::Constant:
            upd(value);
            break;
        case SegmentKind::Affine:
            upd(a + b * lo);
            upd(a + b * hi);
            break;
        case SegmentKind::Table:
            upd(eval(lo));
            upd(eval(hi));
            for (size_t j = 0; j < ts.size(); ++j) {
                if (ts[j] > lo && ts[j] < hi) upd(values[j]);
            }
            break;
    }
}

WeightProfile WeightProfile::make(std::vector<Segment> segments,
                                  double limit_origin,
                                  double limit_infinity) {
    if (!finite(limit_origin)) {
        fail_invalid("limit_origin must be a finite number");
    }
    if (!finite(limit_infinity)) {
        fail_invalid("limit_infinity must be a finite number");
    }
    if (segments.empty()) fail_invalid("segments must be a nonempty array");

    for (size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        std::string where = "segments[" + std::to_string(i) + "]";
        if (!finite(s.t0) || !finite(s.t1) || !(s.t0 < s.t1)) {
            fail_invalid(where + ": need finite t0 < t1");
        }
        switch (s.kind) {
            case SegmentKind::Constant:
                if (!finite(s.value)) {
                    fail_invalid(where + ".value must be finite");
                }
                break;
            case SegmentKind::Affine:
                if (!finite(s.a) || !finite(s.b)) {
                    fail_invalid(where + ": a and b must be finite");
                }
                break;
            case SegmentKind::Table: {
                if (s.ts.size() < 2 || s.ts.size() != s.values.size()) {
                    fail_invalid(where +
                                 ": ts and values must have equal length "
                                 ">= 2");
                }
                for (double v : s.ts) {
                    if (!finite(v)) fail_invalid(where + ".ts must be finite");
                }
                for (double v : s.values) {
                    if (!finite(v)) {
                        fail_invalid(where + ".values must be finite");
                    }
                }
                for (size_t j = 1; j < s.ts.size(); ++j) {
                    if (!(s.ts[j - 1] < s.ts[j])) {
                        fail_invalid(where + ".ts must be strictly ascending");
                    }
                }
                if (s.ts.front() != s.t0 || s.ts.back() != s.t1) {
                    fail_invalid(where + ".ts must span [t0, t1] exactly");
                }
                break;
            }
        }
        if (i > 0 && segments[i - 1].t1 != s.t0) {
            fail_invalid(where +
                         ".t0 must equal the previous segment's t1 (core "
                         "intervals must tile without gap or overlap)");
        }
    }

    // Ramps are stored as two-knot tables so both endpoints evaluate
    // exactly to the core value and the limit (no a + b*t rounding).
    double v_first = segments.front().eval(segments.front().t0);
    if (v_first != limit_origin) {
        Segment ramp;
        ramp.kind = SegmentKind::Table;
        ramp.t1 = segments.front().t0;
        ramp.t0 = ramp.t1 - kRampWidth;
        ramp.ts = {ramp.t0, ramp.t1};
        ramp.values = {limit_origin, v_first};
        segments.insert(segments.begin(), ramp);
    }
    double v_last = segments.back().eval(segments.back().t1);
    if (v_last != limit_infinity) {
        Segment ramp;
        ramp.kind = SegmentKind::Table;
        ramp.t0 = segments.back().t1;
        ramp.t1 = ramp.t0 + kRampWidth;
        ramp.ts = {ramp.t0, ramp.t1};
        ramp.values = {v_last, limit_infinity};
        segments.push_back(ramp);
    }

    WeightProfile p;
    p.segments_ = std::move(segments);
    p.limit_origin_ = limit_origin;
    p.limit_infinity_ = limit_infinity;
    p.t_lo_ = p.segments_.front().t0;
    p.t_hi_ = p.segments_.back().t1;
    p.finalize();
    return p;
}

void WeightProfile::finalize() {
    double mn = std::min(limit_origin_, limit_infinity_);
    double mx = std::max(limit_origin_, limit_infinity_);
    for (const Segment& s : segments_) s.extrema_on(s.t0, s.t1, mn, mx);
    sup_norm_ = std::max(std::fabs(mn), std::fabs(mx));

    if (limit_origin_ > 0.0 || limit_infinity_ > 0.0) return;
    double best = 0.0;
    double run_start = 0.0, run_end = 0.0;
    bool open = false;
    auto add = [&](double x0, double x1) {
        if (!(x1 > x0)) return;
        if (open && x0 <= run_end) {
            run_end = std::max(run_end, x1);
        } else {
            if (open) best = std::max(best, run_end - run_start);
            run_start = x0;
            run_end = x1;
            open = true;
        }
    };
    for (const Segment& s : segments_) positive_intervals(s, add);
    if (open) best = std::max(best, run_end - run_start);
    if (best < kMinPositiveRun) {
        fail_invalid(
            "weight must be positive on an interval of width >= 0.01 or "
            "have a positive limit (weight is nonpositive everywhere at "
            "resolvable scale)");
    }
}

double WeightProfile::eval(double t) const {
    if (!(t >= t_lo_)) return limit_origin_;
    if (t >= t_hi_) return limit_infinity_;
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double tv, const Segment& s) { return tv < s.t0; });
    return (it - 1)->eval(t);
}

void WeightProfile::global_extrema(double& mn, double& mx) const {
    mn = std::min(limit_origin_, limit_infinity_);
    mx = std::max(limit_origin_, limit_infinity_);
    for (const Segment& s : segments_) s.extrema_on(s.t0, s.t1, mn, mx);
}

BallExtrema WeightProfile::ball_extrema(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) {
        fail_invalid("ball radius must be positive and finite");
    }
    double R = std::log(r);
    double mn = limit_origin_;
    double mx = limit_origin_;
    for (const Segment& s : segments_) {
        if (s.t0 > R) break;
        s.extrema_on(s.t0, std::min(s.t1, R), mn, mx);
    }
    if (R >= t_hi_) {
        mn = std::min(mn, limit_infinity_);
        mx = std::max(mx, limit_infinity_);
    }
    return {r, mn, mx};
}

bool WeightProfile::check_periodic(double gamma, double tol) const {
    if (!(gamma > 1.0) || !std::isfinite(gamma)) {
        fail_invalid("gamma must be finite and > 1");
    }
    if (!(tol >= 0.0)) fail_invalid("periodicity tolerance must be >= 0");
    double L = std::log(gamma);
    double step = L / 10000.0;
    for (double t = t_lo_; t + L < t_hi_; t += step) {
        if (std::fabs(eval(t + L) - eval(t)) > tol) return false;
    }
    return true;
}

WeightProfile constant_profile(double c, double t0, double t1) {
    Segment s;
    s.kind = SegmentKind::Constant;
    s.t0 = t0;
    s.t1 = t1;
    s.value = c;
    return WeightProfile::make({s}, c, c);
}

WeightProfile scale_add(const WeightProfile& m, double scale, double offset) {
    if (!finite(scale) || !finite(offset)) {
        fail_invalid("scale and offset must be finite");
    }
    WeightProfile p;
    p.segments_ = m.segments_;
    for (Segment& s : p.segments_) {
        switch (s.kind) {
            case SegmentKind::Constant:
                s.value = offset + scale * s.value;
                break;
            case SegmentKind::Affine:
                s.a = offset + scale * s.a;
                s.b = scale * s.b;
                break;
            case SegmentKind::Table:
                for (double& v : s.values) v = offset + scale * v;
                break;
        }
    }
    p.limit_origin_ = offset + scale * m.limit_origin_;
    p.limit_infinity_ = offset + scale * m.limit_infinity_;
    p.t_lo_ = m.t_lo_;
    p.t_hi_ = m.t_hi_;
    p.finalize();
    return p;
}

namespace {

double require_number(const nlohmann::json& j, const std::string& path,
                      const char* field) {
    if (!j.contains(field)) {
        fail_invalid(path + ": missing required field \"" + field + "\"");
    }
    const auto& v = j.at(field);
    if (!v.is_number()) {
        fail_invalid(path + "." + field + ": expected a number");
    }
    return v.get<double>();
}

std::vector<double> require_number_array(const nlohmann::json& j,
                                         const std::string& path,
                                         const char* field) {
    if (!j.contains(field)) {
        fail_invalid(path + ": missing required field \"" + field + "\"");
    }
    const auto& v = j.at(field);
    if (!v.is_array()) {
        fail_invalid(path + "." + field + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            fail_invalid(path + "." + field + "[" + std::to_string(i) +
                         "]: expected a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

}  // namespace

WeightProfile weight_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail_invalid(std::string("weight JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) fail_invalid("$: weight spec must be a JSON object");
    if (!doc.contains("segments")) {
        fail_invalid("$: missing required field \"segments\"");
    }
    const auto& segs = doc.at("segments");
    if (!segs.is_array() || segs.empty()) {
        fail_invalid("$.segments: expected a nonempty array");
    }
    double lim0 = require_number(doc, "$", "limit_origin");
    double limi = require_number(doc, "$", "limit_infinity");

    std::vector<Segment> out;
    out.reserve(segs.size());
    for (size_t i = 0; i < segs.size(); ++i) {
        std::string path = "$.segments[" + std::to_string(i) + "]";
        const auto& js = segs[i];
        if (!js.is_object()) fail_invalid(path + ": expected an object");
        Segment s;
        s.t0 = require_number(js, path, "t0");
        s.t1 = require_number(js, path, "t1");
        if (!js.contains("kind")) {
            fail_invalid(path + ": missing required field \"kind\"");
        }
        if (!js.at("kind").is_string()) {
            fail_invalid(path + ".kind: expected a string");
        }
        std::string kind = js.at("kind").get<std::string>();
        if (kind == "constant") {
            s.kind = SegmentKind::Constant;
            s.value = require_number(js, path, "value");
        } else if (kind == "affine") {
            s.kind = SegmentKind::Affine;
            s.a = require_number(js, path, "a");
            s.b = require_number(js, path, "b");
        } else if (kind == "table") {
            s.kind = SegmentKind::Table;
            s.ts = require_number_array(js, path, "ts");
            s.values = require_number_array(js, path, "values");
        } else {
            fail_invalid(path + ".kind: unknown kind \"" + kind +
                         "\" (expected \"constant\", \"affine\", or "
                         "\"table\")");
        }
        out.push_back(std::move(s));
    }
    return WeightProfile::make(std::move(out), lim0, limi);
}

WeightProfile weight_from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_invalid("cannot open weight file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return weight_from_json_text(ss.str());
}

}  // namespace hs
