#pragma once

#include <string>
#include <vector>

namespace hs {

// Radial weight m(x) = m(|x|), described in the logarithmic variable
// t = log r by a piecewise profile on a finite core range plus constant
// limits toward the origin (t -> -inf) and infinity (t -> +inf).
//
// Segments partition the core into half-open intervals [t0, t1); the
// profile is right-continuous at interior breakpoints.  When a core
// boundary value differs from the adjacent limit, a connecting affine
// ramp of width 1 is materialized at construction, so eval() is the
// final, self-contained description of the weight.

enum class SegmentKind { Constant, Affine, Table };

struct Segment {
    double t0 = 0.0;
    double t1 = 0.0;
    SegmentKind kind = SegmentKind::Constant;
    // Constant: value.  Affine: a + b*t.  Table: piecewise-linear through
    // (ts[i], values[i]) with ts ascending and spanning [t0, t1].
    double value = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> ts;
    std::vector<double> values;

    double eval(double t) const;
    // Min/max of the segment restricted to [lo, hi] (callers clip first).
    void extrema_on(double lo, double hi, double& mn, double& mx) const;
};

struct BallExtrema {
    double r = 0.0;
    double m_lower = 0.0;  // inf of m over the punctured ball 0 < |x| <= r
    double m_upper = 0.0;  // sup of m over the same set
};

class WeightProfile {
public:
    // Builds a profile, validating segments and materializing boundary
    // ramps.  Throws HsError(InvalidInput) on malformed input or when the
    // weight has no positive part of usable width.
    static WeightProfile make(std::vector<Segment> segments,
                              double limit_origin, double limit_infinity);

    double eval(double t) const;
    double limit_origin() const { return limit_origin_; }
    double limit_infinity() const { return limit_infinity_; }
    double sup_norm() const { return sup_norm_; }
    // Extended core range, ramps included.
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    const std::vector<Segment>& segments() const { return segments_; }

    // Global extrema over all of (0, inf), limits included.
    void global_extrema(double& mn, double& mx) const;

    // Extrema over the punctured ball of radius r (r > 0, finite).
    BallExtrema ball_extrema(double r) const;

    // Samples pairs (t, t + log(gamma)) at 1e4 points per period over the
    // extended core, restricted to pairs that both land inside it.  True
    // when every sampled pair agrees within tol (vacuously true when the
    // core does not exceed one period).
    bool check_periodic(double gamma, double tol) const;

private:
    WeightProfile() = default;
    void finalize();  // computes sup_norm_ and positivity certificate

    std::vector<Segment> segments_;
    double limit_origin_ = 0.0;
    double limit_infinity_ = 0.0;
    double t_lo_ = 0.0;
    double t_hi_ = 0.0;
    double sup_norm_ = 0.0;

    friend WeightProfile scale_add(const WeightProfile&, double, double);
};

// Constant weight c on a trivial core [t0, t1] with matching limits.
WeightProfile constant_profile(double c, double t0 = -1.0, double t1 = 1.0);

// offset + scale * m, applied to segments and limits alike.  No new ramps
// are introduced: an affine map preserves continuity at the core ends.
WeightProfile scale_add(const WeightProfile& m, double scale, double offset);

// Parses the JSON description {"segments": [...], "limit_origin": ...,
// "limit_infinity": ...}.  Error messages name the offending field.
WeightProfile weight_from_json_text(const std::string& text);
WeightProfile weight_from_json_file(const std::string& path);

}  // namespace hs
