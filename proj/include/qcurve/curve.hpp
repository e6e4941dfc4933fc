#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "qcurve/expr.hpp"
#include "qcurve/jet.hpp"

namespace qcurve {

/// Parametric curve definition: dim component expressions of the parameter s
/// over a closed domain.  Loaded from the tiny expression language or from a
/// curve-spec JSON document.
struct CurveSpec {
    int dim = 3;  // 3 or 4
    std::vector<ExprPtr> components;
    std::vector<std::string> component_text;
    double s_min = 0.0;
    double s_max = 1.0;
    std::string label;
};

/// Builds a spec from expression strings and validates regularity
/// (|alpha'| > 1e-9 on a sampled grid over the domain).
CurveSpec make_curve_spec(int dim, const std::vector<std::string>& components, double s_min,
                          double s_max, std::string label);

/// Uniform evaluation grid in a curve's own parameter.
struct SampleGrid {
    double s_min = 0.0;
    double s_max = 10.0;
    std::size_t count = 512;

    std::vector<double> values() const;
};

/// Sampled monotone reparameterization s -> sbar with derivative values.
struct Correspondence {
    std::vector<double> s;
    std::vector<double> sbar;
    std::vector<double> dphi;  // phi'(s_i) = |alpha'(s_i)|
};

/// A curve that can report truncated Taylor expansions of its components.
/// Components beyond dim() are constant-zero jets.
class JetCurve {
public:
    virtual ~JetCurve() = default;
    virtual int dim() const = 0;
    virtual std::array<Jet, 4> components(double s, std::size_t order) const = 0;
    virtual double domain_min() const = 0;
    virtual double domain_max() const = 0;

    /// Position at s (constant coefficients of the component jets).
    std::array<double, 4> position(double s) const;
    /// Speed |c'(s)|.
    double speed(double s) const;
};

/// JetCurve view of a parsed CurveSpec.
class DslCurve final : public JetCurve {
public:
    explicit DslCurve(CurveSpec spec) : spec_(std::move(spec)) {}

    int dim() const override { return spec_.dim; }
    std::array<Jet, 4> components(double s, std::size_t order) const override;
    double domain_min() const override { return spec_.s_min; }
    double domain_max() const override { return spec_.s_max; }
    const CurveSpec& spec() const { return spec_; }

private:
    CurveSpec spec_;
};

std::shared_ptr<const JetCurve> as_curve(const CurveSpec& spec);

/// Built-in curves: the worked example curves plus parametric helpers
/// circle3(R) and helix3(a,b).  Throws LookupError for unknown names.
CurveSpec catalog(const std::string& name);

/// Names accepted by catalog() (parametric entries listed with placeholders).
std::vector<std::string> catalog_names();

/// Reads {"dim":3|4, "components":[...], "domain":[a,b], "label":...}.
CurveSpec load_curve_spec_json(const std::string& path);
CurveSpec curve_spec_from_json_text(const std::string& text);
std::string curve_spec_to_json_text(const CurveSpec& spec);

}  // namespace qcurve
