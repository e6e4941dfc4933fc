#include "qcurve/curve.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_regular(const CurveSpec& spec) {
    // Load-time regularity gate on a fixed sampling of the domain.
    constexpr std::size_t kProbes = 256;
    DslCurve curve(spec);
    for (std::size_t i = 0; i < kProbes; ++i) {
        const double s =
            spec.s_min + (spec.s_max - spec.s_min) * static_cast<double>(i) / (kProbes - 1);
        if (curve.speed(s) <= 1e-9)
            throw PreconditionError("curve '" + spec.label + "' is not regular at s=" + fmt17(s));
    }
}

}  // namespace

CurveSpec make_curve_spec(int dim, const std::vector<std::string>& components, double s_min,
                          double s_max, std::string label) {
    if (dim != 3 && dim != 4) throw InputError("curve dimension must be 3 or 4");
    if (components.size() != static_cast<std::size_t>(dim))
        throw InputError("expected " + std::to_string(dim) + " component expressions");
    if (!(s_min < s_max)) throw InputError("curve domain must satisfy s_min < s_max");
    CurveSpec spec;
    spec.dim = dim;
    spec.s_min = s_min;
    spec.s_max = s_max;
    spec.label = std::move(label);
    spec.component_text = components;
    for (const auto& text : components) spec.components.push_back(parse(text));
    check_regular(spec);
    return spec;
}

std::vector<double> SampleGrid::values() const {
    if (count < 2) throw PreconditionError("sample grid needs at least 2 points");
    if (!(s_min < s_max)) throw PreconditionError("sample grid needs s_min < s_max");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

std::array<double, 4> JetCurve::position(double s) const {
    const auto comps = components(s, 1);
    return {comps[0].value(), comps[1].value(), comps[2].value(), comps[3].value()};
}

double JetCurve::speed(double s) const {
    const auto comps = components(s, 1);
    double sum = 0.0;
    for (int i = 0; i < dim(); ++i) {
        const double d = comps[i][1];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::array<Jet, 4> DslCurve::components(double s, std::size_t order) const {
    std::array<Jet, 4> out = {Jet(order), Jet(order), Jet(order), Jet(order)};
    const Jet seed = Jet::variable(s, order);
    for (int i = 0; i < spec_.dim; ++i) out[i] = eval(*spec_.components[i], seed);
    return out;
}

std::shared_ptr<const JetCurve> as_curve(const CurveSpec& spec) {
    return std::make_shared<DslCurve>(spec);
}

namespace {

struct CatalogCall {
    std::string name;
    std::vector<double> args;
};

CatalogCall parse_catalog_name(const std::string& raw) {
    CatalogCall call;
    const auto open = raw.find('(');
    if (open == std::string::npos) {
        call.name = raw;
        return call;
    }
    if (raw.back() != ')') throw LookupError("malformed catalog name '" + raw + "'");
    call.name = raw.substr(0, open);
    std::string args = raw.substr(open + 1, raw.size() - open - 2);
    std::stringstream ss(args);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            call.args.push_back(std::stod(piece));
        } catch (const std::exception&) {
            throw LookupError("malformed catalog argument '" + piece + "'");
        }
    }
    return call;
}

}  // namespace

CurveSpec catalog(const std::string& raw_name) {
    const CatalogCall call = parse_catalog_name(raw_name);
    const std::string& name = call.name;

    if (name == "ex1-e4") {
        return make_curve_spec(4,
                               {"cos(s/sqrt(3))", "sin(s/sqrt(3))", "s/sqrt(3)", "s/sqrt(3)"}, 0.0,
                               10.0, "ex1-e4");
    }
    if (name == "ex1-e4-mate") {
        // The running parameter is this curve's own arc length (sbar = sqrt(2) s
        // relative to ex1-e4).
        return make_curve_spec(
            4, {"2*cos(s/sqrt(6))", "2*sin(s/sqrt(6))", "s/sqrt(6)", "s/sqrt(6)"}, 0.0, 15.0,
            "ex1-e4-mate");
    }
    if (name == "ex1-e3") {
        return make_curve_spec(3,
                               {"s/sqrt(3)", "sin(s/sqrt(3))+cos(s/sqrt(3))",
                                "sin(s/sqrt(3))-cos(s/sqrt(3))"},
                               0.0, 10.0, "ex1-e3");
    }
    if (name == "ex1-e3-mate") {
        return make_curve_spec(3,
                               {"s/sqrt(3)", "-sin(s/sqrt(3))-cos(s/sqrt(3))",
                                "-sin(s/sqrt(3))+cos(s/sqrt(3))"},
                               0.0, 10.0, "ex1-e3-mate");
    }
    if (name == "ex2-e4") {
        return make_curve_spec(
            4, {"cos(2*s/sqrt(5))", "sin(2*s/sqrt(5))", "cos(s/sqrt(5))", "sin(s/sqrt(5))"}, 0.0,
            10.0, "ex2-e4");
    }
    if (name == "ex2-e4-mate") {
        // Own arc length; sbar = 16*sqrt(2) s relative to ex2-e4.
        return make_curve_spec(4,
                               {"-24*cos(2*s/(16*sqrt(10)))", "-24*sin(2*s/(16*sqrt(10)))",
                                "16*cos(s/(16*sqrt(10)))", "16*sin(s/(16*sqrt(10)))"},
                               0.0, 230.0, "ex2-e4-mate");
    }
    if (name == "ex2-e3") {
        // Spatial curve associated with ex2-e4: unit-speed circular helix with
        // curvature 6/(5*sqrt(17)) and torsion 27/(5*sqrt(17)).
        return make_curve_spec(3,
                               {"9*s/sqrt(85)", "2*cos(3*s/sqrt(5))/(3*sqrt(17))",
                                "2*sin(3*s/sqrt(5))/(3*sqrt(17))"},
                               0.0, 10.0, "ex2-e3");
    }
    if (name == "ex2-e3-mate") {
        return make_curve_spec(3,
                               {"19*s/sqrt(370)", "-16*cos(3*s/(16*sqrt(10)))/sqrt(37)",
                                "-16*sin(3*s/(16*sqrt(10)))/sqrt(37)"},
                               0.0, 230.0, "ex2-e3-mate");
    }
    if (name == "circle3") {
        if (call.args.size() != 1 || call.args[0] <= 0.0)
            throw LookupError("circle3 expects one positive radius argument, e.g. circle3(2)");
        const std::string R = fmt17(call.args[0]);
        return make_curve_spec(
            3, {R + "*cos(s/" + R + ")", R + "*sin(s/" + R + ")", "0"}, 0.0,
            2.0 * M_PI * call.args[0], "circle3(" + R + ")");
    }
    if (name == "helix3") {
        if (call.args.size() != 2 || call.args[0] <= 0.0)
            throw LookupError("helix3 expects arguments (a, b) with a > 0, e.g. helix3(2,1)");
        const double a = call.args[0], b = call.args[1];
        const double c = std::sqrt(a * a + b * b);
        const std::string A = fmt17(a), B = fmt17(b), C = fmt17(c);
        return make_curve_spec(3,
                               {A + "*cos(s/" + C + ")", A + "*sin(s/" + C + ")",
                                B + "*s/" + C},
                               0.0, 4.0 * M_PI * c, "helix3(" + A + "," + B + ")");
    }
    throw LookupError("unknown catalog curve '" + raw_name + "'");
}

std::vector<std::string> catalog_names() {
    return {"ex1-e4", "ex1-e4-mate", "ex1-e3", "ex1-e3-mate", "ex2-e4", "ex2-e4-mate",
            "ex2-e3", "ex2-e3-mate", "circle3(R)", "helix3(a,b)"};
}

CurveSpec curve_spec_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid curve-spec JSON: ") + e.what());
    }
    try {
        const int dim = j.at("dim").get<int>();
        std::vector<std::string> comps = j.at("components").get<std::vector<std::string>>();
        const auto domain = j.at("domain");
        if (!domain.is_array() || domain.size() != 2)
            throw InputError("curve-spec domain must be [s_min, s_max]");
        const std::string label = j.value("label", std::string("curve"));
        return make_curve_spec(dim, comps, domain[0].get<double>(), domain[1].get<double>(),
                               label);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid curve-spec JSON: ") + e.what());
    }
}

CurveSpec load_curve_spec_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open curve spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return curve_spec_from_json_text(ss.str());
}

std::string curve_spec_to_json_text(const CurveSpec& spec) {
    nlohmann::json j;
    j["dim"] = spec.dim;
    j["components"] = spec.component_text;
    j["domain"] = {spec.s_min, spec.s_max};
    j["label"] = spec.label;
    return j.dump(2);
}

}  // namespace qcurve
