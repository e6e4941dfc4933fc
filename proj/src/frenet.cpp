#include "qcurve/frenet.hpp"

#include <cmath>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

using JVec = std::array<Jet, 4>;

JVec make_jvec(std::size_t order) {
    return {Jet(order), Jet(order), Jet(order), Jet(order)};
}

JVec derived(const JVec& x) {
    return {x[0].derived(), x[1].derived(), x[2].derived(), x[3].derived()};
}

JVec scale(const JVec& x, const Jet& a) { return {x[0] * a, x[1] * a, x[2] * a, x[3] * a}; }

JVec divide(const JVec& x, const Jet& a) { return {x[0] / a, x[1] / a, x[2] / a, x[3] / a}; }

JVec add(const JVec& x, const JVec& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

Jet dot(const JVec& x, const JVec& y, int dim) {
    Jet s = x[0] * y[0];
    for (int i = 1; i < dim; ++i) s = s + x[i] * y[i];
    return s;
}

Quaternion value_of(const JVec& x) {
    return {x[0].value(), x[1].value(), x[2].value(), x[3].value()};
}

Jet det3(const Jet& a, const Jet& b, const Jet& c,  //
         const Jet& d, const Jet& e, const Jet& f,  //
         const Jet& g, const Jet& h, const Jet& i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

/// Vector y with h(y, w) = det[w; u; v; x] for all w (cofactor expansion of
/// the first row).
JVec cross4(const JVec& u, const JVec& v, const JVec& x) {
    JVec r = make_jvec(u[0].order());
    r[0] = det3(u[1], u[2], u[3], v[1], v[2], v[3], x[1], x[2], x[3]);
    r[1] = -det3(u[0], u[2], u[3], v[0], v[2], v[3], x[0], x[2], x[3]);
    r[2] = det3(u[0], u[1], u[3], v[0], v[1], v[3], x[0], x[1], x[3]);
    r[3] = -det3(u[0], u[1], u[2], v[0], v[1], v[2], x[0], x[1], x[2]);
    return r;
}

JVec cross3(const JVec& u, const JVec& v) {
    JVec r = make_jvec(u[0].order());
    r[0] = u[1] * v[2] - u[2] * v[1];
    r[1] = u[2] * v[0] - u[0] * v[2];
    r[2] = u[0] * v[1] - u[1] * v[0];
    r[3] = Jet(u[0].order());
    return r;
}

Jet norm_checked(const JVec& x, int dim, const char* what) {
    Jet n2 = dot(x, x, dim);
    if (n2.value() <= kTolCurvature * kTolCurvature)
        throw DegenerateFrameError(std::string(what) + " vanishes: frame undefined");
    return sqrt(n2);
}

void check_unit_speed(double v, double s) {
    if (std::abs(v - 1.0) > kTolUnitSpeed)
        throw NotUnitSpeedError("curve is not arc-length parameterized at s=" +
                                std::to_string(s) + " (speed " + std::to_string(v) + ")");
}

}  // namespace

FrameSample3 FrameJets3::sample() const {
    FrameSample3 f;
    f.s = s;
    f.t = value_of(t);
    f.n = value_of(n);
    f.b = value_of(b);
    f.k = k.value();
    f.r = r.value();
    return f;
}

FrameSample4 FrameJets4::sample() const {
    FrameSample4 f;
    f.s = s;
    f.T = value_of(T);
    f.N = value_of(N);
    f.B1 = value_of(B1);
    f.B2 = value_of(B2);
    f.K = K.value();
    f.k = k.value();
    f.bitorsion = bitorsion.value();
    return f;
}

FrameJets3 frame_jets3(const JetCurve& curve, double s, std::size_t order) {
    if (curve.dim() != 3) throw PreconditionError("frame_jets3 requires a 3-dimensional curve");
    const JVec comps = curve.components(s, order);
    const JVec d1 = derived(comps);

    FrameJets3 fj;
    fj.s = s;
    Jet v2 = dot(d1, d1, 3);
    if (v2.value() <= 1e-18) throw PreconditionError("curve is singular (|alpha'| ~ 0)");
    fj.v = sqrt(v2);
    fj.t = divide(d1, fj.v);

    // dt/dsigma = t'(s)/v; its norm is the principal curvature.
    const JVec dt_dsigma = divide(derived(fj.t), fj.v);
    fj.k = norm_checked(dt_dsigma, 3, "principal curvature");
    fj.n = divide(dt_dsigma, fj.k);

    fj.b = cross3(fj.t, fj.n);
    // dn/dsigma = -k t + r b.
    const JVec dn_dsigma = divide(derived(fj.n), fj.v);
    fj.r = dot(dn_dsigma, fj.b, 3);
    return fj;
}

FrameJets4 frame_jets4(const JetCurve& curve, double s, std::size_t order) {
    if (curve.dim() != 4) throw PreconditionError("frame_jets4 requires a 4-dimensional curve");
    const JVec comps = curve.components(s, order);
    const JVec d1 = derived(comps);

    FrameJets4 fj;
    fj.s = s;
    Jet v2 = dot(d1, d1, 4);
    if (v2.value() <= 1e-18) throw PreconditionError("curve is singular (|alpha'| ~ 0)");
    fj.v = sqrt(v2);
    fj.T = divide(d1, fj.v);

    const JVec dT_dsigma = divide(derived(fj.T), fj.v);
    fj.K = norm_checked(dT_dsigma, 4, "principal curvature");
    fj.N = divide(dT_dsigma, fj.K);

    // dN/dsigma + K T = k B1.
    const JVec w = add(divide(derived(fj.N), fj.v), scale(fj.T, fj.K));
    fj.k = norm_checked(w, 4, "torsion");
    fj.B1 = divide(w, fj.k);

    // Oriented complement: det[T N B1 B2] = +1.
    JVec b2 = cross4(fj.T, fj.N, fj.B1);
    for (auto& comp : b2) comp = -comp;
    fj.B2 = divide(b2, sqrt(dot(b2, b2, 4)));

    // dB1/dsigma = -k N + (r - K) B2.
    const JVec dB1_dsigma = divide(derived(fj.B1), fj.v);
    fj.bitorsion = dot(dB1_dsigma, fj.B2, 4);

    fj.d4 = {comps[0].derivative(4), comps[1].derivative(4), comps[2].derivative(4),
             comps[3].derivative(4)};
    return fj;
}

FrameSample3 frenet3(const JetCurve& curve, double s) {
    FrameJets3 fj = frame_jets3(curve, s);
    check_unit_speed(fj.v.value(), s);
    return fj.sample();
}

FrameSample4 frenet4(const JetCurve& curve, double s) {
    FrameJets4 fj = frame_jets4(curve, s);
    check_unit_speed(fj.v.value(), s);
    return fj.sample();
}

std::vector<std::array<double, 4>> derivatives(const JetCurve& curve, double s,
                                               std::size_t upto) {
    const std::size_t order = std::max<std::size_t>(upto, Jet::kDefaultOrder);
    const auto comps = curve.components(s, order);
    std::vector<std::array<double, 4>> out(upto + 1);
    for (int i = 0; i < 4; ++i) {
        const auto d = comps[i].derivatives(upto);
        for (std::size_t m = 0; m <= upto; ++m) out[m][i] = d[m];
    }
    return out;
}

namespace {

// Gauss-Kronrod 7-15 nodes (positive half) and weights.
constexpr double kXgk[8] = {0.9914553711208126392068547, 0.9491079123427585245261897,
                            0.8648644233597690727897128, 0.7415311855993944398638648,
                            0.5860872354676911302941448, 0.4058451513773971669066064,
                            0.2077849550078984676006894, 0.0};
constexpr double kWgk[8] = {0.0229353220105292249637320, 0.0630920926299785532907007,
                            0.1047900103222501838398763, 0.1406532597155259187451896,
                            0.1690047266392679028265834, 0.1903505780647854099132564,
                            0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double kWg[4] = {0.1294849661688696932706114, 0.2797053914892766679014678,
                           0.3818300505051189449503698, 0.4179591836734693877551020};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double result_g = 0.0, result_k = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        const double fsum = (i == 7) ? f1 : f1 + f2;
        result_k += kWgk[i] * fsum;
        if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
    }
    result_k *= h;
    result_g *= h;
    return {result_k, std::abs(result_k - result_g)};
}

template <class F>
double adaptive_quad(const F& f, double a, double b, double tol, int depth = 0) {
    const auto [value, err] = gk15(f, a, b);
    if (err <= tol || depth >= 48) return value;
    const double m = 0.5 * (a + b);
    return adaptive_quad(f, a, m, 0.5 * tol, depth + 1) +
           adaptive_quad(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

double arclength(const JetCurve& curve, double s0, double s1, double abs_tol) {
    const double sign = (s1 >= s0) ? 1.0 : -1.0;
    const double a = std::min(s0, s1), b = std::max(s0, s1);
    if (a == b) return 0.0;
    const auto speed = [&curve](double s) { return curve.speed(s); };
    return sign * adaptive_quad(speed, a, b, abs_tol);
}

Correspondence reparameterize(const JetCurve& curve, const SampleGrid& grid) {
    Correspondence corr;
    corr.s = grid.values();
    corr.sbar.resize(corr.s.size());
    corr.dphi.resize(corr.s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < corr.s.size(); ++i) {
        if (i > 0) acc += arclength(curve, corr.s[i - 1], corr.s[i], 1e-13);
        corr.sbar[i] = acc;
        corr.dphi[i] = curve.speed(corr.s[i]);
        if (!(corr.dphi[i] > 0.0))
            throw PreconditionError("reparameterize: curve not regular at s=" +
                                    std::to_string(corr.s[i]));
    }
    return corr;
}

UnitSpeedView::UnitSpeedView(std::shared_ptr<const JetCurve> base) : base_(std::move(base)) {
    length_ = arclength(*base_, base_->domain_min(), base_->domain_max(), 1e-12);
}

double UnitSpeedView::parameter_at(double sigma) const {
    double lo = base_->domain_min(), hi = base_->domain_max();
    if (sigma <= 0.0) return lo;
    if (sigma >= length_) return hi;
    // Newton on phi(t) - sigma with bisection fallback; phi is monotone.
    double t = lo + (hi - lo) * (sigma / length_);
    double phi = arclength(*base_, lo, t, 1e-13);
    for (int iter = 0; iter < 64; ++iter) {
        const double defect = phi - sigma;
        if (std::abs(defect) <= 1e-13 * (1.0 + std::abs(sigma))) break;
        if (defect > 0)
            hi = t;
        else
            lo = t;
        const double v = base_->speed(t);
        double next = t - defect / v;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        phi += arclength(*base_, t, next, 1e-14);
        t = next;
    }
    return t;
}

std::array<Jet, 4> UnitSpeedView::components(double sigma, std::size_t order) const {
    const double t0 = parameter_at(sigma);
    const auto comps = base_->components(t0, order + 1);

    // Arc-length series phi(t) about t0: phi' = |c'(t)|.
    JVec d1 = derived(comps);
    Jet v = sqrt(dot(d1, d1, base_->dim()));
    Jet phi(order + 1);
    phi[0] = sigma;
    for (std::size_t m = 0; m + 1 <= order + 1; ++m)
        phi[m + 1] = v[m] / static_cast<double>(m + 1);

    const Jet t_of_sigma = invert_series(phi, t0);
    std::array<Jet, 4> out = make_jvec(order);
    for (int i = 0; i < base_->dim(); ++i)
        out[i] = compose(comps[i], t_of_sigma).truncated(order);
    return out;
}

std::array<Jet, 4> OffsetCurve3::components(double s, std::size_t order) const {
    // n carries base_order - 2 trusted terms.
    const FrameJets3 fj = frame_jets3(*base_, s, order + 2);
    const auto base = base_->components(s, order + 2);
    std::array<Jet, 4> out = make_jvec(order);
    for (int i = 0; i < 3; ++i)
        out[i] = (base[i] + fj.n[i] * offset_n_).truncated(order);
    return out;
}

std::array<Jet, 4> OffsetCurve4::components(double s, std::size_t order) const {
    // N needs 2 extra orders, B2 needs 3.
    const std::size_t extra = (offset_b2_ != 0.0) ? 3 : 2;
    const FrameJets4 fj = frame_jets4(*base_, s, order + extra);
    const auto base = base_->components(s, order + extra);
    std::array<Jet, 4> out = make_jvec(order);
    for (int i = 0; i < 4; ++i) {
        Jet c = base[i] + fj.N[i] * offset_n_;
        if (offset_b2_ != 0.0) c = c + fj.B2[i] * offset_b2_;
        out[i] = c.truncated(order);
    }
    return out;
}

AssociationReport verify_association(const JetCurve& curve4, const JetCurve& curve3,
                                     const SampleGrid& grid, double tol) {
    AssociationReport rep;
    rep.tol = tol;
    for (double s : grid.values()) {
        const FrameSample4 f4 = frenet4(curve4, s);
        const FrameSample3 f3 = frenet3(curve3, s);
        rep.max_torsion_defect = std::max(rep.max_torsion_defect, std::abs(f4.k - f3.k));
        rep.max_bitorsion_defect = std::max(
            rep.max_bitorsion_defect, std::abs(std::abs(f4.bitorsion) - std::abs(f3.r - f4.K)));
    }
    rep.pass = rep.max_torsion_defect <= tol && rep.max_bitorsion_defect <= tol;
    return rep;
}

double hyperplane_residual(const FrameJets4& fj) {
    const Quaternion d4 = fj.d4;
    const Quaternion T = value_of(fj.T), N = value_of(fj.N), B1 = value_of(fj.B1);
    const Quaternion res =
        d4 - T * hform(d4, T) - N * hform(d4, N) - B1 * hform(d4, B1);
    return norm(res);
}

}  // namespace qcurve
