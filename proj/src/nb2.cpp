#include "qcurve/nb2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

struct CurvatureGrid {
    std::vector<double> s, K, k, bit;
    double K_mid = 0, k_mid = 0, bit_mid = 0;
};

CurvatureGrid sample_curvatures(const JetCurve& curve4, const SampleGrid& grid) {
    CurvatureGrid g;
    for (double s : grid.values()) {
        const FrameSample4 f = frenet4(curve4, s);
        g.s.push_back(s);
        g.K.push_back(f.K);
        g.k.push_back(f.k);
        g.bit.push_back(f.bitorsion);
    }
    auto mid = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return 0.5 * (*lo + *hi);
    };
    g.K_mid = mid(g.K);
    g.k_mid = mid(g.k);
    g.bit_mid = mid(g.bit);
    return g;
}

bool nearly_constant(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return (*hi - *lo) <= 1e-10 * (1.0 + std::max(std::abs(*lo), std::abs(*hi)));
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

/// Smallest singular value of [[p, q], [r, t]].
double sigma_min2(double p, double q, double r, double t) {
    const double gaa = p * p + r * r;
    const double gab = p * q + r * t;
    const double gbb = q * q + t * t;
    const double tr = gaa + gbb;
    const double det = gaa * gbb - gab * gab;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    return std::sqrt(std::max(0.0, 0.5 * tr - disc));
}

}  // namespace

NB2Certificate fit_certificate(const JetCurve& curve4, const SampleGrid& grid,
                               std::optional<std::pair<NB2Pin, double>> pin, double tol) {
    NB2Certificate cert;
    cert.tol = tol;
    const CurvatureGrid g = sample_curvatures(curve4, grid);
    const std::size_t n = g.s.size();

    for (double b : g.bit)
        if (std::abs(b) <= 1e-8)
            throw PreconditionError(
                "bitorsion too small for the (N-B2) machinery; use the classical "
                "Bertrand relation instead");

    // Stage one: gamma K - k = delta (r-K), linear in (gamma, delta).
    const bool constant_curvatures =
        nearly_constant(g.K) && nearly_constant(g.k) && nearly_constant(g.bit);
    if (constant_curvatures) {
        // One independent equation: close the family with the balanced tangent
        // mix |gamma| = 1, signed opposite the bitorsion (the member realized
        // by a positive-orientation mate).
        cert.gamma = (g.bit_mid > 0.0) ? -1.0 : 1.0;
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += g.bit[i] * (cert.gamma * g.K[i] - g.k[i]);
            den += g.bit[i] * g.bit[i];
        }
        cert.delta = num / den;
    } else {
        double gaa = 0, gab = 0, gbb = 0, ra = 0, rb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = g.K[i];
            const double b = -g.bit[i];
            gaa += a * a;
            gab += a * b;
            gbb += b * b;
            ra += a * g.k[i];
            rb += b * g.k[i];
        }
        const double det = gaa * gbb - gab * gab;
        if (std::abs(det) <= 1e-12 * (gaa + gbb) * (gaa + gbb)) {
            cert.gamma = (g.bit_mid > 0.0) ? -1.0 : 1.0;
            cert.delta = (cert.gamma * g.K_mid - g.k_mid) / g.bit_mid;
        } else {
            cert.gamma = (gbb * ra - gab * rb) / det;
            cert.delta = (gaa * rb - gab * ra) / det;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        cert.residual_iii = std::max(
            cert.residual_iii,
            std::abs(cert.gamma * g.K[i] - g.k[i] - cert.delta * g.bit[i]));

    // Stage two: lambda (gamma k + K) - mu gamma (r-K) = 1, linear in
    // (lambda, mu) once gamma is fixed.
    std::vector<double> A(n), B(n);
    for (std::size_t i = 0; i < n; ++i) {
        A[i] = cert.gamma * g.k[i] + g.K[i];
        B[i] = -cert.gamma * g.bit[i];
    }
    std::optional<double> pin_offset;
    if (pin && pin->first == NB2Pin::Lambda) pin_offset = pin->second;
    if (pin && pin->first == NB2Pin::Mu) {
        // Pin mu: solve for lambda in one unknown.
        cert.pinned = true;
        cert.mu = pin->second;
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += A[i] * (1.0 - cert.mu * B[i]);
            den += A[i] * A[i];
        }
        cert.lambda = num / den;
        cert.family = constant_curvatures;
    } else {
        const BertrandFit stage2 = fit_affine_relation(A, B, 4, pin_offset, tol);
        cert.lambda = stage2.offset;
        cert.mu = stage2.cofactor;
        cert.family = stage2.family;
        cert.pinned = stage2.pinned;
    }

    // Orientation: phi' = xi (lambda k - mu (r-K)) sqrt(gamma^2+1) > 0.
    const double factor_mid = cert.lambda * g.k_mid - cert.mu * g.bit_mid;
    cert.xi = (factor_mid >= 0.0) ? 1 : -1;

    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cert.lambda * g.k[i] - cert.mu * g.bit[i];
        margin = std::min(margin, std::abs(f));
        cert.residual_ii = std::max(
            cert.residual_ii, std::abs(cert.gamma * f + cert.lambda * g.K[i] - 1.0));
        cert.condition_iv.absorb((cert.gamma * cert.gamma - 1.0) * g.K[i] * g.k[i] +
                                 cert.gamma * (g.K[i] * g.K[i] - g.k[i] * g.k[i] -
                                               g.bit[i] * g.bit[i]));
    }
    cert.margin_i = margin;

    const double iv_min =
        std::min(std::abs(cert.condition_iv.min), std::abs(cert.condition_iv.max));
    const bool iv_crosses_zero = cert.condition_iv.min < 0.0 && cert.condition_iv.max > 0.0;

    if (cert.residual_iii > tol)
        cert.reject_reason = "curvature mix relation has no constant solution (not an (N-B2) curve)";
    else if (cert.residual_ii > tol)
        cert.reject_reason = "displacement relation has no constant solution";
    else if (std::abs(cert.lambda) <= 1e-12 || std::abs(cert.mu) <= 1e-12)
        cert.reject_reason = "degenerate displacement (lambda and mu must be nonzero)";
    else if (cert.margin_i <= 1e-9 * (1.0 + std::abs(cert.lambda) + std::abs(cert.mu)))
        cert.reject_reason = "mate speed factor vanishes on the grid";
    else if (iv_crosses_zero || iv_min <= 1e-6)
        cert.reject_reason = "mate torsion factor not bounded away from zero";
    cert.accepted = cert.reject_reason.empty();
    return cert;
}

namespace {

/// Coincidence of span{N, B2} with span{Nbar, B2bar} at a probe point.
double plane_cos_at(const FrameSample4& base, const FrameSample4& mate) {
    return sigma_min2(hform(base.N, mate.N), hform(base.N, mate.B2),
                      hform(base.B2, mate.N), hform(base.B2, mate.B2));
}

}  // namespace

NB2Mate construct_nb2_mate(std::shared_ptr<const JetCurve> curve4, const NB2Certificate& cert,
                           const SampleGrid& grid) {
    if (!cert.accepted)
        throw PreconditionError("cannot construct a mate from a rejected certificate: " +
                                cert.reject_reason);

    // The fitted mu refers to an orientation of B2 the certificate cannot
    // see; try both signs against the plane-coincidence probe.
    const std::vector<double> ss = grid.values();
    std::vector<double> probes;
    for (int i = 0; i < 5; ++i) probes.push_back(ss[(ss.size() - 1) * i / 4]);

    double chosen_mu = 0;
    bool found = false;
    for (const double mu : {cert.mu, -cert.mu}) {
        OffsetCurve4 view(curve4, cert.lambda, mu);
        bool ok = true;
        try {
            for (double s : probes) {
                const FrameSample4 base = frenet4(*curve4, s);
                const FrameSample4 mate = frame_jets4(view, s).sample();
                if (plane_cos_at(base, mate) < 1.0 - 1e-6) {
                    ok = false;
                    break;
                }
            }
        } catch (const DegenerateFrameError&) {
            ok = false;
        }
        if (ok) {
            chosen_mu = mu;
            found = true;
            break;
        }
    }
    if (!found)
        throw PreconditionError(
            "construction failed: neither B2 orientation yields coincident normal planes");

    NB2Mate out;
    out.cert_used = cert;
    out.cert_used.mu = chosen_mu;

    auto view = std::make_shared<OffsetCurve4>(curve4, cert.lambda, chosen_mu);
    out.mate.offset_n = cert.lambda;
    out.mate.offset_b2 = chosen_mu;
    out.mate.view = view;
    out.mate.source_s = ss;
    for (double s : ss) {
        const auto p = view->position(s);
        out.mate.points.push_back({p[0], p[1], p[2], p[3]});
    }
    out.mate.corr = reparameterize(*view, grid);

    // xi so that phi' > 0 for the sign actually used.
    const FrameSample4 f0 = frenet4(*curve4, ss.front());
    const double factor0 = cert.lambda * f0.k - chosen_mu * f0.bitorsion;
    out.cert_used.xi = (factor0 >= 0.0) ? 1 : -1;

    const double root = std::sqrt(out.cert_used.gamma * out.cert_used.gamma + 1.0);
    for (std::size_t i = 0; i < ss.size(); ++i) {
        const FrameSample4 f = frenet4(*curve4, ss[i]);
        const double expected =
            out.cert_used.xi * (cert.lambda * f.k - chosen_mu * f.bitorsion) * root;
        out.phi_prime.absorb(out.mate.corr.dphi[i]);
        out.phi_prime_defect =
            std::max(out.phi_prime_defect, std::abs(out.mate.corr.dphi[i] - expected));
    }
    return out;
}

MateCurvaturePrediction predict_mate_curvatures(const JetCurve& curve4,
                                                const NB2Certificate& cert, double s) {
    if (!cert.accepted)
        throw PreconditionError("prediction requires an accepted certificate: " +
                                cert.reject_reason);
    const FrameSample4 f = frenet4(curve4, s);
    const double gamma = cert.gamma;
    const double root = std::sqrt(gamma * gamma + 1.0);
    const double phi_prime = cert.xi * (cert.lambda * f.k - cert.mu * f.bitorsion) * root;
    if (!(phi_prime > 0.0))
        throw DegenerateFrameError("mate speed not positive at the prediction point");

    const double mixed = gamma * f.K - f.k;
    const double base = mixed * mixed + f.bitorsion * f.bitorsion;
    if (base <= 1e-24)
        throw DegenerateFrameError("mate curvature denominator vanishes at s=" +
                                   std::to_string(s));
    const double root_base = std::sqrt(base);

    MateCurvaturePrediction pred;
    pred.K = root_base / (phi_prime * root);
    pred.k = std::abs(gamma * (f.K * f.K - f.k * f.k - f.bitorsion * f.bitorsion) +
                      (gamma * gamma - 1.0) * f.K * f.k) /
             (phi_prime * root * root_base);
    pred.bitorsion_abs = root * std::abs(f.bitorsion * f.K) / (phi_prime * root_base);
    return pred;
}

NB2Report verify_nb2_pair(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                          const NB2Certificate& cert, const SampleGrid& grid, double tol) {
    NB2Report rep;
    rep.tol = tol;
    rep.distance_expected = std::sqrt(cert.lambda * cert.lambda + cert.mu * cert.mu);
    const std::vector<double> ss = grid.values();

    std::vector<FrameSample4> A;
    A.reserve(ss.size());
    for (double s : ss) A.push_back(frenet4(*alpha, s));

    std::vector<FrameSample4> B;
    std::vector<Quaternion> Bpoint;
    NB2Certificate cert_eff = cert;
    if (beta.constructed) {
        rep.measured_lambda = beta.constructed->offset_n;
        rep.measured_mu = beta.constructed->offset_b2;
        cert_eff.mu = beta.constructed->offset_b2;
        const FrameSample4 f0 = A.front();
        cert_eff.xi =
            (cert_eff.lambda * f0.k - cert_eff.mu * f0.bitorsion >= 0.0) ? 1 : -1;
        for (double s : ss) {
            const FrameJets4 fj = frame_jets4(*beta.constructed->view, s);
            const auto p = beta.constructed->view->position(s);
            B.push_back(fj.sample());
            Bpoint.push_back({p[0], p[1], p[2], p[3]});
        }
    } else {
        // Recover displacements in the (N, B2) plane at the aligned start.
        const auto p0 = beta.spec->position(beta.spec->domain_min());
        const auto q0 = alpha->position(ss.front());
        const Quaternion delta =
            Quaternion{p0[0], p0[1], p0[2], p0[3]} - Quaternion{q0[0], q0[1], q0[2], q0[3]};
        rep.measured_lambda = hform(delta, A.front().N);
        rep.measured_mu = hform(delta, A.front().B2);
        cert_eff.mu = rep.measured_mu;
        cert_eff.lambda = rep.measured_lambda;
        const FrameSample4 f0 = A.front();
        cert_eff.xi =
            (cert_eff.lambda * f0.k - cert_eff.mu * f0.bitorsion >= 0.0) ? 1 : -1;
        OffsetCurve4 view(alpha, rep.measured_lambda, rep.measured_mu);
        const Correspondence corr = reparameterize(view, grid);
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const double sbar = beta.spec->domain_min() + corr.sbar[i];
            const auto p = beta.spec->position(sbar);
            B.push_back(frenet4(*beta.spec, sbar));
            Bpoint.push_back({p[0], p[1], p[2], p[3]});
        }
    }

    for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto q = alpha->position(ss[i]);
        rep.distance.absorb(norm(Bpoint[i] - Quaternion{q[0], q[1], q[2], q[3]}));

        const double cosmin = plane_cos_at(A[i], B[i]);
        rep.plane_cos_min = std::min(rep.plane_cos_min, cosmin);

        const double a = hform(B[i].T, A[i].T);
        const double b = hform(B[i].T, A[i].B1);
        rep.coeff_a.absorb(a);
        rep.coeff_b.absorb(b);
        rep.ab_unit_defect = std::max(rep.ab_unit_defect, std::abs(a * a + b * b - 1.0));
        if (std::abs(b) >= 1e-6)
            rep.ab_ratio_defect = std::max(rep.ab_ratio_defect, std::abs(a / b - cert.gamma));
        else
            rep.mixing_degenerate = true;

        const double m = hform(B[i].N, A[i].N);
        const double nn = hform(B[i].N, A[i].B2);
        rep.coeff_m.absorb(m);
        rep.coeff_n.absorb(nn);
        rep.mn_unit_defect = std::max(rep.mn_unit_defect, std::abs(m * m + nn * nn - 1.0));
        if (std::abs(nn) >= 1e-6)
            rep.mn_ratio_defect = std::max(rep.mn_ratio_defect, std::abs(m / nn - cert.delta));
        else
            rep.mixing_degenerate = true;

        rep.angle_T.absorb(hform(A[i].T, B[i].T));
        rep.angle_N.absorb(hform(A[i].N, B[i].N));
        rep.angle_B1.absorb(hform(A[i].B1, B[i].B1));
        rep.angle_B2.absorb(hform(A[i].B2, B[i].B2));

        const MateCurvaturePrediction pred = predict_mate_curvatures(*alpha, cert_eff, ss[i]);
        rep.pred_K_defect = std::max(rep.pred_K_defect, std::abs(pred.K - B[i].K));
        rep.pred_k_defect = std::max(rep.pred_k_defect, std::abs(pred.k - B[i].k));
        rep.pred_bit_defect = std::max(
            rep.pred_bit_defect, std::abs(pred.bitorsion_abs - std::abs(B[i].bitorsion)));
    }
    rep.plane_angle_max = std::acos(clamp_unit(rep.plane_cos_min));

    bool ok = rep.plane_cos_min >= 1.0 - tol;
    ok = ok && rep.distance.spread() <= tol * (1.0 + rep.distance.max);
    ok = ok && std::abs(rep.distance.mid() - rep.distance_expected) <=
                   tol * (1.0 + rep.distance_expected);
    ok = ok && !rep.mixing_degenerate;
    ok = ok && rep.ab_unit_defect <= tol * 2.0 && rep.mn_unit_defect <= tol * 2.0;
    ok = ok && rep.ab_ratio_defect <= tol * (1.0 + std::abs(cert.gamma));
    ok = ok && rep.mn_ratio_defect <= tol * (1.0 + std::abs(cert.delta));
    for (const Stat* st : {&rep.coeff_a, &rep.coeff_b, &rep.coeff_m, &rep.coeff_n,
                           &rep.angle_T, &rep.angle_N, &rep.angle_B1, &rep.angle_B2})
        ok = ok && st->spread() <= tol * 2.0;
    ok = ok && rep.pred_K_defect <= tol * (1.0 + rep.distance_expected);
    ok = ok && rep.pred_k_defect <= tol * (1.0 + rep.distance_expected);
    ok = ok && rep.pred_bit_defect <= tol * (1.0 + rep.distance_expected);
    rep.pass = ok;
    return rep;
}

}  // namespace qcurve
