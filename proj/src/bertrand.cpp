#include "qcurve/bertrand.hpp"

#include <algorithm>
#include <cmath>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

struct LsSolution {
    double x = 0;
    double y = 0;
    bool rank_deficient = false;
};

/// Minimum-norm least squares for rows (a_i, b_i) -> rhs_i via the normal
/// equations; rank decided on the Gram matrix eigenvalues.
LsSolution solve_ls2(const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<double>& rhs) {
    double gaa = 0, gab = 0, gbb = 0, ra = 0, rb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        gaa += a[i] * a[i];
        gab += a[i] * b[i];
        gbb += b[i] * b[i];
        ra += a[i] * rhs[i];
        rb += b[i] * rhs[i];
    }
    const double tr = gaa + gbb;
    const double det = gaa * gbb - gab * gab;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double lmax = 0.5 * tr + disc;
    const double lmin = 0.5 * tr - disc;

    LsSolution sol;
    if (!(lmax > 0)) {
        sol.rank_deficient = true;
        return sol;
    }
    if (lmin <= 1e-12 * lmax) {
        // Project onto the dominant eigenvector (pseudo-inverse solution).
        double vx, vy;
        if (std::abs(gab) > 1e-300) {
            vx = lmax - gbb;
            vy = gab;
        } else if (gaa >= gbb) {
            vx = 1;
            vy = 0;
        } else {
            vx = 0;
            vy = 1;
        }
        const double vn = std::sqrt(vx * vx + vy * vy);
        vx /= vn;
        vy /= vn;
        const double coef = (vx * ra + vy * rb) / lmax;
        sol.x = coef * vx;
        sol.y = coef * vy;
        sol.rank_deficient = true;
        return sol;
    }
    sol.x = (gbb * ra - gab * rb) / det;
    sol.y = (gaa * rb - gab * ra) / det;
    return sol;
}

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

}  // namespace

BertrandFit fit_affine_relation(const std::vector<double>& first,
                                const std::vector<double>& second, int dim,
                                std::optional<double> pin_offset, double tol) {
    BertrandFit fit;
    fit.dim = dim;
    fit.tol = tol;
    const std::size_t n = first.size();
    if (n < 2 || second.size() != n)
        throw PreconditionError("fit needs at least two curvature samples");

    if (pin_offset) {
        fit.pinned = true;
        fit.offset = *pin_offset;
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += second[i] * (1.0 - fit.offset * first[i]);
            den += second[i] * second[i];
        }
        if (den <= 1e-24) {
            fit.cofactor = 0.0;
            fit.family = true;
        } else {
            fit.cofactor = num / den;
        }
    } else {
        const LsSolution sol = solve_ls2(first, second, ones(n));
        fit.offset = sol.x;
        fit.cofactor = sol.y;
        fit.family = sol.rank_deficient;
    }

    for (std::size_t i = 0; i < n; ++i)
        fit.residual = std::max(
            fit.residual, std::abs(fit.offset * first[i] + fit.cofactor * second[i] - 1.0));
    fit.accepted = fit.residual <= tol;
    return fit;
}

BertrandFit fit_relation3(const JetCurve& curve3, const SampleGrid& grid,
                          std::optional<double> pin_offset, double tol) {
    std::vector<double> k, r;
    for (double s : grid.values()) {
        const FrameSample3 f = frenet3(curve3, s);
        k.push_back(f.k);
        r.push_back(f.r);
    }
    return fit_affine_relation(k, r, 3, pin_offset, tol);
}

BertrandFit fit_relation4(const JetCurve& curve4, const SampleGrid& grid,
                          std::optional<double> pin_offset, double tol) {
    std::vector<double> K, k;
    for (double s : grid.values()) {
        const FrameSample4 f = frenet4(curve4, s);
        if (std::abs(f.bitorsion) > 1e-8)
            throw PreconditionError(
                "curve has nonzero bitorsion; the classical relation does not apply "
                "(use the (N-B2) certificate instead)");
        K.push_back(f.K);
        k.push_back(f.k);
    }
    return fit_affine_relation(K, k, 4, pin_offset, tol);
}

namespace {

ConstructedMate build_mate(std::shared_ptr<const JetCurve> base,
                           std::shared_ptr<const JetCurve> view, double offset_n,
                           double offset_b2, const SampleGrid& grid) {
    ConstructedMate mate;
    mate.offset_n = offset_n;
    mate.offset_b2 = offset_b2;
    mate.view = view;
    mate.source_s = grid.values();
    for (double s : mate.source_s) {
        const auto p = view->position(s);
        mate.points.push_back({p[0], p[1], p[2], p[3]});
    }
    mate.corr = reparameterize(*view, grid);
    return mate;
}

}  // namespace

ConstructedMate construct_mate3(std::shared_ptr<const JetCurve> curve3, double offset,
                                const SampleGrid& grid) {
    for (double s : grid.values()) frenet3(*curve3, s);  // degeneracy / unit-speed gate
    auto view = std::make_shared<OffsetCurve3>(curve3, offset);
    return build_mate(curve3, view, offset, 0.0, grid);
}

ConstructedMate construct_mate4(std::shared_ptr<const JetCurve> curve4, double offset,
                                const SampleGrid& grid) {
    for (double s : grid.values()) {
        const FrameSample4 f = frenet4(*curve4, s);
        if (std::abs(f.bitorsion) > 1e-8)
            throw PreconditionError(
                "curve has nonzero bitorsion; a mate along N does not exist "
                "(use the (N-B2) construction instead)");
    }
    auto view = std::make_shared<OffsetCurve4>(curve4, offset, 0.0);
    return build_mate(curve4, view, offset, 0.0, grid);
}

namespace {

struct BetaSample3 {
    Quaternion point;
    FrameSample3 frame;
};

struct BetaSample4 {
    Quaternion point;
    FrameSample4 frame;
};

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

PairReport verify_pair3(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                        const SampleGrid& grid, double tol) {
    PairReport rep;
    rep.dim = 3;
    rep.tol = tol;
    const std::vector<double> ss = grid.values();

    std::vector<FrameSample3> A;
    A.reserve(ss.size());
    for (double s : ss) A.push_back(frenet3(*alpha, s));

    std::vector<BetaSample3> B;
    B.reserve(ss.size());
    if (beta.constructed) {
        rep.measured_offset = beta.constructed->offset_n;
        for (double s : ss) {
            const FrameJets3 fj = frame_jets3(*beta.constructed->view, s);
            const auto p = beta.constructed->view->position(s);
            B.push_back({{p[0], p[1], p[2], p[3]}, fj.sample()});
        }
    } else {
        // Recover the displacement at the aligned grid start, then match by
        // the reconstructed mate's cumulative arc length.
        const auto p0 = beta.spec->position(beta.spec->domain_min());
        const auto q0 = alpha->position(ss.front());
        const Quaternion delta =
            Quaternion{p0[0], p0[1], p0[2], p0[3]} - Quaternion{q0[0], q0[1], q0[2], q0[3]};
        rep.measured_offset = hform(delta, A.front().n);
        OffsetCurve3 view(alpha, rep.measured_offset);
        const Correspondence corr = reparameterize(view, grid);
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const double sbar = beta.spec->domain_min() + corr.sbar[i];
            const auto p = beta.spec->position(sbar);
            B.push_back({{p[0], p[1], p[2], p[3]}, frenet3(*beta.spec, sbar)});
        }
    }

    for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto q = alpha->position(ss[i]);
        const Quaternion diff = B[i].point - Quaternion{q[0], q[1], q[2], q[3]};
        rep.distance.absorb(norm(diff));
        rep.tangent_dot.absorb(hform(A[i].t, B[i].frame.t));
        rep.torsion_product.absorb(A[i].r * B[i].frame.r);
        rep.normal_alignment.absorb(std::abs(hform(A[i].n, B[i].frame.n)));
    }

    rep.theta = std::acos(clamp_unit(rep.tangent_dot.mid()));
    rep.trivial_pair = rep.distance.max <= std::max(tol, 1e-12);
    if (!rep.trivial_pair) {
        const double sin2 = 1.0 - rep.tangent_dot.mid() * rep.tangent_dot.mid();
        const double lambda2 = rep.distance.mid() * rep.distance.mid();
        rep.product_law_defect =
            std::abs(std::abs(rep.torsion_product.min) - sin2 / lambda2);
        rep.product_law_defect = std::max(
            rep.product_law_defect, std::abs(std::abs(rep.torsion_product.max) - sin2 / lambda2));
    }

    const double law_tol = std::max(1e-6, tol);
    bool ok = rep.distance.spread() <= tol * (1.0 + std::abs(rep.distance.max));
    ok = ok && rep.normal_alignment.min >= 1.0 - tol * 2.0;
    if (!rep.trivial_pair) {
        ok = ok && rep.tangent_dot.spread() <= tol * 2.0;
        ok = ok && rep.torsion_product.spread() <=
                       tol * (1.0 + std::abs(rep.torsion_product.max));
        ok = ok && rep.product_law_defect <= law_tol;
    }
    rep.pass = ok;
    return rep;
}

PairReport verify_pair4(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                        const BertrandFit& fit, const SampleGrid& grid, double tol) {
    PairReport rep;
    rep.dim = 4;
    rep.tol = tol;
    const std::vector<double> ss = grid.values();

    std::vector<FrameSample4> A;
    A.reserve(ss.size());
    for (double s : ss) A.push_back(frenet4(*alpha, s));

    std::vector<BetaSample4> B;
    B.reserve(ss.size());
    if (beta.constructed) {
        rep.measured_offset = beta.constructed->offset_n;
        for (double s : ss) {
            const FrameJets4 fj = frame_jets4(*beta.constructed->view, s);
            const auto p = beta.constructed->view->position(s);
            B.push_back({{p[0], p[1], p[2], p[3]}, fj.sample()});
        }
    } else {
        const auto p0 = beta.spec->position(beta.spec->domain_min());
        const auto q0 = alpha->position(ss.front());
        const Quaternion delta =
            Quaternion{p0[0], p0[1], p0[2], p0[3]} - Quaternion{q0[0], q0[1], q0[2], q0[3]};
        rep.measured_offset = hform(delta, A.front().N);
        OffsetCurve4 view(alpha, rep.measured_offset, 0.0);
        const Correspondence corr = reparameterize(view, grid);
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const double sbar = beta.spec->domain_min() + corr.sbar[i];
            const auto p = beta.spec->position(sbar);
            B.push_back({{p[0], p[1], p[2], p[3]}, frenet4(*beta.spec, sbar)});
        }
    }

    for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto q = alpha->position(ss[i]);
        const Quaternion diff = B[i].point - Quaternion{q[0], q[1], q[2], q[3]};
        rep.distance.absorb(norm(diff));
        rep.tangent_dot.absorb(hform(A[i].T, B[i].frame.T));
        rep.torsion_product.absorb(A[i].k * B[i].frame.k);
        rep.normal_alignment.absorb(std::abs(hform(A[i].N, B[i].frame.N)));
    }

    rep.theta = std::acos(clamp_unit(rep.tangent_dot.mid()));
    rep.trivial_pair = rep.distance.max <= std::max(tol, 1e-12);
    if (!rep.trivial_pair) {
        const double sin2 = 1.0 - rep.tangent_dot.mid() * rep.tangent_dot.mid();
        const double lambda2 = rep.distance.mid() * rep.distance.mid();
        rep.product_law_defect =
            std::abs(std::abs(rep.torsion_product.min) - sin2 / lambda2);
        rep.product_law_defect = std::max(
            rep.product_law_defect, std::abs(std::abs(rep.torsion_product.max) - sin2 / lambda2));
    }

    // Theorem constants: one (mu, lambda) pair serving mu k + lambda K = 1 on
    // alpha and mu kbar + lambda Kbar = -1 on the mate simultaneously.
    {
        std::vector<double> a, b, rhs;
        for (std::size_t i = 0; i < ss.size(); ++i) {
            a.push_back(A[i].k);
            b.push_back(A[i].K);
            rhs.push_back(1.0);
            a.push_back(B[i].frame.k);
            b.push_back(B[i].frame.K);
            rhs.push_back(-1.0);
        }
        const LsSolution sol = solve_ls2(a, b, rhs);
        rep.sum_mu = sol.x;
        rep.sum_lambda = sol.y;
        for (std::size_t i = 0; i < a.size(); ++i)
            rep.sum_residual =
                std::max(rep.sum_residual, std::abs(sol.x * a[i] + sol.y * b[i] - rhs[i]));
        for (std::size_t i = 0; i < ss.size(); ++i)
            rep.sum_relation.absorb(rep.sum_mu * (A[i].k + B[i].frame.k) +
                                    rep.sum_lambda * (A[i].K + B[i].frame.K));
        for (std::size_t i = 0; i < ss.size(); ++i)
            rep.fit_sum_value =
                std::max(rep.fit_sum_value, std::abs(fit.cofactor * (A[i].k + B[i].frame.k) +
                                                     fit.offset * (A[i].K + B[i].frame.K)));
    }

    const double law_tol = std::max(1e-6, tol);
    bool ok = rep.distance.spread() <= tol * (1.0 + std::abs(rep.distance.max));
    ok = ok && rep.normal_alignment.min >= 1.0 - tol * 2.0;
    if (!rep.trivial_pair) {
        ok = ok && rep.tangent_dot.spread() <= tol * 2.0;
        ok = ok && rep.torsion_product.spread() <=
                       tol * (1.0 + std::abs(rep.torsion_product.max));
        ok = ok && rep.product_law_defect <= law_tol;
        ok = ok && rep.sum_residual <= tol * (1.0 + std::abs(rep.sum_lambda) +
                                              std::abs(rep.sum_mu));
        ok = ok && std::max(std::abs(rep.sum_relation.min), std::abs(rep.sum_relation.max)) <=
                       tol * (1.0 + std::abs(rep.sum_lambda) + std::abs(rep.sum_mu));
    }
    rep.pass = ok;
    return rep;
}

ProbeReport nonexistence_probe4(std::shared_ptr<const JetCurve> curve4, const SampleGrid& grid,
                                std::vector<double> offsets, double floor) {
    ProbeReport rep;
    rep.floor = floor;
    const std::vector<double> ss = grid.values();

    std::vector<FrameSample4> A;
    std::vector<double> K, k;
    for (double s : ss) {
        const FrameSample4 f = frenet4(*curve4, s);
        if (std::abs(f.bitorsion) <= 1e-6 || std::abs(f.k) <= 1e-6)
            throw PreconditionError(
                "nonexistence probe needs |bitorsion| > 1e-6 and k > 1e-6 on the grid");
        A.push_back(f);
        K.push_back(f.K);
        k.push_back(f.k);
    }

    if (offsets.empty()) {
        offsets = {0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
        // Offset candidates from a forced classical fit (ignoring bitorsion).
        const BertrandFit forced = fit_affine_relation(K, k, 4, std::nullopt, 1e-8);
        if (std::abs(forced.offset) > 1e-6) {
            offsets.push_back(forced.offset);
            offsets.push_back(-forced.offset);
        }
    }

    for (double offset : offsets) {
        if (offset == 0.0)
            throw PreconditionError("probe offsets must be nonzero (beta would coincide)");
        ProbeTrial trial;
        trial.offset = offset;
        OffsetCurve4 view(curve4, offset, 0.0);
        double min_mis = 2.0;
        try {
            for (std::size_t i = 0; i < ss.size(); ++i) {
                const FrameJets4 fj = frame_jets4(view, ss[i]);
                const double mis = 1.0 - std::abs(hform(A[i].N, fj.sample().N));
                min_mis = std::min(min_mis, mis);
            }
            trial.min_misalignment = min_mis;
        } catch (const DegenerateFrameError& e) {
            trial.degenerate = true;
            trial.note = e.what();
        }
        rep.trials.push_back(trial);
    }

    rep.consistent = true;
    for (const ProbeTrial& t : rep.trials)
        if (!t.degenerate && t.min_misalignment <= floor) rep.consistent = false;
    return rep;
}

}  // namespace qcurve
