#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcurve/frenet.hpp"

namespace qcurve {

/// Min/max of a sampled quantity; spread is the constancy defect.
struct Stat {
    double min = 0;
    double max = 0;
    double spread() const { return max - min; }
    double mid() const { return 0.5 * (min + max); }

    void absorb(double v) {
        if (empty_) {
            min = max = v;
            empty_ = false;
        } else {
            if (v < min) min = v;
            if (v > max) max = v;
        }
    }

private:
    bool empty_ = true;
};

/// Fitted constants of the linear curvature relation
///   offset * k + cofactor * r = 1   (E3, Theorem-style first/second curvature)
///   offset * K + cofactor * k = 1   (E4)
/// offset is the mate displacement along the principal normal.
struct BertrandFit {
    int dim = 3;
    double offset = 0;
    double cofactor = 0;
    double residual = 0;  // max |relation - 1| over the grid
    bool family = false;  // constant curvatures: one-parameter family of constants
    bool pinned = false;
    bool accepted = false;
    double tol = 1e-8;
};

BertrandFit fit_relation3(const JetCurve& curve3, const SampleGrid& grid,
                          std::optional<double> pin_offset = std::nullopt, double tol = 1e-8);

/// Requires |bitorsion| <= 1e-8 on the grid (otherwise PreconditionError
/// pointing at the (N-B2) machinery).
BertrandFit fit_relation4(const JetCurve& curve4, const SampleGrid& grid,
                          std::optional<double> pin_offset = std::nullopt, double tol = 1e-8);

/// Least-squares core shared by the fits: minimize sum (x*a_i + y*b_i - 1)^2.
/// Rank-deficient systems return the minimum-norm solution with family=true.
BertrandFit fit_affine_relation(const std::vector<double>& first,
                                const std::vector<double>& second, int dim,
                                std::optional<double> pin_offset, double tol);

/// Constructed mate: sampled points plus the analytic displacement view
/// (parameterized by the source curve's parameter).
struct ConstructedMate {
    std::vector<double> source_s;
    std::vector<Quaternion> points;
    Correspondence corr;  // sbar = cumulative mate arc length from grid start
    std::shared_ptr<const JetCurve> view;
    double offset_n = 0;
    double offset_b2 = 0;
};

ConstructedMate construct_mate3(std::shared_ptr<const JetCurve> curve3, double offset,
                                const SampleGrid& grid);
ConstructedMate construct_mate4(std::shared_ptr<const JetCurve> curve4, double offset,
                                const SampleGrid& grid);

/// Second curve of a pair: either a constructed mate or an independent
/// arc-length parameterized spec.
struct MateOperand {
    const ConstructedMate* constructed = nullptr;
    std::shared_ptr<const JetCurve> spec;

    MateOperand(const ConstructedMate& m) : constructed(&m) {}  // NOLINT
    MateOperand(std::shared_ptr<const JetCurve> c) : spec(std::move(c)) {}  // NOLINT
};

/// Pair verification report; stats are taken over corresponding points.
struct PairReport {
    int dim = 3;
    Stat distance;
    Stat tangent_dot;        // h(t, t*)
    Stat torsion_product;    // r r* (E3) or k kbar (E4), signed
    Stat normal_alignment;   // |h(n, n*)|
    double theta = 0;        // angle recovered from the tangent stat midpoint
    double product_law_defect = 0;  // max | |product| - sin^2(theta)/dist^2 |
    double measured_offset = 0;     // displacement along n recovered at grid start

    // E4 only: constants solving {mu k + lambda K = 1, mu kbar + lambda Kbar = -1}
    // and the resulting sum-relation stat mu(k+kbar) + lambda(K+Kbar).
    Stat sum_relation;
    double sum_lambda = 0;
    double sum_mu = 0;
    double sum_residual = 0;
    double fit_sum_value = 0;  // sum relation evaluated with the fit constants

    bool trivial_pair = false;  // beta coincides with alpha
    bool pass = false;
    double tol = 1e-8;
};

PairReport verify_pair3(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                        const SampleGrid& grid, double tol = 1e-8);
PairReport verify_pair4(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                        const BertrandFit& fit, const SampleGrid& grid, double tol = 1e-8);

/// One trial of the nonexistence probe: beta = alpha + offset N framed and
/// tested for principal-normal alignment.
struct ProbeTrial {
    double offset = 0;
    double min_misalignment = 0;  // min over grid of 1 - |h(N, Nbar)|
    bool degenerate = false;
    std::string note;
};

struct ProbeReport {
    std::vector<ProbeTrial> trials;
    double floor = 1e-4;
    bool consistent = false;  // every trial witnesses misalignment (or degeneracy)
};

/// Empirical witness that no offset along N yields a Bertrand mate when the
/// bitorsion and torsion are bounded away from zero.
ProbeReport nonexistence_probe4(std::shared_ptr<const JetCurve> curve4, const SampleGrid& grid,
                                std::vector<double> offsets = {}, double floor = 1e-4);

}  // namespace qcurve
