#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qcurve/bertrand.hpp"
#include "qcurve/frenet.hpp"

namespace qcurve {

enum class NB2Pin { Lambda, Mu };

/// Constants witnessing the (N-B2) mate relations:
///   (i)   lambda k - mu (r-K) != 0
///   (ii)  gamma [lambda k - mu (r-K)] + lambda K = 1
///   (iii) gamma K - k = delta (r-K)
///   (iv)  (gamma^2 - 1) K k + gamma [K^2 - k^2 - (r-K)^2] != 0
/// lambda and mu are the displacements along N and B2; gamma and delta the
/// tangent- and normal-mixing constants; xi orients the mate's arc length.
struct NB2Certificate {
    double lambda = 0;
    double mu = 0;
    double gamma = 0;
    double delta = 0;
    int xi = 1;

    double margin_i = 0;      // min |lambda k - mu (r-K)| over the grid
    double residual_ii = 0;   // max defect of (ii)
    double residual_iii = 0;  // max defect of (iii)
    Stat condition_iv;        // signed values of the (iv) expression

    bool family = false;  // constant curvatures: displacement pair underdetermined
    bool pinned = false;
    bool accepted = false;
    std::string reject_reason;
    double tol = 1e-8;
};

/// Two-stage fit: (gamma, delta) from the curvature mix relation, then
/// (lambda, mu) from the displacement relation with gamma substituted.
/// Constant-curvature grids leave both stages rank-deficient; the mixing
/// constant is then closed with the balanced choice |gamma| = 1 (sign
/// opposite the bitorsion) and the displacement pair honors the pin or
/// returns the minimum-norm member with family=true.
NB2Certificate fit_certificate(const JetCurve& curve4, const SampleGrid& grid,
                               std::optional<std::pair<NB2Pin, double>> pin = std::nullopt,
                               double tol = 1e-8);

/// Constructed (N-B2) mate.  The B2 displacement sign is resolved by
/// construct-and-test: mu and -mu are both tried against the normal-plane
/// coincidence check and the surviving sign is recorded in `cert_used`.
struct NB2Mate {
    ConstructedMate mate;
    NB2Certificate cert_used;  // mu/xi as actually used
    Stat phi_prime;            // measured mate speed over the grid
    double phi_prime_defect = 0;  // max |measured - xi (lambda k - mu(r-K)) sqrt(gamma^2+1)|
};

NB2Mate construct_nb2_mate(std::shared_ptr<const JetCurve> curve4, const NB2Certificate& cert,
                           const SampleGrid& grid);

struct MateCurvaturePrediction {
    double K = 0;
    double k = 0;
    double bitorsion_abs = 0;
};

/// Mate curvature functions predicted from the base curve's curvatures and
/// the certificate constants alone.
MateCurvaturePrediction predict_mate_curvatures(const JetCurve& curve4,
                                                const NB2Certificate& cert, double s);

/// Pair verification against the (N-B2) laws.
struct NB2Report {
    double plane_cos_min = 1.0;   // min over grid of the smallest principal-angle cosine
    double plane_angle_max = 0.0;  // largest principal angle (radians)

    Stat distance;
    double distance_expected = 0;  // sqrt(lambda^2 + mu^2)

    Stat coeff_a, coeff_b;  // Tbar = a T + b B1
    Stat coeff_m, coeff_n;  // Nbar = m N + n B2
    double ab_unit_defect = 0;
    double mn_unit_defect = 0;
    double ab_ratio_defect = 0;  // max |a/b - gamma|
    double mn_ratio_defect = 0;  // max |m/n - delta|
    bool mixing_degenerate = false;

    Stat angle_T, angle_N, angle_B1, angle_B2;

    double pred_K_defect = 0;
    double pred_k_defect = 0;
    double pred_bit_defect = 0;

    double measured_lambda = 0;
    double measured_mu = 0;

    bool pass = false;
    double tol = 1e-8;
};

NB2Report verify_nb2_pair(std::shared_ptr<const JetCurve> alpha, MateOperand beta,
                          const NB2Certificate& cert, const SampleGrid& grid, double tol = 1e-8);

}  // namespace qcurve
