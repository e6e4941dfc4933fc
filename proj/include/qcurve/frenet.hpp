#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/quaternion.hpp"

namespace qcurve {

/// Degeneracy threshold for curvature functions.
inline constexpr double kTolCurvature = 1e-9;
/// Unit-speed gate: | |alpha'| - 1 | must stay below this for frenet3/frenet4.
inline constexpr double kTolUnitSpeed = 1e-6;

/// E3 Frenet data at one parameter value.
struct FrameSample3 {
    double s = 0;
    Quaternion t, n, b;  // spatial quaternions
    double k = 0;        // principal curvature (> 0)
    double r = 0;        // torsion (signed)
};

/// E4 Frenet data at one parameter value; bitorsion is signed with respect to
/// the orientation det[T N B1 B2] = +1.
struct FrameSample4 {
    double s = 0;
    Quaternion T, N, B1, B2;
    double K = 0;
    double k = 0;
    double bitorsion = 0;
};

/// Frame vectors as component jets in the curve's own parameter, together
/// with scalar jets of speed and curvature functions.  Produced for any
/// regular curve; arc-length derivatives are d/ds values divided by speed.
struct FrameJets3 {
    double s = 0;
    std::array<Jet, 4> t, n, b;
    Jet v, k, r;
    FrameSample3 sample() const;
};

struct FrameJets4 {
    double s = 0;
    std::array<Jet, 4> T, N, B1, B2;
    Jet v, K, k, bitorsion;
    Quaternion d4;  // fourth s-derivative of the position
    FrameSample4 sample() const;
};

/// Frenet apparatus of a regular (not necessarily unit-speed) curve via
/// Gram-Schmidt over jets.  Throws DegenerateFrameError when a curvature
/// falls below kTolCurvature.
FrameJets3 frame_jets3(const JetCurve& curve, double s, std::size_t order = Jet::kDefaultOrder);
FrameJets4 frame_jets4(const JetCurve& curve, double s, std::size_t order = Jet::kDefaultOrder);

/// Unit-speed Frenet apparatus (the curve must be arc-length parameterized;
/// otherwise NotUnitSpeedError — resample through reparameterize first).
FrameSample3 frenet3(const JetCurve& curve, double s);
FrameSample4 frenet4(const JetCurve& curve, double s);

/// alpha(s), alpha'(s), ..., alpha^(upto)(s).
std::vector<std::array<double, 4>> derivatives(const JetCurve& curve, double s, std::size_t upto);

/// Arc length of the curve between s0 and s1 by adaptive Gauss-Kronrod
/// quadrature of the speed.
double arclength(const JetCurve& curve, double s0, double s1, double abs_tol = 1e-10);

/// Cumulative arc length from the grid start plus speed values.
Correspondence reparameterize(const JetCurve& curve, const SampleGrid& grid);

/// Arc-length reparameterized copy: domain [0, L], unit speed.  Component
/// jets are obtained by composing the base jets with the inverted
/// arc-length series at the root-found preimage.
class UnitSpeedView final : public JetCurve {
public:
    explicit UnitSpeedView(std::shared_ptr<const JetCurve> base);

    int dim() const override { return base_->dim(); }
    std::array<Jet, 4> components(double sigma, std::size_t order) const override;
    double domain_min() const override { return 0.0; }
    double domain_max() const override { return length_; }

    /// Base-parameter preimage of arc length sigma.
    double parameter_at(double sigma) const;

private:
    std::shared_ptr<const JetCurve> base_;
    double length_ = 0;
};

/// Displacement curve beta(s) = alpha(s) + offset_n * n(s) for E3 curves,
/// parameterized by alpha's parameter.
class OffsetCurve3 final : public JetCurve {
public:
    OffsetCurve3(std::shared_ptr<const JetCurve> base, double offset_n)
        : base_(std::move(base)), offset_n_(offset_n) {}

    int dim() const override { return 3; }
    std::array<Jet, 4> components(double s, std::size_t order) const override;
    double domain_min() const override { return base_->domain_min(); }
    double domain_max() const override { return base_->domain_max(); }

private:
    std::shared_ptr<const JetCurve> base_;
    double offset_n_;
};

/// Displacement curve beta(s) = alpha(s) + offset_n * N(s) + offset_b2 * B2(s)
/// for E4 curves, parameterized by alpha's parameter.
class OffsetCurve4 final : public JetCurve {
public:
    OffsetCurve4(std::shared_ptr<const JetCurve> base, double offset_n, double offset_b2 = 0.0)
        : base_(std::move(base)), offset_n_(offset_n), offset_b2_(offset_b2) {}

    int dim() const override { return 4; }
    std::array<Jet, 4> components(double s, std::size_t order) const override;
    double domain_min() const override { return base_->domain_min(); }
    double domain_max() const override { return base_->domain_max(); }

private:
    std::shared_ptr<const JetCurve> base_;
    double offset_n_;
    double offset_b2_;
};

/// Pointwise comparison of an E4 curve's curvature functions against its
/// claimed associated spatial curve: torsion(curve4) vs curvature(curve3)
/// and |bitorsion(curve4)| vs |r(curve3) - K(curve4)|.
struct AssociationReport {
    double max_torsion_defect = 0;
    double max_bitorsion_defect = 0;
    double tol = 0;
    bool pass = false;
};

AssociationReport verify_association(const JetCurve& curve4, const JetCurve& curve3,
                                     const SampleGrid& grid, double tol);

/// Residual of the fourth derivative against span{T, N, B1}; vanishes for
/// curves confined to a hyperplane.
double hyperplane_residual(const FrameJets4& fj);

}  // namespace qcurve
