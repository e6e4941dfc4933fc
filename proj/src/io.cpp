#include "qcurve/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace qcurve {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

nlohmann::json stat_json(const Stat& st) {
    return {{"min", st.min}, {"max", st.max}, {"spread", st.spread()}};
}

void write_quat(std::ostream& os, const Quaternion& q, int dim) {
    os << ',' << fmt17(q.a) << ',' << fmt17(q.b) << ',' << fmt17(q.c);
    if (dim == 4) os << ',' << fmt17(q.d);
}

}  // namespace

void write_frames_csv(std::ostream& os, const JetCurve& curve, const SampleGrid& grid) {
    if (curve.dim() == 4) {
        os << "s,K,k,bitorsion,T1,T2,T3,T4,N1,N2,N3,N4,B1_1,B1_2,B1_3,B1_4,"
              "B2_1,B2_2,B2_3,B2_4\n";
        for (double s : grid.values()) {
            const FrameSample4 f = frenet4(curve, s);
            os << fmt17(s) << ',' << fmt17(f.K) << ',' << fmt17(f.k) << ','
               << fmt17(f.bitorsion);
            write_quat(os, f.T, 4);
            write_quat(os, f.N, 4);
            write_quat(os, f.B1, 4);
            write_quat(os, f.B2, 4);
            os << '\n';
        }
    } else {
        os << "s,k,r,t1,t2,t3,n1,n2,n3,b1,b2,b3\n";
        for (double s : grid.values()) {
            const FrameSample3 f = frenet3(curve, s);
            os << fmt17(s) << ',' << fmt17(f.k) << ',' << fmt17(f.r);
            write_quat(os, f.t, 3);
            write_quat(os, f.n, 3);
            write_quat(os, f.b, 3);
            os << '\n';
        }
    }
}

void write_plot_csv(std::ostream& os, const JetCurve& curve, const SampleGrid& grid) {
    os << "s";
    for (int i = 1; i <= curve.dim(); ++i) os << ",x" << i;
    os << '\n';
    for (double s : grid.values()) {
        const auto p = curve.position(s);
        os << fmt17(s);
        for (int i = 0; i < curve.dim(); ++i) os << ',' << fmt17(p[i]);
        os << '\n';
    }
}

void write_mate_csv(std::ostream& os, const ConstructedMate& mate) {
    os << "s,sbar,dphi,x1,x2,x3,x4\n";
    for (std::size_t i = 0; i < mate.source_s.size(); ++i) {
        const Quaternion& p = mate.points[i];
        os << fmt17(mate.source_s[i]) << ',' << fmt17(mate.corr.sbar[i]) << ','
           << fmt17(mate.corr.dphi[i]) << ',' << fmt17(p.a) << ',' << fmt17(p.b) << ','
           << fmt17(p.c) << ',' << fmt17(p.d) << '\n';
    }
}

std::string stat_to_json(const Stat& st) { return stat_json(st).dump(); }

std::string fit_to_json(const BertrandFit& fit) {
    nlohmann::json j;
    j["dim"] = fit.dim;
    j["offset"] = fit.offset;
    j["cofactor"] = fit.cofactor;
    j["residual"] = fit.residual;
    j["family"] = fit.family;
    j["pinned"] = fit.pinned;
    j["accepted"] = fit.accepted;
    j["tolerance"] = fit.tol;
    return j.dump(2);
}

std::string pair_report_to_json(const PairReport& rep) {
    nlohmann::json j;
    j["dim"] = rep.dim;
    j["distance"] = stat_json(rep.distance);
    j["tangent_dot"] = stat_json(rep.tangent_dot);
    j["torsion_product"] = stat_json(rep.torsion_product);
    j["normal_alignment"] = stat_json(rep.normal_alignment);
    j["theta"] = rep.theta;
    j["product_law_defect"] = rep.product_law_defect;
    j["measured_offset"] = rep.measured_offset;
    if (rep.dim == 4) {
        j["sum_relation"] = stat_json(rep.sum_relation);
        j["sum_lambda"] = rep.sum_lambda;
        j["sum_mu"] = rep.sum_mu;
        j["sum_residual"] = rep.sum_residual;
        j["fit_sum_value"] = rep.fit_sum_value;
    }
    j["trivial_pair"] = rep.trivial_pair;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tol;
    return j.dump(2);
}

std::string probe_report_to_json(const ProbeReport& rep) {
    nlohmann::json j;
    j["floor"] = rep.floor;
    j["consistent"] = rep.consistent;
    nlohmann::json trials = nlohmann::json::array();
    for (const ProbeTrial& t : rep.trials) {
        nlohmann::json tj;
        tj["offset"] = t.offset;
        tj["min_misalignment"] = t.min_misalignment;
        tj["degenerate"] = t.degenerate;
        if (!t.note.empty()) tj["note"] = t.note;
        trials.push_back(tj);
    }
    j["trials"] = trials;
    return j.dump(2);
}

std::string certificate_to_json(const NB2Certificate& cert) {
    nlohmann::json j;
    j["lambda"] = cert.lambda;
    j["mu"] = cert.mu;
    j["gamma"] = cert.gamma;
    j["delta"] = cert.delta;
    j["xi"] = cert.xi;
    j["residuals"] = {{"i", cert.margin_i},
                      {"ii", cert.residual_ii},
                      {"iii", cert.residual_iii},
                      {"iv", std::min(std::abs(cert.condition_iv.min),
                                      std::abs(cert.condition_iv.max))}};
    j["condition_iv"] = stat_json(cert.condition_iv);
    j["family"] = cert.family;
    j["pinned"] = cert.pinned;
    j["accepted"] = cert.accepted;
    if (!cert.reject_reason.empty()) j["reject_reason"] = cert.reject_reason;
    j["tolerance"] = cert.tol;
    return j.dump(2);
}

std::string nb2_report_to_json(const NB2Report& rep) {
    nlohmann::json j;
    j["plane_cos_min"] = rep.plane_cos_min;
    j["plane_angle_max"] = rep.plane_angle_max;
    j["distance"] = stat_json(rep.distance);
    j["distance_expected"] = rep.distance_expected;
    j["coeff_a"] = stat_json(rep.coeff_a);
    j["coeff_b"] = stat_json(rep.coeff_b);
    j["coeff_m"] = stat_json(rep.coeff_m);
    j["coeff_n"] = stat_json(rep.coeff_n);
    j["ab_unit_defect"] = rep.ab_unit_defect;
    j["mn_unit_defect"] = rep.mn_unit_defect;
    j["ab_ratio_defect"] = rep.ab_ratio_defect;
    j["mn_ratio_defect"] = rep.mn_ratio_defect;
    j["mixing_degenerate"] = rep.mixing_degenerate;
    j["angle_T"] = stat_json(rep.angle_T);
    j["angle_N"] = stat_json(rep.angle_N);
    j["angle_B1"] = stat_json(rep.angle_B1);
    j["angle_B2"] = stat_json(rep.angle_B2);
    j["pred_K_defect"] = rep.pred_K_defect;
    j["pred_k_defect"] = rep.pred_k_defect;
    j["pred_bit_defect"] = rep.pred_bit_defect;
    j["measured_lambda"] = rep.measured_lambda;
    j["measured_mu"] = rep.measured_mu;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tol;
    return j.dump(2);
}

std::string association_to_json(const AssociationReport& rep) {
    nlohmann::json j;
    j["max_torsion_defect"] = rep.max_torsion_defect;
    j["max_bitorsion_defect"] = rep.max_bitorsion_defect;
    j["tolerance"] = rep.tol;
    j["pass"] = rep.pass;
    return j.dump(2);
}

}  // namespace qcurve
