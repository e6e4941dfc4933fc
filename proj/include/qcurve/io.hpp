#pragma once

#include <ostream>
#include <string>

#include "qcurve/bertrand.hpp"
#include "qcurve/frenet.hpp"
#include "qcurve/nb2.hpp"

namespace qcurve {

/// Shortest round-trip decimal form of a binary64 (17 significant digits).
std::string fmt17(double x);

/// Frame/curvature table, one row per grid point:
///   E4: s,K,k,bitorsion,T1..T4,N1..N4,B1_1..B1_4,B2_1..B2_4
///   E3: s,k,r,t1..t3,n1..n3,b1..b3
void write_frames_csv(std::ostream& os, const JetCurve& curve, const SampleGrid& grid);

/// Tidy coordinate table (s plus all components) for external plotting.
void write_plot_csv(std::ostream& os, const JetCurve& curve, const SampleGrid& grid);

/// Sampled mate points with the correspondence columns.
void write_mate_csv(std::ostream& os, const ConstructedMate& mate);

std::string stat_to_json(const Stat& st);
std::string fit_to_json(const BertrandFit& fit);
std::string pair_report_to_json(const PairReport& rep);
std::string probe_report_to_json(const ProbeReport& rep);
std::string certificate_to_json(const NB2Certificate& cert);
std::string nb2_report_to_json(const NB2Report& rep);
std::string association_to_json(const AssociationReport& rep);

}  // namespace qcurve
