#include "inscribe/records.hpp"

namespace inscribe::records {

namespace {

Json vec_json(const VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json cols_json(const MatrixXd& m) {
    Json a = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(vec_json(m.col(c)));
    return a;
}

const char* event_name(continuation::EventKind k) {
    switch (k) {
        case continuation::EventKind::Fold: return "fold";
        case continuation::EventKind::Exit: return "exit";
        case continuation::EventKind::NonTransverse: return "non_transverse";
        default: return "stalled";
    }
}

}  // namespace

Json to_json(const slq::Solution& s) {
    Json j;
    j["record"] = "slq_solution";
    j["theta"] = vec_json(s.theta);
    j["vertices"] = cols_json(s.vertices);
    j["side"] = s.side;
    j["diagonal"] = s.diagonal;
    j["residual"] = s.residual_norm;
    j["det"] = s.cert.det;
    j["condition"] = s.cert.condition;
    j["certificate"] = s.cert.transverse ? "transverse" : "non_transverse";
    if (s.cert.transverse) j["sign"] = s.sign;
    return j;
}

Json to_json(const slq::Orbit& o) {
    Json j = to_json(o.canonical);
    j["record"] = "slq_orbit";
    j["orbit_size"] = 4;
    return j;
}

Json to_json(const simplex::InscribedSimplex& s) {
    Json j;
    j["record"] = "inscribed_simplex";
    j["scale"] = s.scale;
    j["translation"] = vec_json(s.translation);
    j["rotation"] = cols_json(s.rotation);
    j["vertices"] = cols_json(s.vertices);
    if (s.vertices.rows() == 3) {
        Json sph = Json::array();
        for (Eigen::Index c = 0; c < s.vertices.cols(); ++c) {
            const VectorXd p = s.vertices.col(c);
            const double r = p.norm();
            sph.push_back({std::acos(std::clamp(p[2] / r, -1.0, 1.0)),
                           wrap_angle(std::atan2(p[1], p[0]))});
        }
        j["vertices_spherical"] = sph;
    }
    j["residual"] = s.residual_norm;
    return j;
}

Json to_json(const simplex::SweepSummary& s) {
    Json j;
    j["record"] = "sweep_summary";
    j["requested"] = s.requested;
    j["succeeded"] = s.succeeded;
    j["s_range"] = {s.s_min, s.s_max};
    j["t_norm_range"] = {s.t_norm_min, s.t_norm_max};
    j["failed_indices"] = s.failed_indices;
    j["loop_steps"] = s.loop_steps;
    j["loop_lost"] = s.loop_lost;
    j["loop_max_jump"] = s.loop_max_jump;
    return j;
}

Json to_json(const continuation::Path& p) {
    Json j;
    j["record"] = "continuation_path";
    Json pts = Json::array();
    for (const auto& pt : p.points)
        pts.push_back({{"t", pt.t},
                       {"theta", vec_json(pt.theta)},
                       {"side", pt.side},
                       {"det", pt.det}});
    j["points"] = pts;
    Json evs = Json::array();
    for (const auto& e : p.events)
        evs.push_back({{"kind", event_name(e.kind)}, {"t", e.t}, {"detail", e.detail}});
    j["events"] = evs;
    j["reached_end"] = p.reached_end;
    return j;
}

Json to_json(const continuation::ParityReport& r) {
    Json j;
    j["record"] = "parity_report";
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"t", s.t},
                           {"orbits", s.orbit_count},
                           {"transverse", s.transverse_count},
                           {"all_transverse", s.all_transverse}});
    j["samples"] = samples;
    j["parity_constant"] = r.parity_constant;
    j["parity"] = r.parity;
    j["excluded_t"] = r.excluded;
    return j;
}

Json to_json(const ftc::SidelengthAudit& a) {
    Json j;
    j["record"] = "sidelength_audit";
    j["polygonization"] = a.polygonization;
    j["pi_distance"] = a.pid_minimal;
    j["pi_distance_exhaustive"] = a.pid_exhaustive;
    Json sols = Json::array();
    for (const auto& e : a.solutions)
        sols.push_back({{"side", e.side},
                        {"arc_curvature", e.arc_curvature},
                        {"arc_chord", e.arc_chord},
                        {"witness_ok", e.witness_ok},
                        {"ge_minimal", e.ge_minimal},
                        {"ge_exhaustive", e.ge_exhaustive}});
    j["solutions"] = sols;
    j["flagged"] = a.flagged;
    return j;
}

Json to_json(const ftc::ExtractionResult& r) {
    Json j;
    j["record"] = "limit_extraction";
    Json lv = Json::array();
    for (const auto& l : r.levels) {
        Json e = {{"vertices", l.vertices},
                  {"rounding_radius", l.rounding_radius},
                  {"orbits", l.orbit_count},
                  {"picked", l.picked}};
        if (l.picked) {
            e["theta"] = vec_json(l.theta);
            e["side"] = l.side;
        }
        lv.push_back(e);
    }
    j["levels"] = lv;
    j["limit_theta"] = vec_json(r.limit.theta);
    j["limit_side"] = r.limit.side;
    j["residual_on_target"] = r.residual_on_target;
    return j;
}

}  // namespace inscribe::records
