#include "inscribe/slq.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

namespace inscribe::slq {

namespace {

struct Chords {
    MatrixXd p;                 // k x 4
    double L[4][4];             // pairwise distances
    VectorXd u[4][4];           // unit vectors u[i][j] = (p_i - p_j)/L_ij
};

Chords chords_at(const ClosedCurve& c, const Eigen::Vector4d& theta) {
    Chords ch;
    ch.p.resize(c.dimension(), 4);
    for (int i = 0; i < 4; ++i) ch.p.col(i) = c.eval(theta[i]);
    const double scale = ch.p.colwise().norm().maxCoeff() + 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const VectorXd d = ch.p.col(i) - ch.p.col(j);
            ch.L[i][j] = d.norm();
            if (ch.L[i][j] < kCoincidenceThreshold * scale)
                throw degenerate_error("coincident quadrilateral points");
            ch.u[i][j] = d / ch.L[i][j];
        }
    return ch;
}

Eigen::Vector4d residual_from(const Chords& ch) {
    Eigen::Vector4d r;
    r[0] = ch.L[0][1] / ch.L[0][3] - 1.0;                          // s124 - 1
    r[1] = ch.L[1][2] / ch.L[1][0] - 1.0;                          // s231 - 1
    r[2] = ch.L[2][3] / ch.L[2][1] - 1.0;                          // s342 - 1
    r[3] = ch.L[0][2] / ch.L[0][1] - ch.L[1][3] / ch.L[1][0];      // s132 - s241
    return r;
}

// d(s_ijk)/d(theta_m) contributions; T[m] is the curve velocity at theta_m.
void add_ratio_grad(const Chords& ch, const VectorXd T[4], int i, int j, int k, double coeff,
                    Eigen::Vector4d& row) {
    const double s = ch.L[i][j] / ch.L[i][k];
    row[i] += coeff * ((ch.u[i][j].dot(T[i])) / ch.L[i][k] -
                       s / ch.L[i][k] * (ch.u[i][k].dot(T[i])));
    row[j] += coeff * (ch.u[j][i].dot(T[j])) / ch.L[i][k];
    row[k] += coeff * (-s / ch.L[i][k] * (ch.u[k][i].dot(T[k])));
}

}  // namespace

Eigen::Vector4d residual(const ClosedCurve& c, const Eigen::Vector4d& theta) {
    return residual_from(chords_at(c, theta));
}

Eigen::Matrix4d jacobian(const ClosedCurve& c, const Eigen::Vector4d& theta) {
    const Chords ch = chords_at(c, theta);
    VectorXd T[4];
    for (int i = 0; i < 4; ++i) T[i] = c.velocity(theta[i]);
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    Eigen::Vector4d row;
    row.setZero();
    add_ratio_grad(ch, T, 0, 1, 3, 1.0, row);  // s124
    J.row(0) = row;
    row.setZero();
    add_ratio_grad(ch, T, 1, 2, 0, 1.0, row);  // s231
    J.row(1) = row;
    row.setZero();
    add_ratio_grad(ch, T, 2, 3, 1, 1.0, row);  // s342
    J.row(2) = row;
    row.setZero();
    add_ratio_grad(ch, T, 0, 2, 1, 1.0, row);   // s132
    add_ratio_grad(ch, T, 1, 3, 0, -1.0, row);  // -s241
    J.row(3) = row;
    return J;
}

Certificate certificate(const Eigen::Matrix4d& jac) {
    Certificate cert;
    cert.det = jac.determinant();
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(jac);
    const auto& sv = svd.singularValues();
    cert.condition = sv[3] > 0 ? sv[0] / sv[3] : std::numeric_limits<double>::infinity();
    const double scale = jac.norm() / 2.0;  // rms row norm
    cert.transverse =
        std::abs(cert.det) > 1e-8 * scale * scale * scale * scale && cert.condition < 1e8;
    return cert;
}

std::optional<double> newton_refine(const ClosedCurve& c, Eigen::Vector4d& theta, double tol,
                                    int max_iterations) {
    Eigen::Vector4d th = theta;
    double n;
    try {
        n = residual(c, th).norm();
    } catch (const degenerate_error&) {
        return std::nullopt;
    }
    for (int it = 0; it < max_iterations; ++it) {
        if (n < tol) {
            theta = th;
            return n;
        }
        Eigen::Vector4d r;
        Eigen::Matrix4d J;
        try {
            r = residual(c, th);
            J = jacobian(c, th);
        } catch (const degenerate_error&) {
            return std::nullopt;
        }
        const Eigen::Vector4d dth = J.partialPivLu().solve(-r);
        if (!dth.allFinite()) return std::nullopt;
        // Armijo backtracking on the residual norm
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 24; ++ls) {
            const Eigen::Vector4d trial = th + lambda * dth;
            double tn;
            try {
                tn = residual(c, trial).norm();
            } catch (const degenerate_error&) {
                lambda *= 0.5;
                continue;
            }
            if (tn < (1.0 - 1e-4 * lambda) * n) {
                th = trial;
                n = tn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) return std::nullopt;
    }
    if (n < tol) {
        theta = th;
        return n;
    }
    return std::nullopt;
}

namespace {

Eigen::Vector4d wrap4(const Eigen::Vector4d& theta) {
    Eigen::Vector4d w;
    for (int i = 0; i < 4; ++i) w[i] = wrap_angle(theta[i]);
    return w;
}

// Rotate the labels so theta[0] is smallest; returns nullopt when the labels
// do not run in cyclic order along the curve.
std::optional<Eigen::Vector4d> canonicalize(const Eigen::Vector4d& theta) {
    const Eigen::Vector4d w = wrap4(theta);
    int m = 0;
    for (int i = 1; i < 4; ++i)
        if (w[i] < w[m]) m = i;
    Eigen::Vector4d out;
    for (int i = 0; i < 4; ++i) out[i] = w[(m + i) % 4];
    for (int i = 0; i + 1 < 4; ++i)
        if (!(out[i] < out[i + 1])) return std::nullopt;
    return out;
}

double circ_dist(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTau - d);
}

// Orbit distance modulo cyclic relabeling.
double orbit_distance(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 4; ++s) {
        double m = 0;
        for (int i = 0; i < 4; ++i) m = std::max(m, circ_dist(a[i], b[(i + s) % 4]));
        best = std::min(best, m);
    }
    return best;
}

}  // namespace

double default_min_side(const ClosedCurve& c) {
    const double diam = curve_diameter(c);
    double floor_pid = 0.0;
    try {
        floor_pid = 0.5 * pi_distance(c, 512);
    } catch (const internal_error&) {
        // fall through to the diameter-based floor
    }
    return std::max(1e-3 * diam, floor_pid);
}

Solution make_solution(const ClosedCurve& c, const Eigen::Vector4d& theta) {
    Solution s;
    s.theta = theta;
    const Chords ch = chords_at(c, theta);
    s.vertices = ch.p;
    s.side = (ch.L[0][1] + ch.L[1][2] + ch.L[2][3] + ch.L[3][0]) / 4.0;
    s.diagonal = (ch.L[0][2] + ch.L[1][3]) / 2.0;
    s.residual_norm = residual_from(ch).norm();
    s.jac = jacobian(c, theta);
    s.cert = certificate(s.jac);
    s.sign = s.cert.transverse ? (s.cert.det > 0 ? 1 : -1) : 0;
    return s;
}

int intersection_sign(const Solution& sol) {
    if (!sol.cert.transverse)
        throw constraint_error("intersection sign undefined for a non-transverse solution");
    return sol.cert.det > 0 ? 1 : -1;
}

std::array<Solution, 4> relabelings(const ClosedCurve& c, const Orbit& orbit) {
    std::array<Solution, 4> out;
    Eigen::Vector4d th = orbit.canonical.theta;
    for (int s = 0; s < 4; ++s) {
        out[s] = make_solution(c, th);
        const Eigen::Vector4d prev = th;
        for (int i = 0; i < 4; ++i) th[i] = prev[(i + 1) % 4];
    }
    return out;
}

std::vector<Orbit> find_squares(const ClosedCurve& c, const Options& opts) {
    if (c.dimension() != 2 && c.dimension() != 3)
        throw size_error("find_squares expects a planar or 3-space curve");
    const double min_side = opts.min_side >= 0 ? opts.min_side : default_min_side(c);

    const int g = opts.grid;
    std::vector<std::array<int, 4>> starts;
    starts.reserve(static_cast<std::size_t>(g) * (g - 1) * (g - 2) * (g - 3) / 24);
    for (int a = 0; a < g; ++a)
        for (int b = a + 1; b < g; ++b)
            for (int d = b + 1; d < g; ++d)
                for (int e = d + 1; e < g; ++e) starts.push_back({a, b, d, e});

    std::vector<std::vector<Eigen::Vector4d>> found(thread_count());
    std::atomic<unsigned> next_slot{0};
    std::mutex slot_mutex;
    parallel_for(starts.size(), [&](std::size_t lo, std::size_t hi) {
        unsigned slot;
        {
            std::lock_guard<std::mutex> lock(slot_mutex);
            slot = next_slot++;
        }
        auto& local = found[slot % found.size()];
        for (std::size_t s = lo; s < hi; ++s) {
            Eigen::Vector4d th;
            for (int i = 0; i < 4; ++i) th[i] = kTau * starts[s][i] / g;
            if (!newton_refine(c, th, opts.tol, opts.max_iterations)) continue;
            const auto canon = canonicalize(th);
            if (!canon) continue;
            try {
                const Chords ch = chords_at(c, *canon);
                const double side = (ch.L[0][1] + ch.L[1][2] + ch.L[2][3] + ch.L[3][0]) / 4.0;
                if (side < min_side) continue;
            } catch (const degenerate_error&) {
                continue;
            }
            local.push_back(*canon);
        }
    });

    std::vector<Eigen::Vector4d> all;
    for (const auto& v : found) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end(), [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
        for (int i = 0; i < 4; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });

    std::vector<Orbit> orbits;
    for (const auto& th : all) {
        bool dup = false;
        for (const auto& o : orbits)
            if (orbit_distance(th, o.canonical.theta) < opts.dedupe_tol) {
                dup = true;
                break;
            }
        if (dup) continue;
        Orbit o;
        o.canonical = make_solution(c, th);
        orbits.push_back(std::move(o));
    }
    return orbits;
}

}  // namespace inscribe::slq
