#include "inscribe/simplex.hpp"

#include "inscribe/expr.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace inscribe::simplex {

namespace {

// Pole-free unit grid: Fibonacci sphere for k = 3, uniform angles for k = 2.
std::vector<VectorXd> unit_grid(int k, int n) {
    std::vector<VectorXd> g;
    g.reserve(n);
    if (k == 2) {
        for (int i = 0; i < n; ++i) {
            Eigen::Vector2d u(std::cos(kTau * i / n), std::sin(kTau * i / n));
            g.emplace_back(u);
        }
        return g;
    }
    const double golden = kPi * (1.0 + std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = golden * i;
        Eigen::Vector3d u(rho * std::cos(a), rho * std::sin(a), z);
        g.emplace_back(u);
    }
    return g;
}

}  // namespace

RadialSurface::RadialSurface(int k, std::function<double(const VectorXd&)> r, std::string desc)
    : k_(k), r_(std::move(r)), desc_(std::move(desc)) {
    if (k_ != 2 && k_ != 3) throw size_error("radial surfaces support k = 2 or 3");
    double sum = 0;
    for (const auto& u : unit_grid(k_, 512)) {
        const double v = r_(u);
        if (!(v > 0)) throw degenerate_error("surface radius must be positive on the check grid");
        sum += v;
    }
    mean_ = sum / 512.0;
    // denser positivity sweep
    for (const auto& u : unit_grid(k_, 4096))
        if (!(r_(u) > 0)) throw degenerate_error("surface radius must be positive on the check grid");
}

RadialSurface RadialSurface::sphere(int k, double radius) {
    if (!(radius > 0)) throw degenerate_error("sphere radius must be positive");
    return RadialSurface(k, [radius](const VectorXd&) { return radius; },
                         "sphere r=" + std::to_string(radius));
}

RadialSurface RadialSurface::expression(const std::string& expr) {
    Expression e = Expression::parse(expr);
    auto r = [e](const VectorXd& u) {
        const double z = std::clamp(u[2], -1.0, 1.0);
        const double phi = std::acos(z);
        const double theta = wrap_angle(std::atan2(u[1], u[0]));
        return e(phi, theta);
    };
    return RadialSurface(3, std::move(r), expr);
}

RadialSurface RadialSurface::planar(double c0, VectorXd cos_coeffs, VectorXd sin_coeffs) {
    auto r = [c0, cos_coeffs, sin_coeffs](const VectorXd& u) {
        const double t = std::atan2(u[1], u[0]);
        double v = c0;
        for (Eigen::Index m = 0; m < cos_coeffs.size(); ++m) v += cos_coeffs[m] * std::cos((m + 1) * t);
        for (Eigen::Index m = 0; m < sin_coeffs.size(); ++m) v += sin_coeffs[m] * std::sin((m + 1) * t);
        return v;
    };
    return RadialSurface(2, std::move(r), "planar radial curve");
}

MatrixXd model_simplex(const SimplexDistanceRatioD& ratio) {
    const auto cls = classify(ratio);
    if (cls.tag != RatioTag::ConstructibleNondegenerate)
        throw constructibility_error("model simplex needs a constructible, nondegenerate ratio");
    const int k = ratio.k();
    const MatrixXd& d = ratio.d();

    // Gram matrix of p_(i+1) - p_0:  G_ij = (d0i^2 + d0j^2 - dij^2)/2
    MatrixXd g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            g(i, j) = 0.5 * (d(0, i + 1) * d(0, i + 1) + d(0, j + 1) * d(0, j + 1) -
                             d(i + 1, j + 1) * d(i + 1, j + 1));
    const Eigen::LLT<MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw constructibility_error("Gram factorization failed for the distance ratio");
    const MatrixXd x = llt.matrixU();  // columns are the offset vectors

    MatrixXd pts = MatrixXd::Zero(k, k + 1);
    for (int j = 0; j < k; ++j) pts.col(j + 1) = x.col(j);

    // circumcenter: 2 q_i . o = |q_i|^2 (q_0 = 0)
    MatrixXd a(k, k);
    VectorXd b(k);
    for (int i = 0; i < k; ++i) {
        a.row(i) = 2.0 * pts.col(i + 1).transpose();
        b[i] = pts.col(i + 1).squaredNorm();
    }
    const VectorXd center = a.partialPivLu().solve(b);
    pts.colwise() -= center;
    pts /= pts.col(0).norm();  // circumradius 1

    // positive orientation of [p_0 - p_k, ..., p_{k-1} - p_k]
    MatrixXd m(k, k);
    for (int i = 0; i < k; ++i) m.col(i) = pts.col(i) - pts.col(k);
    if (m.determinant() < 0) pts.row(k - 1) *= -1.0;
    return pts;
}

namespace {

VectorXd inscribe_residual(const RadialSurface& surface, const MatrixXd& rotated_model, double s,
                           const VectorXd& t) {
    const int m = static_cast<int>(rotated_model.cols());
    VectorXd f(m);
    for (int i = 0; i < m; ++i) {
        const VectorXd p = s * rotated_model.col(i) + t;
        const double n = p.norm();
        if (n < 1e-12) {
            f[i] = -surface.mean_radius();  // collapsed to the origin
            continue;
        }
        f[i] = n - surface.radius(p / n);
    }
    return f;
}

struct NewtonResult {
    bool ok = false;
    double s = 0;
    VectorXd t;
    double resnorm = 0;
};

NewtonResult inscribe_newton(const RadialSurface& surface, const MatrixXd& rotated_model,
                             double s0, const VectorXd& t0, double tol, int max_iter = 60) {
    const int k = surface.dimension();
    VectorXd x(k + 1);
    x[0] = s0;
    x.tail(k) = t0;
    auto eval = [&](const VectorXd& y) {
        return inscribe_residual(surface, rotated_model, y[0], y.tail(k));
    };
    VectorXd f = eval(x);
    double n = f.norm();
    for (int it = 0; it < max_iter; ++it) {
        if (n < tol) break;
        // central finite-difference Jacobian; the system is tiny
        MatrixXd J(k + 1, k + 1);
        for (int j = 0; j <= k; ++j) {
            const double h = 1e-7 * (1.0 + std::abs(x[j]));
            VectorXd xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            J.col(j) = (eval(xp) - eval(xm)) / (2 * h);
        }
        const VectorXd dx = J.partialPivLu().solve(-f);
        if (!dx.allFinite()) break;
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 22; ++ls) {
            const VectorXd trial = x + lambda * dx;
            const VectorXd ft = eval(trial);
            if (ft.norm() < (1.0 - 1e-4 * lambda) * n) {
                x = trial;
                f = ft;
                n = f.norm();
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    NewtonResult r;
    r.ok = n < tol;
    r.s = x[0];
    r.t = x.tail(k);
    r.resnorm = n;
    return r;
}

}  // namespace

InscribedSimplex inscribe(const RadialSurface& surface, const SimplexDistanceRatioD& ratio,
                          const MatrixXd& rotation, const InscribeOptions& opts) {
    const int k = surface.dimension();
    if (ratio.k() != k) throw size_error("distance ratio dimension must match the surface");
    if (rotation.rows() != k || rotation.cols() != k) throw size_error("rotation must be k x k");
    if (std::abs(rotation.determinant() - 1.0) > 1e-8 ||
        (rotation.transpose() * rotation - MatrixXd::Identity(k, k)).norm() > 1e-8)
        throw degenerate_error("rotation must be special orthogonal");

    const MatrixXd model = model_simplex(ratio);
    const MatrixXd rm = rotation * model;
    const double s_mean = surface.mean_radius();  // model circumradius is 1
    const double s_floor = 0.05 * s_mean;

    std::vector<std::pair<double, VectorXd>> starts;
    {
        // radial projection of the rotated model directions, linear (s,t) fit
        const int m = k + 1;
        MatrixXd q(k, m);
        for (int i = 0; i < m; ++i) {
            const VectorXd u = rm.col(i) / rm.col(i).norm();
            q.col(i) = surface.radius(u) * u;
        }
        VectorXd su = VectorXd::Zero(k), sq = VectorXd::Zero(k);
        double c1 = 0;
        for (int i = 0; i < m; ++i) {
            su += rm.col(i);
            sq += q.col(i);
            c1 += q.col(i).dot(rm.col(i));
        }
        const double denom = m * rm.squaredNorm() - su.squaredNorm();
        double s = denom > 1e-12 ? (m * c1 - su.dot(sq)) / denom : s_mean;
        s = std::max(s, 0.1 * s_mean);
        starts.emplace_back(s, VectorXd((sq - s * su) / m));
    }
    starts.emplace_back(s_mean, VectorXd::Zero(k));
    Rng rng(opts.seed);
    for (int r = 0; r < opts.restarts; ++r) {
        const double s = s_mean * (1.0 + rng.uniform(-0.3, 0.3));
        VectorXd t(k);
        for (int i = 0; i < k; ++i) t[i] = 0.35 * s_mean * rng.normal();
        starts.emplace_back(s, std::move(t));
    }
    if (opts.fallback_grid) {
        for (const double fs : {0.4, 0.6, 0.8, 1.0, 1.2}) {
            std::vector<double> offs = {-0.6 * s_mean, 0.0, 0.6 * s_mean};
            std::vector<VectorXd> ts;
            if (k == 2) {
                for (double x : offs)
                    for (double y : offs) ts.push_back(Eigen::Vector2d(x, y));
            } else {
                for (double x : offs)
                    for (double y : offs)
                        for (double z : offs) ts.push_back(Eigen::Vector3d(x, y, z));
            }
            for (auto& t : ts) starts.emplace_back(fs * s_mean, std::move(t));
        }
    }

    for (const auto& [s0, t0] : starts) {
        const NewtonResult nr = inscribe_newton(surface, rm, s0, t0, opts.tol);
        if (!nr.ok || nr.s < s_floor) continue;
        InscribedSimplex out;
        out.rotation = rotation;
        out.scale = nr.s;
        out.translation = nr.t;
        out.vertices = nr.s * rm;
        out.vertices.colwise() += nr.t;
        out.residual_norm = nr.resnorm;
        return out;
    }
    throw convergence_error("inscribe: Newton failed from all starts");
}

MatrixXd orientation_projection(const ConfigurationD& cfg) {
    const int k = cfg.dimension();
    if (cfg.size() != k + 1) throw size_error("orientation projection needs k+1 points in R^k");
    MatrixXd a(k, k);
    for (int j = 1; j <= k; ++j) a.col(j - 1) = direction(cfg, 0, j);
    // classical Gram-Schmidt; breakdown signals affine dependence
    MatrixXd q(k, k);
    for (int j = 0; j < k; ++j) {
        VectorXd v = a.col(j);
        for (int i = 0; i < j; ++i) v -= q.col(i).dot(a.col(j)) * q.col(i);
        const double n = v.norm();
        if (n < 1e-10) throw rank_error("affinely dependent configuration");
        q.col(j) = v / n;
    }
    return q;
}

SweepResult sweep_rotations(const RadialSurface& surface, const SimplexDistanceRatioD& ratio,
                            int m, std::uint64_t seed, int loop_steps) {
    const int k = surface.dimension();
    SweepResult out;
    out.summary.requested = m;
    std::vector<MatrixXd> rotations(m);
    {
        Rng rng(seed);
        for (int i = 0; i < m; ++i) rotations[i] = rng.rotation(k);
    }
    std::vector<std::optional<InscribedSimplex>> sols(m);
    parallel_for(m, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            InscribeOptions opts;
            opts.seed = seed ^ (0x9e3779b97f4a7c15ull * (i + 1));
            try {
                sols[i] = inscribe(surface, ratio, rotations[i], opts);
            } catch (const convergence_error&) {
                sols[i] = std::nullopt;
            }
        }
    });
    bool first = true;
    for (int i = 0; i < m; ++i) {
        if (!sols[i]) {
            out.summary.failed_indices.push_back(i);
            continue;
        }
        const auto& s = *sols[i];
        out.solutions.push_back(s);
        const double tn = s.translation.norm();
        if (first) {
            out.summary.s_min = out.summary.s_max = s.scale;
            out.summary.t_norm_min = out.summary.t_norm_max = tn;
            first = false;
        } else {
            out.summary.s_min = std::min(out.summary.s_min, s.scale);
            out.summary.s_max = std::max(out.summary.s_max, s.scale);
            out.summary.t_norm_min = std::min(out.summary.t_norm_min, tn);
            out.summary.t_norm_max = std::max(out.summary.t_norm_max, tn);
        }
    }
    out.summary.succeeded = static_cast<int>(out.solutions.size());

    // one-parameter rotation loop, warm-started; failed steps retry by
    // subdividing the rotation increment before being counted lost
    out.summary.loop_steps = loop_steps;
    const MatrixXd model = model_simplex(ratio);
    auto loop_rotation = [&](double ang) {
        MatrixXd r = MatrixXd::Identity(k, k);
        r(0, 0) = std::cos(ang);
        r(0, 1) = -std::sin(ang);
        r(1, 0) = std::sin(ang);
        r(1, 1) = std::cos(ang);
        return r;
    };
    double prev_s = 0;
    VectorXd prev_t;
    bool have_prev = false;
    for (int step = 0; step <= loop_steps; ++step) {
        const double ang = kTau * step / loop_steps;
        const MatrixXd rm = loop_rotation(ang) * model;
        NewtonResult nr;
        if (have_prev) {
            nr = inscribe_newton(surface, rm, prev_s, prev_t, 1e-10);
            if (!nr.ok || nr.s < 0.05 * surface.mean_radius()) {
                // subdivide the step from the previous angle
                const double ang0 = kTau * (step - 1) / loop_steps;
                double ws = prev_s;
                VectorXd wt = prev_t;
                bool fine_ok = true;
                for (int sub = 1; sub <= 8; ++sub) {
                    const MatrixXd rsub = loop_rotation(ang0 + (ang - ang0) * sub / 8.0) * model;
                    const NewtonResult ns = inscribe_newton(surface, rsub, ws, wt, 1e-10);
                    if (!ns.ok || ns.s < 0.05 * surface.mean_radius()) {
                        fine_ok = false;
                        break;
                    }
                    ws = ns.s;
                    wt = ns.t;
                }
                if (fine_ok) {
                    nr.ok = true;
                    nr.s = ws;
                    nr.t = wt;
                }
            }
        } else {
            try {
                InscribeOptions opts;
                opts.seed = seed ^ 0xabcdef12345ull;
                const auto sol = inscribe(surface, ratio, loop_rotation(ang), opts);
                nr.ok = true;
                nr.s = sol.scale;
                nr.t = sol.translation;
            } catch (const convergence_error&) {
                nr.ok = false;
            }
        }
        if (!nr.ok) {
            ++out.summary.loop_lost;
            have_prev = false;
            continue;
        }
        if (have_prev) {
            const double jump = std::sqrt((nr.s - prev_s) * (nr.s - prev_s) +
                                          (nr.t - prev_t).squaredNorm());
            out.summary.loop_max_jump = std::max(out.summary.loop_max_jump, jump);
        }
        prev_s = nr.s;
        prev_t = nr.t;
        have_prev = true;
    }
    return out;
}

}  // namespace inscribe::simplex
