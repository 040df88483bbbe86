#include "inscribe/continuation.hpp"
#include "inscribe/ftc.hpp"
#include "inscribe/records.hpp"
#include "inscribe/simplex.hpp"
#include "inscribe/slq.hpp"
#include "inscribe/specfile.hpp"
#include "inscribe/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace inscribe;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNonTransverse = 4;

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
    if (path.empty()) return nullptr;
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw parse_error("cannot open output file '" + path + "'");
    return f;
}

void write_svg(const std::string& path, const std::string& body) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open SVG file '" + path + "'");
    f << body;
}

int axis_index(const std::string& axis) {
    if (axis == "x") return 0;
    if (axis == "y") return 1;
    if (axis == "z") return 2;
    throw parse_error("--project-axis must be x, y, or z");
}

struct CommonOutput {
    std::string out_path;
    std::string svg_path;
};

int run_find_squares(const std::string& spec, const slq::Options& opts, const CommonOutput& io,
                     const std::string& axis) {
    const auto curve = load_curve_spec(spec);
    const auto orbits = slq::find_squares(*curve, opts);
    auto out = open_out(io.out_path);
    records::Writer writer(out ? *out : std::cout);
    bool any_nontransverse = false;
    for (const auto& o : orbits) {
        writer.write(records::to_json(o));
        any_nontransverse = any_nontransverse || !o.canonical.cert.transverse;
    }
    write_svg(io.svg_path, svg::curve_with_orbits(*curve, orbits, axis_index(axis)));
    std::cout << "orbits: " << orbits.size() << " (" << (orbits.size() % 2 ? "odd" : "even")
              << ")\n";
    if (any_nontransverse) {
        std::cout << "NON-TRANSVERSE family detected\n";
        return kExitNonTransverse;
    }
    return kExitOk;
}

int run_inscribe(const std::string& surface_spec, const std::string& ratio_spec,
                 std::uint64_t seed, const CommonOutput& io, const std::string& axis) {
    const auto surface = load_surface_spec(surface_spec);
    const SimplexDistanceRatioD ratio =
        ratio_spec.empty() ? SimplexDistanceRatioD::regular(surface.dimension())
                           : load_ratio_spec(ratio_spec);
    Rng rng(seed);
    const MatrixXd rotation =
        seed == 0 ? MatrixXd::Identity(surface.dimension(), surface.dimension())
                  : rng.rotation(surface.dimension());
    simplex::InscribeOptions opts;
    opts.seed = seed + 1;
    const auto sol = simplex::inscribe(surface, ratio, rotation, opts);
    auto out = open_out(io.out_path);
    records::Writer writer(out ? *out : std::cout);
    writer.write(records::to_json(sol));
    write_svg(io.svg_path, svg::surface_with_simplex(surface, sol, axis_index(axis)));
    std::cout << "inscribed: scale " << sol.scale << ", residual " << sol.residual_norm << "\n";
    return kExitOk;
}

int run_sweep(const std::string& surface_spec, const std::string& ratio_spec, int samples,
              std::uint64_t seed, const CommonOutput& io) {
    const auto surface = load_surface_spec(surface_spec);
    const SimplexDistanceRatioD ratio =
        ratio_spec.empty() ? SimplexDistanceRatioD::regular(surface.dimension())
                           : load_ratio_spec(ratio_spec);
    const auto result = simplex::sweep_rotations(surface, ratio, samples, seed);
    auto out = open_out(io.out_path);
    records::Writer writer(out ? *out : std::cout);
    for (const auto& s : result.solutions) writer.write(records::to_json(s));
    writer.write(records::to_json(result.summary));
    std::cout << "success " << result.summary.succeeded << "/" << result.summary.requested
              << ", loop max jump " << result.summary.loop_max_jump << "\n";
    return result.summary.succeeded == result.summary.requested ? kExitOk : kExitNoConvergence;
}

int run_trace(const std::string& from_spec, const std::string& to_spec, const slq::Options& sopts,
              int audit_samples, const CommonOutput& io) {
    const auto from = load_curve_spec(from_spec);
    const auto to = load_curve_spec(to_spec);
    const continuation::CurveFamily family(*from, *to);
    continuation::TrackOptions topts;
    topts.solver = sopts;
    const auto seeds = slq::find_squares(*family.at(0.0), sopts);
    const auto paths = continuation::track(family, seeds, topts);
    auto out = open_out(io.out_path);
    records::Writer writer(out ? *out : std::cout);
    for (const auto& p : paths) writer.write(records::to_json(p));
    int events = 0;
    for (const auto& p : paths) events += static_cast<int>(p.events.size());
    bool stalled = false;
    for (const auto& p : paths)
        for (const auto& e : p.events) stalled = stalled || e.kind == continuation::EventKind::Stalled;
    if (audit_samples > 0) {
        const auto report = continuation::parity_audit(family, audit_samples, sopts);
        writer.write(records::to_json(report));
    }
    write_svg(io.svg_path, svg::branch_diagram(paths));
    std::cout << "paths: " << paths.size() << ", events: " << events << "\n";
    return stalled ? kExitNoConvergence : kExitOk;
}

int run_diagnose(const std::string& spec, const slq::Options& sopts, int n, int extract_levels,
                 const CommonOutput& io) {
    const auto curve = load_curve_spec(spec);
    const auto audit = ftc::sidelength_audit(*curve, sopts, n);
    auto out = open_out(io.out_path);
    records::Writer writer(out ? *out : std::cout);
    writer.write(records::to_json(audit));
    if (extract_levels > 0) {
        ftc::ExtractionSchedule sched;
        sched.levels = extract_levels;
        sched.solver = sopts;
        const auto extraction = ftc::limit_extraction(*curve, sched);
        writer.write(records::to_json(extraction));
    }
    write_svg(io.svg_path, svg::diagnose_figure(*curve, pi_distance_detail(*curve, n), n));
    std::cout << "pi-distance: " << audit.pid_minimal
              << (audit.flagged ? " (sidelength below estimate flagged)" : "") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inscribed-configuration solvers: squares in curves, simplices in spheres"};
    app.require_subcommand(1);

    std::string spec, spec_to, ratio_spec, axis = "z";
    CommonOutput io;
    slq::Options sopts;
    int samples = 100;
    int audit_samples = 0;
    int diag_n = 2000;
    int extract_levels = 0;
    std::uint64_t seed = 2024;

    auto add_common = [&](CLI::App* cmd, bool solver_flags) {
        cmd->add_option("--out", io.out_path, "record stream output path (default: stdout)");
        cmd->add_option("--svg", io.svg_path, "SVG figure output path");
        if (solver_flags) {
            cmd->add_option("--grid", sopts.grid, "multi-start grid density per parameter");
            cmd->add_option("--tol", sopts.tol, "solver residual tolerance")->check(CLI::PositiveNumber);
            cmd->add_option("--min-side", sopts.min_side, "minimum quadrilateral side (negative: auto)");
        }
    };

    auto* find = app.add_subcommand("find-squares", "find inscribed square-like quadrilaterals");
    find->add_option("spec", spec, "curve spec file")->required();
    find->add_option("--project-axis", axis, "projection axis for 3D curves (x|y|z)");
    add_common(find, true);

    auto* insc = app.add_subcommand("inscribe-simplex", "inscribe a simplex in a radial surface");
    insc->add_option("spec", spec, "surface spec file")->required();
    insc->add_option("--ratio", ratio_spec, "simplex distance-ratio spec (default: regular)");
    insc->add_option("--seed", seed, "rotation seed (0: identity rotation)");
    insc->add_option("--project-axis", axis, "projection axis (x|y|z)");
    add_common(insc, false);

    auto* sweep = app.add_subcommand("sweep", "inscribe over sampled rotations and a rotation loop");
    sweep->add_option("spec", spec, "surface spec file")->required();
    sweep->add_option("--ratio", ratio_spec, "simplex distance-ratio spec (default: regular)");
    sweep->add_option("--samples", samples, "number of random rotations")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "rotation sampling seed");
    add_common(sweep, false);

    auto* trace = app.add_subcommand("trace", "track squares along a one-parameter curve family");
    trace->add_option("from", spec, "curve spec at t=0")->required();
    trace->add_option("to", spec_to, "curve spec at t=1")->required();
    trace->add_option("--audit", audit_samples, "also run a parity audit with this many samples");
    add_common(trace, true);

    auto* diag = app.add_subcommand("diagnose", "pi-distance and sidelength audit");
    diag->add_option("spec", spec, "curve spec file")->required();
    diag->add_option("--n", diag_n, "polygonization size")->check(CLI::PositiveNumber);
    diag->add_option("--extract", extract_levels, "run limit extraction with this many levels");
    add_common(diag, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (find->parsed()) return run_find_squares(spec, sopts, io, axis);
        if (insc->parsed()) return run_inscribe(spec, ratio_spec, seed, io, axis);
        if (sweep->parsed()) return run_sweep(spec, ratio_spec, samples, seed, io);
        if (trace->parsed()) return run_trace(spec, spec_to, sopts, audit_samples, io);
        if (diag->parsed()) return run_diagnose(spec, sopts, diag_n, extract_levels, io);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const extraction_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
