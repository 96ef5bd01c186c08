#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "billiards/billiard_map.hpp"
#include "billiards/csv.hpp"
#include "billiards/domain_io.hpp"
#include "billiards/errors.hpp"
#include "billiards/integrable.hpp"
#include "billiards/lazutkin.hpp"
#include "billiards/rigidity.hpp"
#include "billiards/spectrum.hpp"
#include "billiards/svg.hpp"

namespace fs = std::filesystem;
using namespace billiards;

namespace {

/// Named tolerance registry; every subcommand echoes the effective values
/// into its CSV header comment.
struct Tolerances {
    std::map<std::string, double> values{
        {"orbit-residual", 1e-10},  // accepted reflection-law defect of periodic orbits
        {"orbit-converge", 1e-12},  // Newton convergence target for the orbit solver
        {"delta", 1e-6},            // rigidity sup|Delta| bound for "similar"
        {"alpha", 1e-8},            // rigidity alpha-residual bound for "similar"
        {"separatrix", 1e-9},       // caustic classification margin around the separatrix
    };

    void apply(const std::vector<std::string>& overrides) {
        for (const std::string& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--tolerance expects <name>=<value>, got: " + ov);
            const std::string name = ov.substr(0, eq);
            if (!values.count(name)) throw CLI::ValidationError("unknown tolerance name: " + name);
            values[name] = std::stod(ov.substr(eq + 1));
        }
    }

    std::string echo() const {
        std::ostringstream os;
        os << "tolerances:";
        for (const auto& [k, v] : values) os << ' ' << k << '=' << csv::g17(v);
        return os.str();
    }

    OrbitSearchOptions orbit_options() const {
        OrbitSearchOptions o;
        o.accept_residual = values.at("orbit-residual");
        o.residual_tol = values.at("orbit-converge");
        return o;
    }
    RigidityOptions rigidity_options() const {
        RigidityOptions o;
        o.tol_delta = values.at("delta");
        o.tol_alpha = values.at("alpha");
        return o;
    }
    CausticClassifyOptions caustic_options() const {
        CausticClassifyOptions o;
        o.separatrix_tol = values.at("separatrix");
        return o;
    }
};

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw DomainError("cannot write output file: " + (dir / name).string());
    return out;
}

int run_simulate(const std::string& domain_path, double s0, double phi0, std::size_t n,
                 const fs::path& out_dir, int caustic_scan, const Tolerances& tol) {
    const ConvexDomain dom = build_domain(read_domain_file(domain_path));
    const Orbit orbit = iterate(dom, {s0, phi0}, n);

    auto csv = open_output(out_dir, "orbit.csv");
    write_orbit_csv(csv, dom, orbit, tol.echo());
    auto svg = open_output(out_dir, "orbit.svg");
    write_orbit_svg(svg, dom, orbit);

    const bool is_proper_ellipse = dom.kind() == DomainKind::ellipse &&
                                   dom.spec().semi_major > dom.spec().semi_minor;
    if (is_proper_ellipse) {
        auto integral_csv = open_output(out_dir, "integral.csv");
        integral_csv << "# " << tol.echo() << "\n";
        integral_csv << "k,I,defect\n";
        const double I0 = elliptic_first_integral(dom, dom.param_of_arclength(orbit.points[0].s),
                                                  orbit.points[0].phi);
        for (std::size_t k = 0; k < orbit.points.size(); ++k) {
            const double I = elliptic_first_integral(
                dom, dom.param_of_arclength(orbit.points[k].s), orbit.points[k].phi);
            integral_csv << k << ',' << csv::g17(I) << ',' << csv::g17(I - I0) << "\n";
        }
    }
    if (caustic_scan > 0) {
        if (!is_proper_ellipse)
            throw DomainError("--caustic-scan requires a non-circular ellipse domain");
        std::vector<double> levels;
        const double I_max = elliptic_first_integral(dom, 0.0, 0.0);
        for (int i = 0; i < caustic_scan; ++i)
            levels.push_back(I_max * (i + 0.5) / caustic_scan);
        auto scan_csv = open_output(out_dir, "caustic_scan.csv");
        write_caustic_scan_csv(scan_csv, dom, levels, tol.echo(), tol.caustic_options());
    }
    if (!orbit.complete) {
        std::cerr << "orbit stopped early at step " << orbit.failed_index << ": " << orbit.failure
                  << "\n";
        return 3;
    }
    std::cout << "wrote " << (out_dir / "orbit.csv").string() << " (" << orbit.points.size()
              << " points)\n";
    return 0;
}

int run_orbits(const std::string& domain_path, int p, int q, const fs::path& out_dir,
               const Tolerances& tol) {
    const ConvexDomain dom = build_domain(read_domain_file(domain_path));
    const PeriodicOrbit orbit = find_periodic_orbit(dom, p, q, nullptr, tol.orbit_options());

    Orbit phase;
    for (int k = 0; k < q; ++k) {
        const double s = orbit.nodes[k];
        const double s_next = orbit.nodes[(k + 1) % q];
        phase.points.push_back({s, chord(dom, s, s_next).phi});
    }
    auto csv = open_output(out_dir, "orbit.csv");
    write_orbit_csv(csv, dom, phase, tol.echo());
    auto svg = open_output(out_dir, "orbit.svg");
    Orbit closed = phase;
    closed.points.push_back(phase.points.front());
    write_orbit_svg(svg, dom, closed);

    std::cout << "p=" << p << " q=" << q << " length=" << csv::g17(orbit.total_length)
              << " beta=" << csv::g17(-orbit.total_length / q)
              << " residual=" << csv::g17(orbit.residual) << "\n";
    return 0;
}

int run_spectrum(const std::string& domain_path, int q_max, const fs::path& out_dir,
                 const Tolerances& tol) {
    const ConvexDomain dom = build_domain(read_domain_file(domain_path));
    const auto entries = marked_length_spectrum(dom, q_max, Exec::parallel, tol.orbit_options());
    auto csv = open_output(out_dir, "spectrum.csv");
    write_spectrum_csv(csv, entries, tol.echo());
    std::size_t converged = 0;
    for (const auto& e : entries) converged += e.orbit.has_value();
    std::cout << converged << "/" << entries.size() << " entries converged\n";
    return converged * 10 >= entries.size() * 9 ? 0 : 3;
}

int run_rigidity(const std::string& path_a, const std::string& path_b, const fs::path& out_dir,
                 const Tolerances& tol) {
    const ConvexDomain a = build_domain(read_domain_file(path_a));
    const ConvexDomain b = build_domain(read_domain_file(path_b));
    const RigidityReport rep = similarity_test(a, b, tol.rigidity_options());
    auto csv = open_output(out_dir, "rigidity.csv");
    write_rigidity_csv(csv, rep, tol.echo());
    std::cout << render_rigidity_report(rep);
    switch (rep.verdict) {
        case Verdict::similar: return 0;
        case Verdict::not_similar: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 2;
}

int run_lazutkin(const std::string& domain_path, const fs::path& out_dir, const Tolerances& tol) {
    const ConvexDomain dom = build_domain(read_domain_file(domain_path));
    const NormalFormExponents rep = normal_form_exponents(dom);
    auto csv = open_output(out_dir, "lazutkin.csv");
    write_lazutkin_csv(csv, rep, tol.echo());
    if (rep.x_at_noise_floor)
        std::cout << "slope_x: defect at noise floor\n";
    else
        std::cout << "slope_x=" << csv::g17(rep.slope_x) << "\n";
    if (rep.y_at_noise_floor)
        std::cout << "slope_y: defect at noise floor\n";
    else
        std::cout << "slope_y=" << csv::g17(rep.slope_y) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar convex billiards: orbits, spectra, Lazutkin charts, rigidity"};
    app.require_subcommand(1);

    std::string domain_path, domain_b_path, out_dir = ".";
    std::vector<std::string> tol_overrides;
    double s0 = 0.0, phi0 = std::numbers::pi / 3;
    std::size_t n = 100;
    int q_max = 8, orbit_p = 1, orbit_q = 3, caustic_scan = 0;

    auto add_common = [&](CLI::App* cmd, bool with_domain = true) {
        if (with_domain)
            cmd->add_option("--domain", domain_path, "domain description file")->required();
        cmd->add_option("--out", out_dir, "output directory (created if missing)");
        cmd->add_option("--tolerance", tol_overrides, "override a named tolerance, <name>=<value>");
    };

    CLI::App* sim = app.add_subcommand("simulate", "iterate an orbit, emit CSV + SVG");
    add_common(sim);
    sim->add_option("--s0", s0, "starting arc length");
    sim->add_option("--phi0", phi0, "starting angle in (0, pi)");
    sim->add_option("--n", n, "number of bounces")->required();
    sim->add_option("--caustic-scan", caustic_scan, "emit a caustic classification scan (ellipses)");

    CLI::App* orb = app.add_subcommand("orbits", "find a maximal p/q Birkhoff orbit");
    add_common(orb);
    orb->add_option("--p", orbit_p, "winding number")->required();
    orb->add_option("--q", orbit_q, "period (number of reflections)")->required();

    CLI::App* spec = app.add_subcommand("spectrum", "marked length spectrum up to --qmax");
    add_common(spec);
    spec->add_option("--qmax", q_max, "largest period")->required();

    CLI::App* rig = app.add_subcommand("rigidity", "similarity test of two domains");
    rig->add_option("domain_a", domain_path, "first domain file")->required();
    rig->add_option("domain_b", domain_b_path, "second domain file")->required();
    add_common(rig, false);

    CLI::App* laz = app.add_subcommand("lazutkin", "normal-form defect diagnostics");
    add_common(laz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        Tolerances tol;
        tol.apply(tol_overrides);
        if (sim->parsed()) return run_simulate(domain_path, s0, phi0, n, out_dir, caustic_scan, tol);
        if (orb->parsed()) return run_orbits(domain_path, orbit_p, orbit_q, out_dir, tol);
        if (spec->parsed()) return run_spectrum(domain_path, q_max, out_dir, tol);
        if (rig->parsed()) return run_rigidity(domain_path, domain_b_path, out_dir, tol);
        if (laz->parsed()) return run_lazutkin(domain_path, out_dir, tol);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
