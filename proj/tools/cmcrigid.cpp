#include <CLI11.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cmcrigid/alignment.hpp"
#include "cmcrigid/certify.hpp"
#include "cmcrigid/delaunay.hpp"
#include "cmcrigid/mesh.hpp"
#include "cmcrigid/report.hpp"
#include "cmcrigid/weierstrass.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

cmcr::LoopSpec parse_loop(const std::string& text, bool ccw)
{
    double cx = 0.0, cy = 0.0, r = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> cx >> c1 >> cy >> c2 >> r) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--loop", "expected cx,cy,radius");
    return cmcr::LoopSpec::circle(cmcr::Complex(cx, cy), r, ccw);
}

void write_text_atomic(const std::string& path, const std::string& body)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open output file: " + tmp);
        os << body;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename output into place: " + path);
}

void emit(const std::string& out_path, const std::string& body)
{
    if (out_path.empty())
        std::cout << body;
    else
        write_text_atomic(out_path, body);
}

int run_flux(const std::string& surface, const std::string& loop_text, bool cw, double tol)
{
    const cmcr::WeierstrassSurface s = cmcr::catalog(surface);
    const cmcr::LoopSpec loop = parse_loop(loop_text, !cw);
    const cmcr::FluxVector f = cmcr::flux(s, loop);
    std::ostringstream os;
    os.precision(17);
    os << "surface " << surface << "\n";
    os << "loop " << loop.center.real() << "," << loop.center.imag() << "," << loop.radius
       << (loop.ccw ? " ccw" : " cw") << "\n";
    os << "flux " << f.v[0] << " " << f.v[1] << " " << f.v[2] << "\n";
    os << "real_period " << f.real_part[0] << " " << f.real_part[1] << " " << f.real_part[2] << "\n";
    os << "quadrature_error " << f.quadrature_error << "\n";
    os << "verdict " << (f.v.cwiseAbs().maxCoeff() > tol ? "nonzero-flux" : "zero-flux") << "\n";
    std::cout << os.str();
    return kExitOk;
}

int run_certify(const std::string& kind, const std::string& value, int n_theta, double tol,
                const std::string& out_path)
{
    cmcr::RigidityReport rep;
    cmcr::json inputs;
    inputs["kind"] = kind;
    if (kind == "minimal") {
        const cmcr::WeierstrassSurface s = cmcr::catalog(value);
        inputs["surface"] = value;
        std::vector<cmcr::LoopSpec> basis;
        if (!s.simply_connected)
            basis.push_back(cmcr::LoopSpec::circle(s.punctures.at(0), 1.0));
        rep = cmcr::certify_minimal(s, basis, tol);
    } else if (kind == "delaunay") {
        const double r = std::stod(value);
        inputs["r"] = r;
        inputs["n_theta"] = n_theta;
        rep = cmcr::certify_delaunay(cmcr::shape_from_neck_curvature(r), n_theta, tol);
    } else {
        throw CLI::ValidationError("certify", "subject must be 'minimal <name>' or 'delaunay <r>'");
    }
    inputs["tol"] = tol;
    rep.timestamp = utc_timestamp();

    cmcr::ReportDocument doc;
    doc.timestamp = rep.timestamp;
    doc.inputs = inputs;
    doc.report = cmcr::to_json(rep);
    if (!out_path.empty())
        cmcr::write_report_atomic(out_path, doc);
    else
        std::cout << cmcr::to_json(doc).dump(2) << "\n";
    std::cout << "subject " << rep.subject << "\n";
    std::cout << "verdict " << cmcr::to_string(rep.verdict) << "\n";
    return kExitOk;
}

int run_mesh(const std::string& subject, double theta, double r, int res, double umax,
             double vmax, const std::string& out_path)
{
    if (res < 2 || static_cast<long long>(res) * res > 10'000'000)
        throw CLI::ValidationError("--res", "resolution out of bounds");
    cmcr::MeshPatch mesh;
    if (subject == "delaunay") {
        const cmcr::DelaunayShape shape = cmcr::shape_from_neck_curvature(r);
        cmcr::ProfileCurve profile = cmcr::profile_solve(shape, 8.0);
        double span = cmcr::profile_period(profile);
        if (span == 0.0)
            span = M_PI;  // cylinder
        profile = cmcr::profile_solve(shape, span);
        // Decimate the fine integration output to about `res` rows.
        cmcr::ProfileCurve rows;
        rows.force = profile.force;
        const std::size_t stride = std::max<std::size_t>(1, profile.samples.size() / res);
        for (std::size_t i = 0; i < profile.samples.size(); i += stride)
            rows.samples.push_back(profile.samples[i]);
        rows.samples.push_back(profile.samples.back());
        mesh = cmcr::revolve_to_mesh(rows, res);
        mesh.meta["surface"] = "delaunay";
        mesh.meta["r"] = std::to_string(r);
    } else {
        const cmcr::WeierstrassSurface s = cmcr::catalog(subject);
        const bool exponential = subject != "enneper";
        if (s.log_cover && vmax >= M_PI)
            throw CLI::ValidationError("--vmax",
                                       "full turn exceeds the branch-cut bounds of the log cover");
        if (exponential)
            mesh = cmcr::immersion_grid_mesh(s, theta, res, -umax, umax, -vmax, vmax, true);
        else
            mesh = cmcr::immersion_grid_mesh(s, theta, res, -1.0, 1.0, -1.0, 1.0, false);
        mesh.meta["surface"] = subject;
        std::ostringstream ts;
        ts.precision(17);
        ts << theta;
        mesh.meta["theta"] = ts.str();
    }
    mesh.meta["res"] = std::to_string(res);
    std::ostringstream os;
    cmcr::write_obj(os, mesh);
    emit(out_path, os.str());
    return kExitOk;
}

int run_theta_sweep(const std::string& subject, double r, int n, const std::string& out_path)
{
    if (subject != "delaunay")
        throw CLI::ValidationError("theta-sweep", "subject must be 'delaunay'");
    const cmcr::DelaunayShape shape = cmcr::shape_from_neck_curvature(r);
    const cmcr::GapSweep sweep = cmcr::rigidity_gap_sweep(shape, n);
    std::ostringstream os;
    os.precision(17);
    os << "# theta-sweep delaunay r " << r << " n " << n << "\n";
    os << "# columns: theta gap\n";
    for (const auto& [theta, gap] : sweep.table)
        os << theta << " " << gap << "\n";
    os << "# min_gap " << sweep.min_gap << " at theta " << sweep.argmin_theta << "\n";
    emit(out_path, os.str());
    return kExitOk;
}

int run_nodoid_solve(int m_max)
{
    std::ostringstream os;
    os.precision(17);
    os << "# nodoid closure parameters: m r\n";
    for (int m = 1; m <= m_max; ++m)
        os << m << " " << cmcr::nodoid_closure_solve(m) << "\n";
    std::cout << os.str();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rigidity certificates for constant mean curvature surfaces"};
    app.require_subcommand(1);

    std::string surface = "catenoid", loop_text = "0,0,1";
    bool cw = false;
    double tol = 1e-8;
    auto* flux_cmd = app.add_subcommand("flux", "Flux vector of a loop on a catalog minimal surface");
    flux_cmd->add_option("--surface", surface, "catenoid | helicoid | enneper");
    flux_cmd->add_option("--loop", loop_text, "circle as cx,cy,radius");
    flux_cmd->add_flag("--cw", cw, "traverse the loop clockwise");
    flux_cmd->add_option("--tol", tol, "zero-flux threshold");

    std::string cert_kind, cert_value, out_path;
    int n_theta = 4096;
    auto* cert_cmd = app.add_subcommand("certify", "Write a rigidity certificate");
    cert_cmd->add_option("kind", cert_kind, "minimal | delaunay")->required();
    cert_cmd->add_option("value", cert_value, "surface name, or neck curvature r")->required();
    cert_cmd->add_option("--n", n_theta, "theta grid size for delaunay sweeps");
    cert_cmd->add_option("--tol", tol, "witness threshold");
    cert_cmd->add_option("--out", out_path, "output path (atomic write)");

    std::string mesh_subject;
    double theta = 0.0, mesh_r = 3.0, umax = 0.5, vmax = 1.0;
    int res = 64;
    auto* mesh_cmd = app.add_subcommand("mesh", "Export a surface patch as a plain-text mesh");
    mesh_cmd->add_option("subject", mesh_subject, "catenoid | helicoid | enneper | delaunay")->required();
    mesh_cmd->add_option("--theta", theta, "associate angle");
    mesh_cmd->add_option("--r", mesh_r, "delaunay neck curvature");
    mesh_cmd->add_option("--res", res, "grid resolution");
    mesh_cmd->add_option("--umax", umax, "parameter half-width (log coordinates)");
    mesh_cmd->add_option("--vmax", vmax, "parameter half-height (log coordinates)");
    mesh_cmd->add_option("--out", out_path, "output path (atomic write; default stdout)");

    std::string sweep_subject;
    double sweep_r = 3.0;
    int sweep_n = 360;
    auto* sweep_cmd = app.add_subcommand("theta-sweep", "Endpoint-gap table over theta");
    sweep_cmd->add_option("subject", sweep_subject, "delaunay")->required();
    sweep_cmd->add_option("--r", sweep_r, "neck curvature");
    sweep_cmd->add_option("--n", sweep_n, "grid size");
    sweep_cmd->add_option("--out", out_path, "output path (atomic write; default stdout)");

    int m_max = 1;
    auto* nod_cmd = app.add_subcommand("nodoid-solve", "Nodoid closure parameters r(m)");
    nod_cmd->add_option("--m", m_max, "solve for m = 1..M")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (flux_cmd->parsed())
            return run_flux(surface, loop_text, cw, tol);
        if (cert_cmd->parsed())
            return run_certify(cert_kind, cert_value, n_theta, tol, out_path);
        if (mesh_cmd->parsed())
            return run_mesh(mesh_subject, theta, mesh_r, res, umax, vmax, out_path);
        if (sweep_cmd->parsed())
            return run_theta_sweep(sweep_subject, sweep_r, sweep_n, out_path);
        if (nod_cmd->parsed())
            return run_nodoid_solve(m_max);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cmcr::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
