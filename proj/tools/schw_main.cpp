// Command-line front end: figure data (CSV/SVG), verification reports and
// the extremal studies, all emitted deterministically so the outputs double
// as regression fixtures.
//
// Exit codes: 0 success / all checks pass, 1 verification check failed,
// 2 usage or execution error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schw/analysis.hpp"
#include "schw/distances.hpp"
#include "schw/functionals.hpp"
#include "schw/report.hpp"

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Stream to --out path, or stdout for "-".
class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

struct FigureRequest {
    std::string which = "d";
    std::vector<int> dims{3, 4, 5};
    double rmin = 1.001;
    double rmax = 5.0;
    int samples = 400;
    std::string format = "csv";
    std::string out = "-";
};

double figure_value(const std::string& which, schw::Dimension n, double r) {
    if (which == "d")
        return schw::riemannian_distance(n, r);
    if (which == "delta")
        return schw::critical_delta(n, r);
    if (which == "s")
        return schw::induced_distance(n, r);
    return schw::distance_ratio(n, r); // "ratio" = d/delta
}

struct Curve {
    int n;
    std::vector<double> r, v;
};

std::vector<Curve> figure_curves(const FigureRequest& req) {
    std::vector<int> dims = req.dims;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    std::vector<Curve> curves;
    for (int nv : dims) {
        schw::Dimension n(nv);
        Curve c;
        c.n = nv;
        for (int i = 0; i < req.samples; ++i) {
            const double r =
                req.rmin + (req.rmax - req.rmin) * static_cast<double>(i) / (req.samples - 1);
            c.r.push_back(r);
            c.v.push_back(figure_value(req.which, n, r));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

void write_csv(std::ostream& os, const std::vector<Curve>& curves) {
    os << "r,n,value\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.r.size(); ++i)
            os << fmt17(c.r[i]) << ',' << c.n << ',' << fmt17(c.v[i]) << '\n';
}

void write_svg(std::ostream& os, const std::vector<Curve>& curves) {
    const double W = 640, H = 480, m = 50;
    double rlo = curves[0].r.front(), rhi = curves[0].r.back();
    double vlo = 0.0, vhi = -1e300;
    for (const auto& c : curves)
        for (double v : c.v)
            vhi = std::max(vhi, v);
    if (vhi <= vlo)
        vhi = vlo + 1.0;
    auto X = [&](double r) { return m + (W - 2 * m) * (r - rlo) / (rhi - rlo); };
    auto Y = [&](double v) { return H - m - (H - 2 * m) * (v - vlo) / (vhi - vlo); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
          "viewBox=\"0 0 640 480\">\n";
    os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\""
       << H - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << m << "\" y=\"" << H - m + 20 << "\" font-size=\"12\">r=" << fmt17(rlo)
       << "</text>\n";
    os << "<text x=\"" << W - m - 60 << "\" y=\"" << H - m + 20 << "\" font-size=\"12\">r="
       << fmt17(rhi) << "</text>\n";
    os << "<text x=\"5\" y=\"" << m << "\" font-size=\"12\">" << fmt17(vhi) << "</text>\n";
    int k = 0;
    for (const auto& c : curves) {
        os << "<polyline fill=\"none\" stroke=\"" << palette[k % 6] << "\" points=\"";
        for (std::size_t i = 0; i < c.r.size(); ++i) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f,%.3f ", X(c.r[i]), Y(c.v[i]));
            os << buf;
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - m + 4 << "\" y=\"" << Y(c.v.back()) << "\" font-size=\"12\">n="
           << c.n << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy and Heisenberg inequalities outside a Schwarzschild black hole"};
    app.require_subcommand(1);

    FigureRequest fig;
    auto* cmd_figure = app.add_subcommand("figure", "emit distance curves as CSV or SVG");
    cmd_figure->add_option("--which", fig.which, "curve: d, delta, s or ratio (d/delta)")
        ->check(CLI::IsMember({"d", "delta", "s", "ratio"}));
    cmd_figure->add_option("--dims", fig.dims, "dimensions n >= 3")->delimiter(',');
    cmd_figure->add_option("--rmin", fig.rmin, "lower radius (> 1)");
    cmd_figure->add_option("--rmax", fig.rmax, "upper radius");
    cmd_figure->add_option("--samples", fig.samples, "sample count (>= 2)");
    cmd_figure->add_option("--output-format", fig.format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    cmd_figure->add_option("--out", fig.out, "output path, - for stdout");

    int verify_n = 3;
    std::string verify_out = "-";
    auto* cmd_verify = app.add_subcommand("verify", "run the verification suite");
    cmd_verify->add_option("--n", verify_n, "dimension (>= 3)")->required();
    cmd_verify->add_option("--out", verify_out, "output path, - for stdout");

    int sharp_n = 3;
    std::vector<double> sharp_eps{0.9, 0.7, 0.6, 0.55, 0.52};
    std::string sharp_out = "-";
    auto* cmd_sharp = app.add_subcommand("sharpness", "quotients of the minimising sequence");
    cmd_sharp->add_option("--n", sharp_n, "dimension (>= 3)")->required();
    cmd_sharp->add_option("--eps", sharp_eps, "epsilon values (> 0.5)")->delimiter(',');
    cmd_sharp->add_option("--out", sharp_out, "output path, - for stdout");

    int kappa_n = 3;
    std::string kappa_out = "-";
    auto* cmd_kappa = app.add_subcommand("kappa", "lower bound for the d-weighted constant");
    cmd_kappa->add_option("--n", kappa_n, "dimension (>= 3)")->required();
    cmd_kappa->add_option("--out", kappa_out, "output path, - for stdout");

    int heis_n = 3;
    double heis_B = 1.0;
    std::string heis_out = "-";
    auto* cmd_heis = app.add_subcommand("heisenberg", "uncertainty product of the minimiser");
    cmd_heis->add_option("--n", heis_n, "dimension (>= 3)")->required();
    cmd_heis->add_option("--B", heis_B, "minimiser rate (> 0)");
    cmd_heis->add_option("--out", heis_out, "output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_figure->parsed()) {
            if (!(fig.rmin > 1.0) || !(fig.rmax > fig.rmin) || fig.samples < 2) {
                std::cerr << "figure: need 1 < rmin < rmax and samples >= 2\n";
                return 2;
            }
            const auto curves = figure_curves(fig);
            Output out(fig.out);
            if (fig.format == "csv")
                write_csv(out.stream(), curves);
            else
                write_svg(out.stream(), curves);
            return 0;
        }
        if (cmd_verify->parsed()) {
            const schw::VerificationReport rep = schw::verify_suite(schw::Dimension(verify_n));
            Output out(verify_out);
            out.stream() << schw::to_json(rep).dump(2) << '\n';
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_sharp->parsed()) {
            for (double e : sharp_eps)
                if (!(e > 0.5)) {
                    std::cerr << "sharpness: every eps must exceed 1/2\n";
                    return 2;
                }
            const auto rows = schw::sharpness_rows(schw::Dimension(sharp_n), sharp_eps);
            Output out(sharp_out);
            out.stream() << "epsilon,quotient_quadrature,quotient_closed_form,D_eps\n";
            for (const auto& row : rows)
                out.stream() << fmt17(row.eps) << ',' << fmt17(row.quotient_quadrature) << ','
                             << fmt17(row.quotient_closed_form) << ',' << fmt17(row.D_eps)
                             << '\n';
            return 0;
        }
        if (cmd_kappa->parsed()) {
            const schw::Dimension n(kappa_n);
            const auto scan = schw::ratio_infimum(n);
            Output out(kappa_out);
            out.stream() << schw::to_json(scan, n).dump(2) << '\n';
            return 0;
        }
        if (cmd_heis->parsed()) {
            if (!(heis_B > 0.0)) {
                std::cerr << "heisenberg: need B > 0\n";
                return 2;
            }
            const schw::Dimension n(heis_n);
            const auto rep =
                schw::heisenberg_report(n, schw::heisenberg_minimiser(n, heis_B));
            Output out(heis_out);
            out.stream() << schw::to_json(rep, n, heis_B).dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
