#pragma once

// Command-line front end. run_cli() takes its arguments without the program
// name and writes only to the given streams, so tests can drive it directly.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confdual/dual_core.hpp"
#include "confdual/verify.hpp"

namespace confdual::cli {

inline constexpr const char* kVersion = "1.0.0";

using json = nlohmann::json;

enum ExitCode : int { Success = 0, CheckFailure = 1, InvalidInput = 2, Degenerate = 3 };

/// Input rejected before any geometry runs.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// JSON documents

inline json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline json point_json(const ExtendedPoint3& p) { return p.is_infinite() ? json("inf") : vec_json(p.coords()); }

inline ExtendedPoint3 parse_point(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() != "inf")
            throw InputError("point string must be \"inf\"");
        return ExtendedPoint3::infinity();
    }
    if (!j.is_array() || j.size() != 3)
        throw InputError("point must be [x, y, z] or \"inf\"");
    double c[3];
    for (std::size_t k = 0; k < 3; ++k) {
        if (!j[k].is_number())
            throw InputError("point coordinates must be numbers");
        c[k] = j[k].get<double>();
    }
    try {
        return ExtendedPoint3(c[0], c[1], c[2]);
    } catch (const GeometryError& e) {
        throw InputError(e.what());
    }
}

inline json points_json(const Quadruplet& q)
{
    json a = json::array();
    for (const auto& p : q.points())
        a.push_back(point_json(p));
    return a;
}

inline json quadruplet_document(const Quadruplet& q) { return json{{"points", points_json(q)}}; }

/// Accepts a quadruplet document {"points": [...]} or a dual document, whose
/// "dual" entry is then taken as the input points. Any other key is refused.
inline Quadruplet parse_document(const json& doc, const ToleranceConfig& tol)
{
    if (!doc.is_object())
        throw InputError("document must be a JSON object");
    const bool is_dual = doc.contains("dual");
    static const std::vector<std::string> dual_keys{"dual", "cocircular", "sigma", "residuals", "warnings"};
    for (const auto& [key, value] : doc.items()) {
        const bool known = is_dual ? std::find(dual_keys.begin(), dual_keys.end(), key) != dual_keys.end()
                                   : key == "points";
        if (!known)
            throw InputError("unknown field \"" + key + "\"");
    }
    const json& pts = is_dual ? doc.at("dual") : doc.contains("points") ? doc.at("points") : json();
    if (!pts.is_array() || pts.size() != 4)
        throw InputError("\"points\" must be an array of exactly 4 entries");
    Quadruplet::Points p;
    for (std::size_t k = 0; k < 4; ++k)
        p[k] = parse_point(pts[k]);
    return Quadruplet(p, tol);
}

inline json sphere_json(const GeneralizedSphere& s)
{
    if (s.is_sphere())
        return json{{"sphere", {{"center", vec_json(s.as_sphere().center)}, {"radius", s.as_sphere().radius}}}};
    return json{{"plane", {{"normal", vec_json(s.as_plane().normal)}, {"offset", s.as_plane().offset}}}};
}

inline json circle_json(const OrientedCircle3& c)
{
    if (c.is_circle()) {
        const auto& k = c.as_circle();
        return json{{"circle", {{"center", vec_json(k.center)}, {"radius", k.radius}, {"normal", vec_json(k.normal)}}}};
    }
    const auto& l = c.as_line();
    return json{{"line", {{"anchor", vec_json(l.anchor)}, {"direction", vec_json(l.direction)}}}};
}

inline json dual_document(const DualResult& d)
{
    json doc;
    doc["dual"] = points_json(d.dual);
    doc["cocircular"] = d.cocircular;
    doc["sigma"] = std::visit(
        [](const auto& c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, GeneralizedSphere>)
                return sphere_json(c);
            else
                return circle_json(c);
        },
        d.carrier);
    doc["residuals"] = d.residuals;
    doc["warnings"] = d.warnings;
    return doc;
}

inline json report_json(const CheckReport& r)
{
    json details = json::array();
    for (const auto& [label, value] : r.details)
        details.push_back({{"label", label}, {"residual", value}});
    return json{{"name", r.name},         {"passed", r.passed},       {"skipped", r.skipped},
                {"residual", r.residual}, {"tolerance", r.tolerance}, {"details", details}};
}

// ---------------------------------------------------------------------------
// Figure

struct FigureSpec {
    int pole_index = 1;
    int width = 800;
    int height = 800;
    bool triangle = true;
    bool bisectors = true;
    bool incenter = true;
    bool excenters = true;
    bool circles = true;
    bool labels = true;
};

inline const std::vector<std::string>& layer_names()
{
    static const std::vector<std::string> names{"triangle",  "bisectors", "incenter",
                                                "excenters", "circles",   "labels"};
    return names;
}

inline void set_layers(FigureSpec& spec, const std::vector<std::string>& layers)
{
    spec.triangle = spec.bisectors = spec.incenter = spec.excenters = spec.circles = spec.labels = false;
    for (const auto& l : layers) {
        if (l == "all")
            spec.triangle = spec.bisectors = spec.incenter = spec.excenters = spec.circles = spec.labels = true;
        else if (l == "triangle")
            spec.triangle = true;
        else if (l == "bisectors")
            spec.bisectors = true;
        else if (l == "incenter")
            spec.incenter = true;
        else if (l == "excenters")
            spec.excenters = true;
        else if (l == "circles")
            spec.circles = true;
        else if (l == "labels")
            spec.labels = true;
        else
            throw InputError("unknown layer \"" + l + "\"");
    }
}

namespace detail {

/// Fixed six-decimal rendering; negative zero is printed as 0.
inline std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos)
        return "0.000000";
    return s;
}

inline std::string subscript(std::size_t k)
{
    static const char* digits[] = {"₁", "₂", "₃", "₄"};
    return digits[k];
}

struct Box {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;

    void add(Complex z, double pad = 0.0)
    {
        x0 = std::min(x0, z.real() - pad);
        x1 = std::max(x1, z.real() + pad);
        y0 = std::min(y0, -z.imag() - pad);
        y1 = std::max(y1, -z.imag() + pad);
    }
};

} // namespace detail

/// SVG of the chart image at the chosen pole: the triangle of the other
/// three points, its incenter and excenters, the internal bisectors and the
/// three equal-radius circles through the incenter and two excenters.
inline std::string render_figure(const Quadruplet& q, const FigureSpec& spec, const ToleranceConfig& tol = {})
{
    using detail::num;
    if (spec.pole_index < 1 || spec.pole_index > 4)
        throw InputError("pole index must be in 1..4");
    if (spec.width <= 0 || spec.height <= 0)
        throw InputError("figure dimensions must be positive");
    if (q.cocircularity(tol) < tol.eps_degen)
        throw GeometryError(ErrorKind::Cocircular, "cocircular input has no triangle to draw");

    const auto pole = static_cast<std::size_t>(spec.pole_index - 1);
    Quadruplet work = q;
    auto sigma = circumsphere(q[0], q[1], q[2], q[3], tol);
    if (sigma.is_plane()) {
        work = transform(confdual::detail::plane_normalization(q, sigma.as_plane()), q, tol);
        sigma = circumsphere(work[0], work[1], work[2], work[3], tol);
    }
    const auto chart = make_chart(sigma, work[pole], tol);
    const auto idx = confdual::detail::others(pole);
    const Triangle2 tri(project(chart, work[idx[0]], tol), project(chart, work[idx[1]], tol),
                        project(chart, work[idx[2]], tol), tol);
    const Complex in = incenter(tri).value();
    std::array<Complex, 3> ex;
    for (int k = 0; k < 3; ++k)
        ex[static_cast<std::size_t>(k)] = excenter(tri, k).value();

    std::array<std::pair<Complex, double>, 3> circles;
    for (std::size_t k = 0; k < 3; ++k)
        circles[k] = confdual::detail::planar_circumcircle(in, ex[(k + 1) % 3], ex[(k + 2) % 3]);

    detail::Box box;
    for (int k = 0; k < 3; ++k)
        box.add(tri.vertex(k));
    if (spec.incenter)
        box.add(in);
    if (spec.excenters || spec.bisectors)
        for (const auto& e : ex)
            box.add(e);
    if (spec.circles)
        for (const auto& [c, r] : circles)
            box.add(c, r);
    const double span = std::max(box.x1 - box.x0, box.y1 - box.y0);
    const double margin = 0.05 * span;
    const double marker = 0.008 * span;
    const double stroke = 0.002 * span;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"" << num(box.x0 - margin) << ' ' << num(box.y0 - margin) << ' '
      << num(box.x1 - box.x0 + 2 * margin) << ' ' << num(box.y1 - box.y0 + 2 * margin) << "\">\n"
      << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\">\n";

    auto pt = [&](Complex z) { return num(z.real()) + "," + num(-z.imag()); };

    if (spec.circles)
        for (const auto& [c, r] : circles)
            s << "<circle class=\"equal-radius\" cx=\"" << num(c.real()) << "\" cy=\"" << num(-c.imag())
              << "\" r=\"" << num(r) << "\" stroke=\"steelblue\"/>\n";
    if (spec.triangle)
        s << "<polygon class=\"triangle\" points=\"" << pt(tri.vertex(0)) << ' ' << pt(tri.vertex(1)) << ' '
          << pt(tri.vertex(2)) << "\"/>\n";
    if (spec.bisectors)
        for (int k = 0; k < 3; ++k)
            s << "<line class=\"bisector\" x1=\"" << num(tri.vertex(k).real()) << "\" y1=\""
              << num(-tri.vertex(k).imag()) << "\" x2=\"" << num(ex[static_cast<std::size_t>(k)].real())
              << "\" y2=\"" << num(-ex[static_cast<std::size_t>(k)].imag()) << "\" stroke=\"gray\"/>\n";
    s << "</g>\n";

    if (spec.incenter)
        s << "<rect class=\"incenter\" x=\"" << num(in.real() - marker) << "\" y=\"" << num(-in.imag() - marker)
          << "\" width=\"" << num(2 * marker) << "\" height=\"" << num(2 * marker) << "\" fill=\"firebrick\"/>\n";
    if (spec.excenters)
        for (const auto& e : ex)
            s << "<path class=\"excenter\" d=\"M " << num(e.real() - marker) << ' ' << num(-e.imag()) << " L "
              << num(e.real()) << ' ' << num(-e.imag() - marker) << " L " << num(e.real() + marker) << ' '
              << num(-e.imag()) << " L " << num(e.real()) << ' ' << num(-e.imag() + marker)
              << " Z\" fill=\"darkgreen\"/>\n";

    if (spec.labels) {
        const double font = 0.03 * span;
        auto label = [&](Complex z, const std::string& text) {
            s << "<text x=\"" << num(z.real() + marker) << "\" y=\"" << num(-z.imag() - marker)
              << "\" font-size=\"" << num(font) << "\">" << text << "</text>\n";
        };
        for (std::size_t k = 0; k < 3; ++k)
            label(tri.vertex(static_cast<int>(k)), "P̃" + detail::subscript(idx[k]));
        if (spec.incenter)
            label(in, "P̃" + detail::subscript(pole) + "′");
        if (spec.excenters)
            for (std::size_t k = 0; k < 3; ++k)
                label(ex[k], "P̂" + detail::subscript(idx[k]));
    }
    s << "</svg>\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// Driver

namespace detail {

inline json read_json(const std::string& path, std::istream& in)
{
    std::string text;
    if (path.empty()) {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw InputError("cannot open input file " + path);
        text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline int fail(std::ostream& err, int code, const std::string& kind, const std::string& message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

} // namespace detail

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Conformal dual of a quadruplet of points in R^3 with a point at infinity", "confdual"};
    app.set_version_flag("--version", std::string("confdual ") + kVersion);
    app.require_subcommand(1);

    std::string input;
    ToleranceConfig tol;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Input JSON file (default: stdin)");
        sub->add_option("--eps-alg", tol.eps_alg, "Tolerance for single-projection identities");
        sub->add_option("--eps-pipe", tol.eps_pipe, "Tolerance for composed pipelines");
        sub->add_option("--eps-degen", tol.eps_degen, "Degeneracy threshold");
    };

    auto* dual_cmd = app.add_subcommand("dual", "Compute the dual quadruplet");
    add_common(dual_cmd);

    int pole = 1;
    auto* cr_cmd = app.add_subcommand("cross-ratio", "Cross ratio in the chart at a pole");
    add_common(cr_cmd);
    cr_cmd->add_option("--pole", pole, "Pole index 1..4");

    std::vector<std::string> suite{"all"};
    auto* verify_cmd = app.add_subcommand("verify", "Run the named checks");
    add_common(verify_cmd);
    verify_cmd->add_option("--suite", suite, "Check names or 'all'")->delimiter(',');

    std::uint64_t seed = 0;
    long long count = 1;
    auto* random_cmd = app.add_subcommand("random", "Emit seeded random quadruplets as JSON lines");
    random_cmd->add_option("--seed", seed, "Random seed")->required();
    random_cmd->add_option("--count", count, "Number of quadruplets");
    random_cmd->add_option("--eps-degen", tol.eps_degen, "Degeneracy threshold");

    FigureSpec spec;
    std::string out_path;
    std::vector<std::string> layers{"all"};
    auto* fig_cmd = app.add_subcommand("figure", "Write an SVG of the chart image");
    add_common(fig_cmd);
    fig_cmd->add_option("--pole", spec.pole_index, "Pole index 1..4");
    fig_cmd->add_option("--out", out_path, "Output SVG file (default: stdout)");
    fig_cmd->add_option("--layers", layers, "Layers to draw")->delimiter(',');
    fig_cmd->add_option("--width", spec.width, "Width in pixels");
    fig_cmd->add_option("--height", spec.height, "Height in pixels");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return Success;
    } catch (const CLI::ParseError& e) {
        return detail::fail(err, InvalidInput, "InvalidArgument", e.what());
    }

    try {
        tol.validate();
        if (random_cmd->parsed()) {
            if (count < 1)
                throw InputError("--count must be at least 1");
            for (const auto& q : make_corpus(seed, static_cast<std::size_t>(count), tol))
                out << quadruplet_document(q).dump() << '\n';
            return Success;
        }

        const Quadruplet q = parse_document(detail::read_json(input, in), tol);

        if (dual_cmd->parsed()) {
            out << dual_document(dual(q, tol)).dump(2) << '\n';
            return Success;
        }
        if (cr_cmd->parsed()) {
            if (pole < 1 || pole > 4)
                throw InputError("--pole must be in 1..4");
            const auto cr = cross_ratio_on(carrier_sphere(q, tol), q, static_cast<std::size_t>(pole - 1), tol);
            if (cr.is_infinite())
                out << json{{"re", "inf"}, {"im", "inf"}}.dump(2) << '\n';
            else
                out << json{{"re", cr.value().real()}, {"im", cr.value().imag()}}.dump(2) << '\n';
            return Success;
        }
        if (verify_cmd->parsed()) {
            std::vector<CheckReport> reports;
            try {
                reports = run_checks(q, suite, tol);
            } catch (const GeometryError& e) {
                if (e.kind() == ErrorKind::InvalidArgument)
                    throw InputError(e.what());
                throw;
            }
            json checks = json::array();
            bool ok = true;
            for (const auto& r : reports) {
                checks.push_back(report_json(r));
                ok = ok && (r.passed || r.skipped);
            }
            out << json{{"checks", checks}, {"warnings", dual(q, tol).warnings}}.dump(2) << '\n';
            return ok ? Success : CheckFailure;
        }
        if (fig_cmd->parsed()) {
            set_layers(spec, layers);
            const std::string svg = render_figure(q, spec, tol);
            if (out_path.empty()) {
                out << svg;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f)
                    throw InputError("cannot write " + out_path);
                f << svg;
            }
            return Success;
        }
    } catch (const InputError& e) {
        return detail::fail(err, InvalidInput, "InvalidInput", e.what());
    } catch (const GeometryError& e) {
        const int code = e.kind() == ErrorKind::InvalidArgument ? InvalidInput : Degenerate;
        return detail::fail(err, code, std::string(to_string(e.kind())), e.what());
    }
    return detail::fail(err, InvalidInput, "InvalidArgument", "no subcommand");
}

} // namespace confdual::cli
