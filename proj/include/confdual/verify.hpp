#pragma once

/*!
 * \file verify.hpp
 * \brief Named numerical checks of the structural identities satisfied by a
 *        quadruplet and its dual, plus the seeded random corpus they run on.
 *
 * Planar identities are evaluated in the stereographic chart centered at
 * each of the four points in turn. In a chart centered at P_k, z_j denotes
 * the image of P_j and w_j the image of the dual point P_j'; w_k is then the
 * incenter of the triangle (z_j)_{j≠k} and every other w_j the excenter
 * opposite z_j.
 *
 * Residual units: chordal distance for points, radians for angles, relative
 * error for products of distances and radii.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "confdual/dual_core.hpp"

namespace confdual {

struct CheckReport {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, double>> details;
};

inline const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{
        "involution",      "cross_ratio_conjugation", "conformal_invariance",         "cospherical",
        "power_eq1",       "power_eq3",               "angle_equalities",             "incenter_excenter_cocircular",
        "equal_radii",     "bisector_property",       "perpendicularity",             "second_point",
        "cocircular_limit"};
    return names;
}

namespace detail {

/// Unsigned angle at b between the rays towards a and c.
inline double planar_angle(Complex a, Complex b, Complex c) { return std::abs(std::arg((c - b) / (a - b))); }

/// Center and radius of the circle through three planar points.
inline std::pair<Complex, double> planar_circumcircle(Complex a, Complex b, Complex c)
{
    const Complex ab = b - a;
    const Complex ac = c - a;
    const double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    const double ab2 = std::norm(ab);
    const double ac2 = std::norm(ac);
    const Complex off((ac.imag() * ab2 - ab.imag() * ac2) / d, (ab.real() * ac2 - ac.real() * ab2) / d);
    return {a + off, std::abs(off)};
}

/// A quadruplet, its dual and Σ moved onto a round sphere when Σ is a plane.
struct Workspace {
    Quadruplet q;
    Quadruplet dual;
    GeneralizedSphere sigma;
    std::optional<MoebiusMap> normalization;
};

inline Workspace make_workspace(const Quadruplet& q, const DualResult& d, const ToleranceConfig& tol)
{
    const auto& sigma = std::get<GeneralizedSphere>(d.carrier);
    if (!d.normalization)
        return Workspace{q, d.dual, sigma, std::nullopt};
    const auto& j = *d.normalization;
    const Quadruplet mq = transform(j, q, tol);
    const Quadruplet md = transform(j, d.dual, tol);
    return Workspace{mq, md, circumsphere(mq[0], mq[1], mq[2], mq[3], tol), j};
}

/// Planar images of q and its dual in the chart centered at q[pole].
struct ChartView {
    std::size_t pole;
    std::array<Complex, 4> z; // z[pole] unused (∞)
    std::array<Complex, 4> w;
};

inline ChartView chart_view(const Workspace& ws, std::size_t pole, const ToleranceConfig& tol)
{
    const auto chart = make_chart(ws.sigma, ws.q[pole], tol);
    ChartView v{pole, {}, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        if (i != pole)
            v.z[i] = project(chart, ws.q[i], tol).value();
        v.w[i] = project(chart, ws.dual[i], tol).value();
    }
    return v;
}

inline CheckReport finish(std::string name, double tolerance, std::vector<std::pair<std::string, double>> details)
{
    double worst = 0.0;
    for (const auto& [label, r] : details)
        worst = std::max(worst, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
    CheckReport rep{std::move(name), worst < tolerance, false, worst, tolerance, std::move(details)};
    return rep;
}

inline CheckReport skipped(std::string name)
{
    CheckReport rep;
    rep.name = std::move(name);
    rep.passed = true;
    rep.skipped = true;
    return rep;
}

inline std::string idx_label(std::initializer_list<std::size_t> ids)
{
    std::string s;
    for (auto i : ids)
        s += std::to_string(i + 1);
    return s;
}

} // namespace detail

/// Seeds of the maps used by the conformal_invariance check.
inline constexpr std::array<std::uint64_t, 3> kInvarianceSeeds{101, 202, 303};

/// Errors of the generic dual of (∞, 0, c + i·10^-k, 1) against the
/// diagonal swap (c, 1, ∞, 0), for k = 1..6 and c = 0.4.
inline std::vector<double> cocircular_limit_errors(double c = 0.4, int steps = 6)
{
    // The probe deliberately enters the near-cocircular regime, so the
    // degeneracy threshold is lowered to let the generic construction run.
    ToleranceConfig probe;
    probe.eps_degen = 1e-13;
    const Quadruplet swap({ExtendedPoint3(c, 0, 0), ExtendedPoint3(1, 0, 0), ExtendedPoint3::infinity(),
                           ExtendedPoint3(0, 0, 0)});
    std::vector<double> errors;
    for (int k = 1; k <= steps; ++k) {
        const Quadruplet qk({ExtendedPoint3::infinity(), ExtendedPoint3(0, 0, 0),
                             ExtendedPoint3(c, std::pow(10.0, -k), 0), ExtendedPoint3(1, 0, 0)},
                            probe);
        errors.push_back(max_chordal_error(dual(qk, probe).dual, swap));
    }
    return errors;
}

inline std::vector<CheckReport> run_checks(const Quadruplet& q, const std::vector<std::string>& suite,
                                           const ToleranceConfig& tol = {})
{
    tol.validate();
    std::vector<std::string> selected;
    for (const auto& s : suite) {
        if (s == "all") {
            selected = check_names();
            break;
        }
        if (std::find(check_names().begin(), check_names().end(), s) == check_names().end())
            throw GeometryError(ErrorKind::InvalidArgument, "unknown check: " + s);
    }
    if (selected.empty())
        for (const auto& name : check_names())
            if (std::find(suite.begin(), suite.end(), name) != suite.end())
                selected.push_back(name);

    const DualResult d = dual(q, tol);
    const bool cocirc = d.cocircular;
    std::optional<detail::Workspace> ws;
    std::vector<detail::ChartView> views;
    if (!cocirc) {
        ws = detail::make_workspace(q, d, tol);
        for (std::size_t k = 0; k < 4; ++k)
            views.push_back(detail::chart_view(*ws, k, tol));
    }

    using Details = std::vector<std::pair<std::string, double>>;
    std::vector<CheckReport> out;
    for (const auto& name : selected) {
        const bool generic_only = name != "involution" && name != "cross_ratio_conjugation" &&
                                  name != "conformal_invariance" && name != "cocircular_limit";
        if (cocirc && generic_only) {
            out.push_back(detail::skipped(name));
            continue;
        }

        Details det;
        double tolerance = tol.eps_alg;
        if (name == "involution") {
            tolerance = tol.eps_pipe;
            det.emplace_back("dual(dual(q)) vs q", max_chordal_error(dual(d.dual, tol).dual, q));
        } else if (name == "cross_ratio_conjugation") {
            tolerance = tol.eps_pipe;
            const auto sigma = carrier_sphere(q, tol);
            std::function<Complex(const Quadruplet&, bool)> cr;
            if (sigma.is_sphere()) {
                const auto chart = make_chart(sigma, q[0], tol);
                cr = [chart, tol](const Quadruplet& x, bool mirrored) {
                    return cross_ratio(x, mirrored ? chart.mirrored() : chart, tol).value();
                };
            } else {
                cr = [sigma, tol](const Quadruplet& x, bool mirrored) {
                    const Complex v = cross_ratio_on(sigma, x, 0, tol).value();
                    return mirrored ? std::conj(v) : v;
                };
            }
            const Complex cq = cr(q, false);
            const Complex cd = cr(d.dual, false);
            const Complex cdm = cr(d.dual, true);
            const double scale = std::max(1.0, std::abs(cq));
            det.emplace_back("cr(dual) vs conj(cr(q))", std::abs(cd - std::conj(cq)) / scale);
            det.emplace_back("mirrored cr(dual) vs cr(q)", std::abs(cdm - cq) / scale);
        } else if (name == "conformal_invariance") {
            tolerance = tol.eps_pipe;
            for (auto seed : kInvarianceSeeds) {
                const auto t = random_moebius(seed);
                const Quadruplet tq = transform(t, q, tol);
                const Quadruplet td = transform(t, d.dual, tol);
                det.emplace_back("seed " + std::to_string(seed), max_chordal_error(dual(tq, tol).dual, td));
            }
        } else if (name == "cospherical") {
            const auto& sigma = std::get<GeneralizedSphere>(d.carrier);
            for (std::size_t i = 0; i < 4; ++i)
                det.emplace_back("P" + detail::idx_label({i}) + "'", sigma.residual(d.dual[i]));
        } else if (name == "power_eq1") {
            for (const auto& v : views) {
                for (std::size_t j : detail::others(v.pole)) {
                    std::array<std::size_t, 2> lm{};
                    std::size_t n = 0;
                    for (std::size_t x : detail::others(v.pole))
                        if (x != j)
                            lm[n++] = x;
                    const double lhs = std::abs(v.z[j] - v.z[lm[0]]) * std::abs(v.z[j] - v.z[lm[1]]);
                    const double rhs = std::abs(v.z[j] - v.w[v.pole]) * std::abs(v.z[j] - v.w[j]);
                    det.emplace_back("pole " + detail::idx_label({v.pole}) + " vertex " + detail::idx_label({j}),
                                     std::abs(lhs - rhs) / lhs);
                }
            }
        } else if (name == "power_eq3") {
            for (const auto& v : views) {
                for (std::size_t j : detail::others(v.pole)) {
                    std::array<std::size_t, 2> lm{};
                    std::size_t n = 0;
                    for (std::size_t x : detail::others(v.pole))
                        if (x != j)
                            lm[n++] = x;
                    const auto& w = v.w;
                    const auto& z = v.z;
                    const double a = std::abs(w[j] - w[lm[0]]) * std::abs(w[j] - z[lm[1]]);
                    const double b = std::abs(w[j] - z[j]) * std::abs(w[j] - w[v.pole]);
                    const double c = std::abs(w[j] - w[lm[1]]) * std::abs(w[j] - z[lm[0]]);
                    det.emplace_back("pole " + detail::idx_label({v.pole}) + " center " + detail::idx_label({j}),
                                     std::max(std::abs(a - b), std::abs(c - b)) / b);
                }
            }
        } else if (name == "angle_equalities") {
            for (const auto& v : views) {
                for (std::size_t j : detail::others(v.pole)) {
                    std::array<std::size_t, 2> lm{};
                    std::size_t n = 0;
                    for (std::size_t x : detail::others(v.pole))
                        if (x != j)
                            lm[n++] = x;
                    const auto& w = v.w;
                    const auto& z = v.z;
                    const Complex wk = w[v.pole];
                    const std::array<double, 4> angles{
                        detail::planar_angle(wk, z[j], z[lm[0]]), detail::planar_angle(wk, z[j], z[lm[1]]),
                        detail::planar_angle(wk, w[lm[0]], w[j]), detail::planar_angle(wk, w[lm[1]], w[j])};
                    const auto [lo, hi] = std::minmax_element(angles.begin(), angles.end());
                    det.emplace_back("pole " + detail::idx_label({v.pole}) + " row " + detail::idx_label({j}),
                                     *hi - *lo);
                }
            }
        } else if (name == "incenter_excenter_cocircular") {
            tolerance = tol.eps_pipe;
            for (const auto& v : views) {
                for (std::size_t j : detail::others(v.pole)) {
                    std::array<std::size_t, 2> lm{};
                    std::size_t n = 0;
                    for (std::size_t x : detail::others(v.pole))
                        if (x != j)
                            lm[n++] = x;
                    const auto [c, r] = detail::planar_circumcircle(v.z[lm[0]], v.z[lm[1]], v.w[v.pole]);
                    det.emplace_back("pole " + detail::idx_label({v.pole}) + " excenter " + detail::idx_label({j}),
                                     std::abs(std::abs(v.w[j] - c) - r) / r);
                }
            }
        } else if (name == "equal_radii") {
            for (const auto& v : views) {
                const auto o = detail::others(v.pole);
                const Complex wk = v.w[v.pole];
                const std::array<double, 3> radii{detail::planar_circumcircle(wk, v.w[o[0]], v.w[o[1]]).second,
                                                  detail::planar_circumcircle(wk, v.w[o[0]], v.w[o[2]]).second,
                                                  detail::planar_circumcircle(wk, v.w[o[1]], v.w[o[2]]).second};
                const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
                det.emplace_back("pole " + detail::idx_label({v.pole}), (*hi - *lo) / *hi);
            }
        } else if (name == "bisector_property") {
            tolerance = tol.eps_pipe;
            const auto& sigma = std::get<GeneralizedSphere>(d.carrier);
            double scale = 0.0;
            for (const auto& p : q.points())
                if (p.is_finite())
                    scale = std::max(scale, p.coords().norm());
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    if (i == j)
                        continue;
                    std::array<std::size_t, 2> kl{};
                    std::size_t n = 0;
                    for (std::size_t x = 0; x < 4; ++x)
                        if (x != i && x != j)
                            kl[n++] = x;
                    const auto g = circular_angle_bisector(q, i, j, tol);
                    const auto gk = circle_through(q[i], q[j], q[kl[0]], tol);
                    const auto gl = circle_through(q[i], q[j], q[kl[1]], tol);
                    const std::string tag = "G" + detail::idx_label({i, j});
                    det.emplace_back(tag + " contains dual points", std::max(g.residual(d.dual[i]), g.residual(d.dual[j])));
                    double on_sigma = 0.0;
                    for (const auto& p : g.sample(16, std::max(1.0, scale)))
                        on_sigma = std::max(on_sigma, sigma.residual(p));
                    det.emplace_back(tag + " lies on sigma", on_sigma);
                    double worst_gap = 0.0;
                    double excess = 0.0;
                    for (const auto* at : {&q[i], &q[j]}) {
                        const double ak = circle_angle_at(g, gk, *at, tol);
                        const double al = circle_angle_at(g, gl, *at, tol);
                        worst_gap = std::max(worst_gap, std::abs(ak - al));
                        const double rev = circle_angle_at(g.reversed(), gk, *at, tol);
                        excess = std::max(excess, ak - rev);
                    }
                    det.emplace_back(tag + " equal angles", worst_gap);
                    det.emplace_back(tag + " minimal angle", std::max(0.0, excess));
                }
            }
        } else if (name == "perpendicularity") {
            for (const auto& v : views) {
                for (std::size_t j : detail::others(v.pole)) {
                    for (std::size_t l : detail::others(v.pole)) {
                        if (l == j)
                            continue;
                        const double half_pi = std::numbers::pi / 2.0;
                        const double a1 = detail::planar_angle(v.w[j], v.z[l], v.w[l]);
                        const double a2 = detail::planar_angle(v.w[j], v.z[j], v.w[l]);
                        det.emplace_back("pole " + detail::idx_label({v.pole}) + " pair " + detail::idx_label({j, l}),
                                         std::max(std::abs(a1 - half_pi), std::abs(a2 - half_pi)));
                    }
                }
            }
        } else if (name == "second_point") {
            tolerance = tol.eps_pipe;
            const Quadruplet dd = dual(d.dual, tol).dual;
            const Quadruplet wdd = ws->normalization ? transform(*ws->normalization, dd, tol) : dd;
            const auto chart = make_chart(ws->sigma, ws->q[0], tol);
            det.emplace_back("pi1(P1'') at infinity",
                             chordal_distance(project(chart, wdd[0], tol), ExtendedComplex::infinity()));
            det.emplace_back("pi1(P2'') vs pi1(P2)",
                             chordal_distance(project(chart, wdd[1], tol), ExtendedComplex(views[0].z[1])));
        } else if (name == "cocircular_limit") {
            tolerance = 1e-5;
            const auto errors = cocircular_limit_errors();
            bool monotone = true;
            for (std::size_t k = 0; k < errors.size(); ++k) {
                det.emplace_back("k=" + std::to_string(k + 1), errors[k]);
                if (k > 0 && errors[k] > errors[k - 1])
                    monotone = false;
            }
            // The residual is the final error; non-monotone convergence
            // fails regardless of it.
            CheckReport rep{name, monotone && errors.back() < tolerance, false,
                            monotone ? errors.back() : 1.0, tolerance, std::move(det)};
            out.push_back(std::move(rep));
            continue;
        }
        out.push_back(detail::finish(name, tolerance, std::move(det)));
    }
    return out;
}

/// Options of the seeded random corpus.
struct CorpusOptions {
    double min_separation = 0.1;
    double distortion_probability = 0.5;
};

/// One corpus quadruplet: four points on the unit sphere with pairwise
/// chordal separation at least min_separation, possibly moved by a random
/// Möbius map, and at least 10·eps_degen away from cocircular.
inline Quadruplet sample_quadruplet(detail::UniformSource& rng, const ToleranceConfig& tol = {},
                                    const CorpusOptions& opt = {})
{
    for (;;) {
        auto separated = [&](const Quadruplet::Points& pts) {
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j)
                    if (chordal_distance(pts[i], pts[j]) < opt.min_separation)
                        return false;
            return true;
        };
        Quadruplet::Points pts;
        for (auto& p : pts)
            p = ExtendedPoint3(rng.on_unit_sphere());
        if (!separated(pts))
            continue;
        // The chordal metric is not Möbius invariant, so separation is
        // enforced again after the distortion.
        if (rng.unit() < opt.distortion_probability) {
            const auto m = random_moebius(rng.bits());
            for (auto& p : pts)
                p = m(p);
            if (!separated(pts))
                continue;
        }
        try {
            Quadruplet q(pts, tol);
            if (q.cocircularity(tol) >= 10.0 * tol.eps_degen)
                return q;
        } catch (const GeometryError&) {
        }
    }
}

inline std::vector<Quadruplet> make_corpus(std::uint64_t seed, std::size_t count, const ToleranceConfig& tol = {},
                                           const CorpusOptions& opt = {})
{
    detail::UniformSource rng(seed);
    std::vector<Quadruplet> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(sample_quadruplet(rng, tol, opt));
    return out;
}

} // namespace confdual
