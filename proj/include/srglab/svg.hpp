#pragma once

// Deterministic SVG rendering of SRG clouds, regions and margin witnesses.
// Output is plain text with fixed number formatting so that golden-file and
// byte-identity tests are meaningful. Clouds render both conjugate branches;
// regions render their boundary polylines (closed ones get a translucent
// fill, clipped ones a stroke only).

#include "srglab/regions.hpp"
#include "srglab/srg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace srglab::svg {

struct PlotOptions {
    int width = 880;
    int height = 660;
    int margin = 56;
    std::string title;
};

struct Layout {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    double scale = 1.0;  // pixels per unit, shared by both axes
    double x0 = 0.0, y0 = 0.0;

    [[nodiscard]] double x(double re) const { return x0 + (re - re_min) * scale; }
    [[nodiscard]] double y(double im) const { return y0 - (im - im_min) * scale; }
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

/// Nice tick spacing for a span (1/2/5 ladder).
inline double tick_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double ratio = raw / mag;
    if (ratio < 1.5) return mag;
    if (ratio < 3.5) return 2.0 * mag;
    if (ratio < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace detail

class SrgPlot {
public:
    void add_region(const Region& region, std::string label) {
        regions_.push_back(region);
        region_labels_.push_back(std::move(label));
    }
    void add_cloud(const SrgCloud& cloud, std::string label) {
        clouds_.push_back(cloud);
        cloud_labels_.push_back(std::move(label));
    }
    void add_witness_segment(Complex z1, Complex z2) {
        witnesses_.push_back({z1, z2});
    }

    [[nodiscard]] bool empty() const {
        return regions_.empty() && clouds_.empty() && witnesses_.empty();
    }

    [[nodiscard]] Layout layout(const PlotOptions& opt = {}) const {
        double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
        bool any = false;
        auto grow = [&](Complex z) {
            if (!any) {
                re_min = re_max = z.real();
                im_min = im_max = z.imag();
                any = true;
            } else {
                re_min = std::min(re_min, z.real());
                re_max = std::max(re_max, z.real());
                im_min = std::min(im_min, z.imag());
                im_max = std::max(im_max, z.imag());
            }
        };
        for (const auto& cloud : clouds_) {
            for (const auto& p : cloud.points) {
                grow(p.value());
                grow(std::conj(p.value()));
            }
        }
        for (const auto& region : regions_) {
            const double extent = srglab::detail::characteristic_scale(region);
            grow(Complex(extent, extent));
            grow(Complex(-0.25 * extent, -extent));
            if (auto b = region.bounding_radius()) {
                grow(Complex(*b, *b));
                grow(Complex(-*b, -*b));
            }
        }
        for (const auto& w : witnesses_) {
            grow(w.first);
            grow(w.second);
        }
        if (!any) {
            re_min = im_min = -1.0;
            re_max = im_max = 1.0;
        }
        // Always include the origin and pad by 10%.
        re_min = std::min(re_min, 0.0);
        re_max = std::max(re_max, 0.0);
        im_min = std::min(im_min, 0.0);
        im_max = std::max(im_max, 0.0);
        const double re_pad = 0.1 * std::max(re_max - re_min, 1e-3);
        const double im_pad = 0.1 * std::max(im_max - im_min, 1e-3);
        Layout l;
        l.re_min = re_min - re_pad;
        l.re_max = re_max + re_pad;
        l.im_min = im_min - im_pad;
        l.im_max = im_max + im_pad;
        const double wavail = opt.width - 2.0 * opt.margin;
        const double havail = opt.height - 2.0 * opt.margin;
        l.scale = std::min(wavail / (l.re_max - l.re_min),
                           havail / (l.im_max - l.im_min));
        l.x0 = opt.margin;
        l.y0 = opt.height - opt.margin;
        // Re-center the shorter axis.
        const double used_w = (l.re_max - l.re_min) * l.scale;
        const double used_h = (l.im_max - l.im_min) * l.scale;
        l.x0 += 0.5 * (wavail - used_w);
        l.y0 -= 0.5 * (havail - used_h);
        return l;
    }

    [[nodiscard]] std::string render(const PlotOptions& opt = {}) const {
        if (empty()) throw std::invalid_argument("plot: nothing to draw");
        const Layout l = layout(opt);
        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               std::to_string(opt.width) + "\" height=\"" +
               std::to_string(opt.height) + "\" viewBox=\"0 0 " +
               std::to_string(opt.width) + " " + std::to_string(opt.height) +
               "\">\n";
        out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        render_axes(out, l, opt);
        for (std::size_t i = 0; i < regions_.size(); ++i) {
            render_region(out, regions_[i], l, detail::palette(i));
        }
        for (std::size_t i = 0; i < clouds_.size(); ++i) {
            render_cloud(out, clouds_[i], l,
                         detail::palette(regions_.size() + i));
        }
        for (const auto& w : witnesses_) render_witness(out, w, l);
        render_legend(out, opt);
        if (!opt.title.empty()) {
            out += "<text x=\"" + detail::fmt(opt.width / 2.0) +
                   "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"15\">" +
                   opt.title + "</text>\n";
        }
        out += "</svg>\n";
        return out;
    }

private:
    void render_axes(std::string& out, const Layout& l,
                     const PlotOptions& opt) const {
        const double left = l.x(l.re_min);
        const double right = l.x(l.re_max);
        const double top = l.y(l.im_max);
        const double bottom = l.y(l.im_min);
        out += "<rect x=\"" + detail::fmt(left) + "\" y=\"" + detail::fmt(top) +
               "\" width=\"" + detail::fmt(right - left) + "\" height=\"" +
               detail::fmt(bottom - top) +
               "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
        // Real and imaginary axes when visible.
        if (l.re_min <= 0.0 && l.re_max >= 0.0) {
            out += "<line x1=\"" + detail::fmt(l.x(0.0)) + "\" y1=\"" +
                   detail::fmt(top) + "\" x2=\"" + detail::fmt(l.x(0.0)) +
                   "\" y2=\"" + detail::fmt(bottom) +
                   "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
        }
        if (l.im_min <= 0.0 && l.im_max >= 0.0) {
            out += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" +
                   detail::fmt(l.y(0.0)) + "\" x2=\"" + detail::fmt(right) +
                   "\" y2=\"" + detail::fmt(l.y(0.0)) +
                   "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
        }
        const double step_re = detail::tick_step(l.re_max - l.re_min);
        for (double v = std::ceil(l.re_min / step_re) * step_re;
             v <= l.re_max + 1e-12; v += step_re) {
            out += "<line x1=\"" + detail::fmt(l.x(v)) + "\" y1=\"" +
                   detail::fmt(bottom) + "\" x2=\"" + detail::fmt(l.x(v)) +
                   "\" y2=\"" + detail::fmt(bottom + 5) +
                   "\" stroke=\"#666666\"/>\n";
            out += "<text x=\"" + detail::fmt(l.x(v)) + "\" y=\"" +
                   detail::fmt(bottom + 18) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"11\">" +
                   detail::fmt_tick(v) + "</text>\n";
        }
        const double step_im = detail::tick_step(l.im_max - l.im_min);
        for (double v = std::ceil(l.im_min / step_im) * step_im;
             v <= l.im_max + 1e-12; v += step_im) {
            out += "<line x1=\"" + detail::fmt(left - 5) + "\" y1=\"" +
                   detail::fmt(l.y(v)) + "\" x2=\"" + detail::fmt(left) +
                   "\" y2=\"" + detail::fmt(l.y(v)) + "\" stroke=\"#666666\"/>\n";
            out += "<text x=\"" + detail::fmt(left - 8) + "\" y=\"" +
                   detail::fmt(l.y(v) + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                   "font-size=\"11\">" +
                   detail::fmt_tick(v) + "</text>\n";
        }
        out += "<text x=\"" + detail::fmt(right + 6) + "\" y=\"" +
               detail::fmt(l.y(0.0) + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">Re</text>\n";
        out += "<text x=\"" + detail::fmt(l.x(0.0) - 4) + "\" y=\"" +
               detail::fmt(top - 6) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">Im</text>\n";
        (void)opt;
    }

    void emit_path(std::string& out, const std::vector<Complex>& pts,
                   const Layout& l, const char* color, bool fill) const {
        std::string path = "M";
        for (const Complex& z : pts) {
            path += " " + detail::fmt(l.x(z.real())) + " " +
                    detail::fmt(l.y(z.imag()));
            path += " L";
        }
        path.resize(path.size() - 2);
        path += " Z";
        out += std::string("<path d=\"") + path + "\" stroke=\"" + color +
               "\" stroke-width=\"1.5\" fill=\"" + (fill ? color : "none") +
               "\"" + (fill ? " fill-opacity=\"0.18\"" : "") + "/>\n";
    }

    void render_region(std::string& out, const Region& region, const Layout& l,
                       const char* color) const {
        const Region simplified = srglab::detail::simplify(region);
        // Closed primitives get properly ordered, filled outlines.
        if (const auto* d = std::get_if<DiskParams>(&simplified.node().payload)) {
            std::vector<Complex> pts;
            for (int i = 0; i <= 256; ++i) {
                const double a = 2.0 * M_PI * i / 256.0;
                pts.emplace_back(d->center + d->radius * std::cos(a),
                                 d->radius * std::sin(a));
            }
            emit_path(out, pts, l, color, true);
            return;
        }
        if (const auto* s =
                std::get_if<SectorDiskParams>(&simplified.node().payload)) {
            const double phi = s->angle_bound();
            const double rmax = 1.0 / s->epsilon;
            std::vector<Complex> pts;
            pts.emplace_back(s->delta, -s->delta * std::tan(phi));
            pts.emplace_back(s->delta, s->delta * std::tan(phi));
            for (int i = 0; i <= 256; ++i) {
                const double a = phi - 2.0 * phi * i / 256.0;
                pts.emplace_back(rmax * std::cos(a), rmax * std::sin(a));
            }
            emit_path(out, pts, l, color, true);
            return;
        }
        if (const auto* uni =
                std::get_if<UnionParams>(&simplified.node().payload)) {
            for (const Region& m : uni->members) render_region(out, m, l, color);
            return;
        }
        const bool never_fill =
            std::holds_alternative<DiskExteriorParams>(simplified.node().payload);
        const double window =
            2.0 * std::max({std::abs(l.re_min), std::abs(l.re_max),
                            std::abs(l.im_min), std::abs(l.im_max), 1.0});
        std::vector<srglab::detail::BoundaryArc> arcs;
        srglab::detail::collect_arcs(simplified, window, arcs);
        auto runs = srglab::detail::sample_boundary(arcs, 512, window);
        for (const auto& run : runs) {
            if (run.size() < 2) {
                if (run.size() == 1) {
                    out += std::string("<circle cx=\"") +
                           detail::fmt(l.x(run[0].point.real())) + "\" cy=\"" +
                           detail::fmt(l.y(run[0].point.imag())) +
                           "\" r=\"2\" fill=\"" + color + "\"/>\n";
                }
                continue;
            }
            const bool closed =
                !never_fill &&
                std::abs(run.front().point - run.back().point) < 1e-9;
            std::string path = "M";
            for (const auto& v : run) {
                path += " " + detail::fmt(l.x(v.point.real())) + " " +
                        detail::fmt(l.y(v.point.imag()));
                path += " L";
            }
            path.resize(path.size() - 2);  // drop trailing " L"
            if (closed) path += " Z";
            out += std::string("<path d=\"") + path + "\" stroke=\"" + color +
                   "\" stroke-width=\"1.5\" fill=\"" +
                   (closed ? color : "none") + "\"" +
                   (closed ? " fill-opacity=\"0.18\"" : "") + "/>\n";
        }
    }

    void render_cloud(std::string& out, const SrgCloud& cloud, const Layout& l,
                      const char* color) const {
        for (const auto& p : cloud.points) {
            const Complex z = p.value();
            for (const Complex zz : {z, std::conj(z)}) {
                out += std::string("<circle cx=\"") + detail::fmt(l.x(zz.real())) +
                       "\" cy=\"" + detail::fmt(l.y(zz.imag())) +
                       "\" r=\"2\" fill=\"" + color +
                       "\" fill-opacity=\"0.65\"/>\n";
            }
        }
    }

    void render_witness(std::string& out, const std::pair<Complex, Complex>& w,
                        const Layout& l) const {
        out += "<line x1=\"" + detail::fmt(l.x(w.first.real())) + "\" y1=\"" +
               detail::fmt(l.y(w.first.imag())) + "\" x2=\"" +
               detail::fmt(l.x(w.second.real())) + "\" y2=\"" +
               detail::fmt(l.y(w.second.imag())) +
               "\" stroke=\"#000000\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 3\" class=\"witness\"/>\n";
        for (const Complex z : {w.first, w.second}) {
            out += "<circle cx=\"" + detail::fmt(l.x(z.real())) + "\" cy=\"" +
                   detail::fmt(l.y(z.imag())) +
                   "\" r=\"3.5\" fill=\"none\" stroke=\"#000000\" "
                   "stroke-width=\"1.5\" class=\"witness\"/>\n";
        }
    }

    void render_legend(std::string& out, const PlotOptions& opt) const {
        double y = 40.0;
        const double x = opt.width - 200.0;
        auto entry = [&](const char* color, const std::string& label) {
            out += std::string("<rect x=\"") + detail::fmt(x) + "\" y=\"" +
                   detail::fmt(y - 9) + "\" width=\"12\" height=\"12\" fill=\"" +
                   color + "\"/>\n";
            out += "<text x=\"" + detail::fmt(x + 18) + "\" y=\"" +
                   detail::fmt(y + 2) +
                   "\" font-family=\"sans-serif\" font-size=\"12\">" + label +
                   "</text>\n";
            y += 18.0;
        };
        for (std::size_t i = 0; i < regions_.size(); ++i) {
            entry(detail::palette(i), region_labels_[i]);
        }
        for (std::size_t i = 0; i < clouds_.size(); ++i) {
            entry(detail::palette(regions_.size() + i), cloud_labels_[i]);
        }
        if (!witnesses_.empty()) entry("#000000", "margin witnesses");
    }

    std::vector<Region> regions_;
    std::vector<std::string> region_labels_;
    std::vector<SrgCloud> clouds_;
    std::vector<std::string> cloud_labels_;
    std::vector<std::pair<Complex, Complex>> witnesses_;
};

}  // namespace srglab::svg
