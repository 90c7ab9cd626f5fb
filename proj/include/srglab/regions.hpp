#pragma once

// Conjugate-symmetric analytic regions of the complex plane used as SRG
// over-approximations: disks, half-planes, the truncated sector disk D of
// strictly incrementally positive systems, the imaginary axis, cloud hulls,
// and lazy scale/inversion wrappers with analytic simplification where a
// closed form exists.
//
// Distances come in two flavors: closed forms for the common pairs, and an
// adaptive boundary-polyline fallback (segment-to-segment minimization with
// a fixed subdivision schedule) whose witnesses are snapped back to the true
// boundary so that the reported value always equals |z1 - z2| for points
// that are members of their regions.

#include "srglab/json_util.hpp"
#include "srglab/srg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace srglab {

class IndeterminateDistanceError : public std::runtime_error {
public:
    explicit IndeterminateDistanceError(const std::string& what)
        : std::runtime_error(what) {}
};

class Region;

struct DiskParams {
    double center = 0.0;  // on the real axis
    double radius = 0.0;
};

/// Complement of an open disk: {|z - c| >= r}. Contains the point at
/// infinity; shows up as the inversion image of disks containing 0.
struct DiskExteriorParams {
    double center = 0.0;
    double radius = 0.0;
};

struct HalfPlaneParams {
    double bound = 0.0;
    bool greater = true;  // {Re z >= bound} when true, {Re z <= bound} otherwise
};

/// Truncated sector disk D(delta, epsilon) bounding the SRG of strictly
/// incrementally positive systems: |angle| <= arccos(2*sqrt(delta*eps)),
/// 0 < |z| <= 1/eps, Re z >= delta.
struct SectorDiskParams {
    double delta = 0.0;
    double epsilon = 0.0;
    [[nodiscard]] double angle_bound() const {
        return std::acos(std::clamp(2.0 * std::sqrt(delta * epsilon), -1.0, 1.0));
    }
};

struct ImaginaryAxisParams {};

struct ScaledParams {
    double tau = 1.0;
    std::vector<Region> inner;  // exactly one
};

struct InvertedParams {
    std::vector<Region> inner;  // exactly one
};

/// Union of pad-disks around sampled points (upper-half representatives;
/// conjugates implied). pad = 0 degenerates to the point set itself.
struct HullParams {
    std::vector<Complex> points;
    double pad = 0.0;
};

struct UnionParams {
    std::vector<Region> members;
};

struct RegionNode {
    std::variant<DiskParams, DiskExteriorParams, HalfPlaneParams,
                 SectorDiskParams, ImaginaryAxisParams, ScaledParams,
                 InvertedParams, HullParams, UnionParams>
        payload;
};

class Region {
public:
    Region() = default;

    static Region disk(double center, double radius) {
        if (!(radius >= 0.0)) throw std::domain_error("disk: radius must be >= 0");
        return make(DiskParams{center, radius});
    }
    static Region disk_exterior(double center, double radius) {
        if (!(radius >= 0.0)) {
            throw std::domain_error("disk_exterior: radius must be >= 0");
        }
        return make(DiskExteriorParams{center, radius});
    }
    static Region half_plane_geq(double bound) {
        return make(HalfPlaneParams{bound, true});
    }
    static Region half_plane_leq(double bound) {
        return make(HalfPlaneParams{bound, false});
    }
    /// The sector disk D(delta, epsilon). Requires delta, epsilon > 0 and
    /// 2*sqrt(delta*epsilon) <= 1, otherwise the angle bound is vacuous.
    static Region sector_disk(double delta, double epsilon) {
        if (!(delta > 0.0)) {
            throw std::domain_error("sector_disk: delta must be > 0");
        }
        if (!(epsilon > 0.0)) {
            throw std::domain_error("sector_disk: epsilon must be > 0");
        }
        if (2.0 * std::sqrt(delta * epsilon) > 1.0 + 1e-12) {
            throw std::domain_error(
                "sector_disk: need 2*sqrt(delta*epsilon) <= 1");
        }
        return make(SectorDiskParams{delta, epsilon});
    }
    static Region imaginary_axis(bool punctured = true) {
        Region r = make(ImaginaryAxisParams{});
        r.punctured_ = punctured;
        return r;
    }
    static Region hull_of_cloud(const SrgCloud& cloud, double pad = 0.0) {
        if (cloud.points.empty()) {
            throw std::invalid_argument("hull_of_cloud: empty cloud");
        }
        if (!(pad >= 0.0)) throw std::domain_error("hull_of_cloud: pad >= 0");
        HullParams h;
        h.pad = pad;
        h.points.reserve(cloud.points.size());
        for (const auto& p : cloud.points) h.points.push_back(p.value());
        return make(std::move(h));
    }
    static Region hull_of_points(std::vector<Complex> points, double pad = 0.0) {
        if (points.empty()) throw std::invalid_argument("hull: no points");
        if (!(pad >= 0.0)) throw std::domain_error("hull: pad >= 0");
        return make(HullParams{std::move(points), pad});
    }
    static Region union_of(std::vector<Region> members) {
        if (members.empty()) throw std::invalid_argument("union: no members");
        return make(UnionParams{std::move(members)});
    }
    static Region scaled_raw(double tau, Region inner) {
        if (!(tau > 0.0)) throw std::domain_error("scale_region: tau must be > 0");
        return make(ScaledParams{tau, {std::move(inner)}});
    }
    static Region inverted_raw(Region inner) {
        return make(InvertedParams{{std::move(inner)}});
    }

    [[nodiscard]] const RegionNode& node() const {
        if (!node_) throw std::logic_error("empty Region");
        return *node_;
    }
    [[nodiscard]] bool valid() const { return node_ != nullptr; }

    [[nodiscard]] bool punctured_at_zero() const { return punctured_; }
    [[nodiscard]] Region with_puncture(bool punctured) const {
        Region r = *this;
        r.punctured_ = punctured;
        return r;
    }

    [[nodiscard]] bool contains(Complex z) const;
    [[nodiscard]] bool contains_infinity() const;

    /// sup |z| over the region, when finite.
    [[nodiscard]] std::optional<double> bounding_radius() const;
    /// inf |z| over the region (0 when the region approaches the origin).
    [[nodiscard]] double min_modulus() const;

private:
    template <typename P>
    static Region make(P&& payload) {
        Region r;
        auto node = std::make_shared<RegionNode>();
        node->payload = std::forward<P>(payload);
        r.node_ = std::move(node);
        return r;
    }
    std::shared_ptr<const RegionNode> node_;
    bool punctured_ = false;
};

/// Convenience alias matching the construction in the passivity results.
inline Region make_sector_disk_D(double delta, double epsilon) {
    return Region::sector_disk(delta, epsilon);
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace detail {

inline bool node_contains(const RegionNode& n, Complex z);

inline bool node_contains_infinity(const RegionNode& n);

inline bool region_contains_unpunctured(const Region& r, Complex z) {
    return node_contains(r.node(), z);
}

inline bool node_contains(const RegionNode& n, Complex z) {
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        return std::abs(z - Complex(d->center, 0.0)) <= d->radius;
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        return std::abs(z - Complex(e->center, 0.0)) >= e->radius;
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        return h->greater ? z.real() >= h->bound : z.real() <= h->bound;
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        if (z.real() < s->delta) return false;
        const double mag = std::abs(z);
        if (mag > 1.0 / s->epsilon) return false;
        const double angle = std::atan2(std::abs(z.imag()), z.real());
        return angle <= s->angle_bound() + 1e-15;
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        return z.real() == 0.0;
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return sc->inner.front().contains(z / sc->tau);
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        if (z == Complex(0.0, 0.0)) return inv->inner.front().contains_infinity();
        return inv->inner.front().contains(1.0 / z);
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        for (const Complex& p : hull->points) {
            if (std::abs(z - p) <= hull->pad) return true;
            if (std::abs(z - std::conj(p)) <= hull->pad) return true;
        }
        return false;
    }
    const auto& uni = std::get<UnionParams>(n.payload);
    for (const Region& m : uni.members) {
        if (m.contains(z)) return true;
    }
    return false;
}

inline bool node_contains_infinity(const RegionNode& n) {
    if (std::holds_alternative<DiskExteriorParams>(n.payload)) return true;
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return sc->inner.front().contains_infinity();
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        return inv->inner.front().contains(Complex(0.0, 0.0));
    }
    if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        for (const Region& m : uni->members) {
            if (m.contains_infinity()) return true;
        }
    }
    return false;
}

}  // namespace detail

inline bool Region::contains(Complex z) const {
    if (punctured_ && z == Complex(0.0, 0.0)) return false;
    return detail::node_contains(node(), z);
}

inline bool Region::contains_infinity() const {
    return detail::node_contains_infinity(node());
}

inline std::optional<double> Region::bounding_radius() const {
    const RegionNode& n = node();
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        return std::abs(d->center) + d->radius;
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        return 1.0 / s->epsilon;
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        double m = 0.0;
        for (const Complex& p : hull->points) m = std::max(m, std::abs(p));
        return m + hull->pad;
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        if (auto r = sc->inner.front().bounding_radius()) return *r * sc->tau;
        return std::nullopt;
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        const double m = inv->inner.front().min_modulus();
        if (m > 0.0) return 1.0 / m;
        return std::nullopt;
    }
    if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        double m = 0.0;
        for (const Region& mem : uni->members) {
            auto r = mem.bounding_radius();
            if (!r) return std::nullopt;
            m = std::max(m, *r);
        }
        return m;
    }
    return std::nullopt;  // half-plane, axis, disk exterior
}

inline double Region::min_modulus() const {
    const RegionNode& n = node();
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        return std::max(0.0, std::abs(d->center) - d->radius);
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        if (std::abs(e->center) >= e->radius) return 0.0;
        return e->radius - std::abs(e->center);
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        if (h->greater) return std::max(0.0, h->bound);
        return std::max(0.0, -h->bound);
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        return s->delta;
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) return 0.0;
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return sc->tau * sc->inner.front().min_modulus();
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        auto r = inv->inner.front().bounding_radius();
        return r && *r > 0.0 ? 1.0 / *r : 0.0;
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        double m = std::numeric_limits<double>::infinity();
        for (const Complex& p : hull->points) m = std::min(m, std::abs(p));
        return std::max(0.0, m - hull->pad);
    }
    const auto& uni = std::get<UnionParams>(n.payload);
    double m = std::numeric_limits<double>::infinity();
    for (const Region& mem : uni.members) m = std::min(m, mem.min_modulus());
    return m;
}

// ---------------------------------------------------------------------------
// Simplification and transforms
// ---------------------------------------------------------------------------

namespace detail {

Region simplify(const Region& r);

/// Image of a region under z -> tau*z, pushed into primitives where exact.
inline Region simplify_scaled(double tau, const Region& inner, bool punctured) {
    const RegionNode& n = inner.node();
    Region out;
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        out = Region::disk(tau * d->center, tau * d->radius);
    } else if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        out = Region::disk_exterior(tau * e->center, tau * e->radius);
    } else if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        out = h->greater ? Region::half_plane_geq(tau * h->bound)
                         : Region::half_plane_leq(tau * h->bound);
    } else if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        // tau*D(delta, eps) = D(tau*delta, eps/tau); the angle bound is
        // scale-invariant so validity is preserved.
        out = Region::sector_disk(tau * s->delta, s->epsilon / tau);
    } else if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        out = Region::imaginary_axis(inner.punctured_at_zero());
    } else if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        HullParams scaled_hull;
        scaled_hull.pad = tau * hull->pad;
        scaled_hull.points.reserve(hull->points.size());
        for (const Complex& p : hull->points) scaled_hull.points.push_back(tau * p);
        out = Region::hull_of_points(std::move(scaled_hull.points), scaled_hull.pad);
    } else if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        std::vector<Region> members;
        members.reserve(uni->members.size());
        for (const Region& m : uni->members) {
            members.push_back(simplify_scaled(tau, simplify(m), m.punctured_at_zero()));
        }
        out = Region::union_of(std::move(members));
    } else if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return simplify_scaled(tau * sc->tau, simplify(sc->inner.front()),
                               punctured || sc->inner.front().punctured_at_zero());
    } else {
        out = Region::scaled_raw(tau, inner);
    }
    return out.with_puncture(punctured || inner.punctured_at_zero());
}

/// Image of a region under z -> 1/z (Moebius on the extended plane).
inline Region simplify_inverted(const Region& inner) {
    const RegionNode& n = inner.node();
    // 0 is in the image iff infinity is in the preimage; otherwise the image
    // carries a puncture whenever the formulaic carrier set includes 0.
    const bool zero_in_image = inner.contains_infinity();
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        const double c = d->center;
        const double r = d->radius;
        const double m = c * c - r * r;
        if (m > 0.0) {
            return Region::disk(c / m, r / m);
        }
        if (m < 0.0) {
            return Region::disk_exterior(c / m, r / -m);
        }
        if (c > 0.0) return Region::half_plane_geq(1.0 / (2.0 * c));
        if (c < 0.0) return Region::half_plane_leq(1.0 / (2.0 * c));
        throw std::domain_error("invert_region: cannot invert the single point 0");
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        const double c = e->center;
        const double r = e->radius;
        const double m = c * c - r * r;
        if (m > 0.0) {
            return Region::disk_exterior(c / m, r / m);
        }
        if (m < 0.0) {
            Region out = Region::disk(c / m, r / -m);
            return out.with_puncture(!zero_in_image);
        }
        if (c > 0.0) {
            Region out = Region::half_plane_leq(1.0 / (2.0 * c));
            return out.with_puncture(!zero_in_image);
        }
        if (c < 0.0) {
            Region out = Region::half_plane_geq(1.0 / (2.0 * c));
            return out.with_puncture(!zero_in_image);
        }
        // exterior of a disk centered at 0: {|z| >= r} -> {|z| <= 1/r}
        Region out = Region::disk(0.0, r > 0.0 ? 1.0 / r : 0.0);
        return out.with_puncture(!zero_in_image);
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        const double b = h->bound;
        if (b == 0.0) {
            Region out = h->greater ? Region::half_plane_geq(0.0)
                                    : Region::half_plane_leq(0.0);
            return out.with_puncture(true);
        }
        const double c = 1.0 / (2.0 * b);
        if ((h->greater && b > 0.0) || (!h->greater && b < 0.0)) {
            // Line not through 0, origin outside: image is a punctured disk.
            Region out = Region::disk(c, std::abs(c));
            return out.with_puncture(true);
        }
        // Origin interior: image is the exterior of the mirror disk.
        return Region::disk_exterior(c, std::abs(c));
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        return Region::imaginary_axis(true);
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return simplify_scaled(1.0 / sc->tau,
                               simplify_inverted(simplify(sc->inner.front())),
                               false);
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        return simplify(inv->inner.front());
    }
    if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        std::vector<Region> members;
        members.reserve(uni->members.size());
        for (const Region& m : uni->members) {
            members.push_back(simplify_inverted(simplify(m)));
        }
        return Region::union_of(std::move(members));
    }
    // sector disk / hull: keep the lazy wrapper; membership stays exact.
    Region out = Region::inverted_raw(inner);
    return out.with_puncture(!zero_in_image);
}

inline Region simplify(const Region& r) {
    const RegionNode& n = r.node();
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return simplify_scaled(sc->tau, simplify(sc->inner.front()),
                               r.punctured_at_zero());
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        Region out = simplify_inverted(simplify(inv->inner.front()));
        if (r.punctured_at_zero()) out = out.with_puncture(true);
        return out;
    }
    return r;
}

}  // namespace detail

/// z in scale_region(R, tau) iff z/tau in R. Simplifies to a primitive
/// variant whenever the image has one.
inline Region scale_region(const Region& region, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("scale_region: tau must be > 0");
    return detail::simplify_scaled(tau, detail::simplify(region),
                                   region.punctured_at_zero());
}

/// z in invert_region(R) iff 1/z in R, with extended-plane bookkeeping:
/// regions containing 0 invert to regions containing infinity.
inline Region invert_region(const Region& region) {
    return detail::simplify_inverted(detail::simplify(region));
}

// ---------------------------------------------------------------------------
// Boundary sampling
// ---------------------------------------------------------------------------

namespace detail {

struct BoundaryArc {
    std::function<Complex(double)> at;  // t in [0,1] -> boundary point
    bool straight = false;
};

inline double characteristic_scale(const Region& r) {
    if (auto b = r.bounding_radius()) return std::max(1.0, *b);
    const RegionNode& n = r.node();
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        return std::max(1.0, std::abs(e->center) + e->radius);
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        return std::max(1.0, std::abs(h->bound));
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return sc->tau * characteristic_scale(sc->inner.front());
    }
    if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        double m = 1.0;
        for (const Region& mem : uni->members) {
            m = std::max(m, characteristic_scale(mem));
        }
        return m;
    }
    return 1.0;
}

inline void collect_arcs(const Region& r, double window,
                         std::vector<BoundaryArc>& arcs) {
    const RegionNode& n = r.node();
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        const double c = d->center;
        const double radius = d->radius;
        arcs.push_back({[c, radius](double t) {
                            const double a = 2.0 * M_PI * t;
                            return Complex(c + radius * std::cos(a),
                                           radius * std::sin(a));
                        },
                        radius == 0.0});
        return;
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        const double c = e->center;
        const double radius = e->radius;
        arcs.push_back({[c, radius](double t) {
                            const double a = 2.0 * M_PI * t;
                            return Complex(c + radius * std::cos(a),
                                           radius * std::sin(a));
                        },
                        radius == 0.0});
        return;
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        const double b = h->bound;
        arcs.push_back({[b, window](double t) {
                            return Complex(b, window * (2.0 * t - 1.0));
                        },
                        true});
        return;
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        const double phi = s->angle_bound();
        const double rmax = 1.0 / s->epsilon;
        const double delta = s->delta;
        const Complex chord_top(delta, delta * std::tan(phi));
        const Complex arc_top = rmax * Complex(std::cos(phi), std::sin(phi));
        arcs.push_back({[chord_top](double t) {
                            return Complex(chord_top.real(),
                                           chord_top.imag() * (2.0 * t - 1.0));
                        },
                        true});
        arcs.push_back({[chord_top, arc_top](double t) {
                            return chord_top + t * (arc_top - chord_top);
                        },
                        true});
        arcs.push_back({[chord_top, arc_top](double t) {
                            return std::conj(chord_top + t * (arc_top - chord_top));
                        },
                        true});
        arcs.push_back({[phi, rmax](double t) {
                            const double a = phi * (2.0 * t - 1.0);
                            return rmax * Complex(std::cos(a), std::sin(a));
                        },
                        phi == 0.0});
        return;
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        arcs.push_back({[window](double t) {
                            return Complex(0.0, window * (2.0 * t - 1.0));
                        },
                        true});
        return;
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        std::vector<BoundaryArc> inner_arcs;
        collect_arcs(sc->inner.front(), window / sc->tau, inner_arcs);
        const double tau = sc->tau;
        for (auto& a : inner_arcs) {
            auto base = a.at;
            arcs.push_back({[base, tau](double t) { return tau * base(t); },
                            a.straight});
        }
        return;
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        std::vector<BoundaryArc> inner_arcs;
        collect_arcs(inv->inner.front(), std::max(window, 1e6), inner_arcs);
        for (auto& a : inner_arcs) {
            auto base = a.at;
            arcs.push_back({[base](double t) {
                                const Complex z = base(t);
                                if (z == Complex(0.0, 0.0)) {
                                    return Complex(
                                        std::numeric_limits<double>::infinity(), 0.0);
                                }
                                return 1.0 / z;
                            },
                            false});
        }
        return;
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        for (const Complex& p : hull->points) {
            for (int branch = 0; branch < (p.imag() == 0.0 ? 1 : 2); ++branch) {
                const Complex center = branch == 0 ? p : std::conj(p);
                const double pad = hull->pad;
                if (pad == 0.0) {
                    arcs.push_back({[center](double) { return center; }, true});
                } else {
                    arcs.push_back({[center, pad](double t) {
                                        const double a = 2.0 * M_PI * t;
                                        return center + pad * Complex(std::cos(a),
                                                                      std::sin(a));
                                    },
                                    false});
                }
            }
        }
        return;
    }
    const auto& uni = std::get<UnionParams>(n.payload);
    for (const Region& m : uni.members) collect_arcs(m, window, arcs);
}

struct BoundaryVertex {
    Complex point;
    std::size_t arc = 0;
    double param = 0.0;
};

/// Sample all boundary arcs into vertex runs; non-finite or out-of-window
/// vertices break the polyline so segments never bridge removed sections.
inline std::vector<std::vector<BoundaryVertex>> sample_boundary(
    const std::vector<BoundaryArc>& arcs, int vertices_per_arc, double window) {
    std::vector<std::vector<BoundaryVertex>> runs;
    for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
        std::vector<BoundaryVertex> run;
        for (int i = 0; i <= vertices_per_arc; ++i) {
            const double t = static_cast<double>(i) / vertices_per_arc;
            const Complex z = arcs[ai].at(t);
            const bool ok = std::isfinite(z.real()) && std::isfinite(z.imag()) &&
                            std::abs(z) <= window;
            if (ok) {
                run.push_back({z, ai, t});
            } else if (!run.empty()) {
                runs.push_back(std::move(run));
                run.clear();
            }
        }
        if (!run.empty()) runs.push_back(std::move(run));
    }
    return runs;
}

/// Closest points between two segments; returns squared distance and the
/// interpolation parameters on each segment.
inline double segment_segment_dist2(Complex a0, Complex a1, Complex b0,
                                    Complex b1, double& s_out, double& t_out) {
    const Complex da = a1 - a0;
    const Complex db = b1 - b0;
    const Complex r = a0 - b0;
    const double a = std::norm(da);
    const double e = std::norm(db);
    const double f = db.real() * r.real() + db.imag() * r.imag();
    double s = 0.0;
    double t = 0.0;
    if (a <= 1e-30 && e <= 1e-30) {
        s = t = 0.0;
    } else if (a <= 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = da.real() * r.real() + da.imag() * r.imag();
        if (e <= 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = da.real() * db.real() + da.imag() * db.imag();
            const double denom = a * e - b * b;
            if (denom > 1e-30) {
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            }
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    s_out = s;
    t_out = t;
    const Complex closest_a = a0 + s * da;
    const Complex closest_b = b0 + t * db;
    return std::norm(closest_a - closest_b);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Distance
// ---------------------------------------------------------------------------

struct DistanceResult {
    double value = 0.0;
    Complex witness_a;
    Complex witness_b;
    enum class Method { analytic, sampled_boundary } method = Method::analytic;
    int refinement_level = 0;
};

enum class DistancePath { automatic, analytic_only, sampled_only };

struct PointDistance {
    double value = 0.0;
    Complex nearest;  // point of the region closest to the probe
};

PointDistance point_to_region(const Region& region, Complex z);

namespace detail {

/// Interior-ish representative used for mutual-containment checks.
inline Complex representative_point(const Region& r) {
    const RegionNode& n = r.node();
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        return Complex(d->center, 0.0);
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        return Complex(e->center + e->radius + 1.0, 0.0);
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        return Complex(h->greater ? h->bound + 1.0 : h->bound - 1.0, 0.0);
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        return Complex(0.5 * (s->delta + 1.0 / s->epsilon), 0.0);
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        return Complex(0.0, 1.0);
    }
    if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        return sc->tau * representative_point(sc->inner.front());
    }
    if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        const Complex z = representative_point(inv->inner.front());
        if (z == Complex(0.0, 0.0)) return Complex(1e9, 0.0);
        return 1.0 / z;
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        return hull->points.front();
    }
    return representative_point(std::get<UnionParams>(n.payload).members.front());
}

inline DistanceResult analytic_result(double gap, Complex wa, Complex wb) {
    DistanceResult res;
    res.value = std::max(0.0, gap);
    res.witness_a = wa;
    res.witness_b = wb;
    res.method = DistanceResult::Method::analytic;
    res.refinement_level = 0;
    if (res.value > 0.0) res.value = std::abs(wa - wb);
    return res;
}

inline DistanceResult intersect_result(Complex common) {
    DistanceResult res;
    res.value = 0.0;
    res.witness_a = common;
    res.witness_b = common;
    res.method = DistanceResult::Method::analytic;
    res.refinement_level = 0;
    return res;
}

/// Closed-form distances for primitive pairs; nullopt when no form exists.
/// Caller tries both argument orders.
inline std::optional<DistanceResult> analytic_pair(const Region& ra,
                                                   const Region& rb) {
    const RegionNode& na = ra.node();
    const RegionNode& nb = rb.node();
    const auto* da = std::get_if<DiskParams>(&na.payload);
    const auto* db = std::get_if<DiskParams>(&nb.payload);
    const auto* ea = std::get_if<DiskExteriorParams>(&na.payload);
    const auto* eb = std::get_if<DiskExteriorParams>(&nb.payload);
    const auto* ha = std::get_if<HalfPlaneParams>(&na.payload);
    const auto* hb = std::get_if<HalfPlaneParams>(&nb.payload);
    const auto* sa = std::get_if<SectorDiskParams>(&na.payload);
    const bool axa = std::holds_alternative<ImaginaryAxisParams>(na.payload);
    const bool axb = std::holds_alternative<ImaginaryAxisParams>(nb.payload);

    if (da && db) {
        const double sep = std::abs(da->center - db->center);
        const double gap = sep - da->radius - db->radius;
        const double dir = db->center >= da->center ? 1.0 : -1.0;
        if (gap > 0.0) {
            return analytic_result(gap, Complex(da->center + dir * da->radius, 0.0),
                                   Complex(db->center - dir * db->radius, 0.0));
        }
        const double t = std::clamp(sep - db->radius, -da->radius, da->radius);
        return intersect_result(Complex(da->center + dir * t, 0.0));
    }
    if (da && eb) {
        const double sep = std::abs(da->center - eb->center);
        const double dir = da->center >= eb->center ? 1.0 : -1.0;
        if (sep + da->radius >= eb->radius) {
            // farthest point of the disk from the hole's center lies outside
            return intersect_result(
                Complex(da->center + dir * da->radius, 0.0));
        }
        const double gap = eb->radius - sep - da->radius;
        return analytic_result(gap, Complex(da->center + dir * da->radius, 0.0),
                               Complex(eb->center + dir * eb->radius, 0.0));
    }
    if (ea && eb) {
        const double far = std::max(std::abs(ea->center) + ea->radius,
                                    std::abs(eb->center) + eb->radius) +
                           1.0;
        return intersect_result(Complex(far, 0.0));
    }
    if (da && hb) {
        const double c = da->center;
        const double r = da->radius;
        if (hb->greater) {
            const double gap = hb->bound - (c + r);
            if (gap > 0.0) {
                return analytic_result(gap, Complex(c + r, 0.0),
                                       Complex(hb->bound, 0.0));
            }
            return intersect_result(
                Complex(c + std::clamp(hb->bound - c, -r, r), 0.0));
        }
        const double gap = (c - r) - hb->bound;
        if (gap > 0.0) {
            return analytic_result(gap, Complex(c - r, 0.0),
                                   Complex(hb->bound, 0.0));
        }
        return intersect_result(Complex(c + std::clamp(hb->bound - c, -r, r), 0.0));
    }
    if (ha && hb) {
        if (ha->greater == hb->greater) {
            const double x = ha->greater ? std::max(ha->bound, hb->bound)
                                         : std::min(ha->bound, hb->bound);
            return intersect_result(Complex(x, 0.0));
        }
        const double glo = ha->greater ? ha->bound : hb->bound;  // {Re >= glo}
        const double lhi = ha->greater ? hb->bound : ha->bound;  // {Re <= lhi}
        const double gap = glo - lhi;
        if (gap > 0.0) {
            const Complex wg(glo, 0.0);
            const Complex wl(lhi, 0.0);
            return ha->greater ? analytic_result(gap, wg, wl)
                               : analytic_result(gap, wl, wg);
        }
        return intersect_result(Complex(0.5 * (glo + lhi), 0.0));
    }
    if (ha && eb) {
        const double x = ha->greater
                             ? std::max(ha->bound, eb->center + eb->radius) + 1.0
                             : std::min(ha->bound, eb->center - eb->radius) - 1.0;
        return intersect_result(Complex(x, 0.0));
    }
    if (da && axb) {
        const double gap = std::abs(da->center) - da->radius;
        if (gap > 0.0) {
            const double dir = da->center > 0.0 ? 1.0 : -1.0;
            return analytic_result(gap, Complex(da->center - dir * da->radius, 0.0),
                                   Complex(0.0, 0.0));
        }
        return intersect_result(Complex(0.0, 0.0));
    }
    if (ea && axb) {
        return intersect_result(
            Complex(0.0, std::abs(ea->center) + ea->radius + 1.0));
    }
    if (ha && axb) {
        if (ha->greater) {
            if (ha->bound > 0.0) {
                return analytic_result(ha->bound, Complex(ha->bound, 0.0),
                                       Complex(0.0, 0.0));
            }
        } else if (ha->bound < 0.0) {
            return analytic_result(-ha->bound, Complex(ha->bound, 0.0),
                                   Complex(0.0, 0.0));
        }
        return intersect_result(Complex(0.0, 0.0));
    }
    if (axa && axb) {
        return intersect_result(Complex(0.0, 1.0));
    }
    if (sa && hb) {
        const double rmax = 1.0 / sa->epsilon;
        if (hb->greater) {
            const double gap = hb->bound - rmax;
            if (gap > 0.0) {
                return analytic_result(gap, Complex(rmax, 0.0),
                                       Complex(hb->bound, 0.0));
            }
            return intersect_result(Complex(std::max(sa->delta, hb->bound), 0.0));
        }
        const double gap = sa->delta - hb->bound;
        if (gap > 0.0) {
            return analytic_result(gap, Complex(sa->delta, 0.0),
                                   Complex(hb->bound, 0.0));
        }
        return intersect_result(Complex(sa->delta, 0.0));
    }
    if (sa && axb) {
        return analytic_result(sa->delta, Complex(sa->delta, 0.0),
                               Complex(0.0, 0.0));
    }
    return std::nullopt;
}

inline DistanceResult swap_witnesses(DistanceResult r) {
    std::swap(r.witness_a, r.witness_b);
    return r;
}

inline DistanceResult sampled_distance(const Region& a, const Region& b,
                                       int refinement) {
    const double window =
        4.0 * std::max(characteristic_scale(a), characteristic_scale(b));

    // Mutual-containment and overlap checks make intersections exact zeros.
    if (b.contains(representative_point(a)) ||
        a.contains(representative_point(b))) {
        const Complex common = b.contains(representative_point(a))
                                   ? representative_point(a)
                                   : representative_point(b);
        DistanceResult res;
        res.value = 0.0;
        res.witness_a = common;
        res.witness_b = common;
        res.method = DistanceResult::Method::sampled_boundary;
        res.refinement_level = 0;
        return res;
    }

    std::vector<BoundaryArc> arcs_a;
    std::vector<BoundaryArc> arcs_b;
    collect_arcs(a, window, arcs_a);
    collect_arcs(b, window, arcs_b);
    if (arcs_a.empty() || arcs_b.empty()) {
        throw IndeterminateDistanceError(
            "region_distance: no boundary to sample");
    }

    double prev = std::numeric_limits<double>::quiet_NaN();
    DistanceResult best;
    best.method = DistanceResult::Method::sampled_boundary;
    for (int level = 0; level <= refinement; ++level) {
        const int verts = 256 << level;
        auto runs_a = sample_boundary(arcs_a, verts, window);
        auto runs_b = sample_boundary(arcs_b, verts, window);
        double best2 = std::numeric_limits<double>::infinity();
        BoundaryVertex wa0, wa1, wb0, wb1;
        double ws = 0.0;
        double wt = 0.0;
        bool found = false;
        for (const auto& ra : runs_a) {
            for (std::size_t i = 0; i + 1 < ra.size() || ra.size() == 1; ++i) {
                const BoundaryVertex& a0 = ra[i];
                const BoundaryVertex& a1 = ra.size() == 1 ? ra[i] : ra[i + 1];
                for (const auto& rb : runs_b) {
                    for (std::size_t j = 0; j + 1 < rb.size() || rb.size() == 1;
                         ++j) {
                        const BoundaryVertex& b0 = rb[j];
                        const BoundaryVertex& b1 =
                            rb.size() == 1 ? rb[j] : rb[j + 1];
                        double s = 0.0;
                        double t = 0.0;
                        const double d2 = segment_segment_dist2(
                            a0.point, a1.point, b0.point, b1.point, s, t);
                        if (d2 < best2) {
                            best2 = d2;
                            wa0 = a0;
                            wa1 = a1;
                            wb0 = b0;
                            wb1 = b1;
                            ws = s;
                            wt = t;
                            found = true;
                        }
                        if (rb.size() == 1) break;
                    }
                }
                if (ra.size() == 1) break;
            }
        }
        if (!found) {
            throw IndeterminateDistanceError(
                "region_distance: boundary sampling produced no segments");
        }
        // Snap witnesses back onto the true boundary via the arc parameters,
        // then recompute the value from the snapped witnesses.
        const double pa = wa0.param + ws * (wa1.param - wa0.param);
        const double pb = wb0.param + wt * (wb1.param - wb0.param);
        best.witness_a = arcs_a[wa0.arc].at(pa);
        best.witness_b = arcs_b[wb0.arc].at(pb);
        best.value = std::abs(best.witness_a - best.witness_b);
        best.refinement_level = level;
        // Membership cross-check: boundary vertices of one region lying in
        // the other indicate an intersection the closed forms would call 0.
        if (best.value <= 1e-12 || b.contains(best.witness_a) ||
            a.contains(best.witness_b)) {
            const Complex common =
                b.contains(best.witness_a) ? best.witness_a : best.witness_b;
            best.value = 0.0;
            best.witness_a = common;
            best.witness_b = common;
            return best;
        }
        if (!std::isnan(prev) && std::abs(best.value - prev) < 1e-6) {
            return best;
        }
        prev = best.value;
    }
    throw IndeterminateDistanceError(
        "region_distance: boundary sampling did not converge within the "
        "refinement cap");
}

}  // namespace detail

/// Shortest Euclidean distance between two regions, 0 when they intersect.
/// Analytic closed forms where available, adaptive boundary sampling
/// otherwise. Throws IndeterminateDistanceError when sampling cannot settle.
inline DistanceResult region_distance(const Region& a, const Region& b,
                                      int refinement = 4,
                                      DistancePath path = DistancePath::automatic) {
    const Region sa = detail::simplify(a);
    const Region sb = detail::simplify(b);

    // Unions and hulls decompose structurally.
    if (const auto* uni = std::get_if<UnionParams>(&sa.node().payload)) {
        std::optional<DistanceResult> best;
        for (const Region& m : uni->members) {
            DistanceResult d = region_distance(m, sb, refinement, path);
            if (!best || d.value < best->value) best = d;
            if (best->value == 0.0) break;
        }
        return *best;
    }
    if (std::holds_alternative<UnionParams>(sb.node().payload)) {
        return detail::swap_witnesses(
            region_distance(sb, sa, refinement, path));
    }
    if (const auto* hull = std::get_if<HullParams>(&sa.node().payload)) {
        if (const auto* hull_b = std::get_if<HullParams>(&sb.node().payload)) {
            DistanceResult best;
            best.value = std::numeric_limits<double>::infinity();
            for (const Complex& p : hull->points) {
                for (const Complex& q : hull_b->points) {
                    for (const Complex qq : {q, std::conj(q)}) {
                        const double d = std::abs(p - qq);
                        if (d < best.value) {
                            best.value = d;
                            best.witness_a = p;
                            best.witness_b = qq;
                        }
                    }
                }
            }
            const double gap = best.value - hull->pad - hull_b->pad;
            if (gap <= 0.0) {
                // Pick a point common to both pad disks along the p-q line.
                const Complex diff = best.witness_b - best.witness_a;
                const double len = std::abs(diff);
                const Complex dir = len > 0.0 ? diff / len : Complex(1.0, 0.0);
                const double step =
                    std::clamp(len - hull_b->pad, 0.0, hull->pad);
                const Complex common = best.witness_a + step * dir;
                best.value = 0.0;
                best.witness_a = common;
                best.witness_b = common;
            } else {
                const Complex dir = (best.witness_b - best.witness_a) /
                                    std::abs(best.witness_b - best.witness_a);
                best.witness_a += hull->pad * dir;
                best.witness_b -= hull_b->pad * dir;
                best.value = std::abs(best.witness_a - best.witness_b);
            }
            best.method = DistanceResult::Method::analytic;
            return best;
        }
        DistanceResult best;
        best.value = std::numeric_limits<double>::infinity();
        for (const Complex& p : hull->points) {
            const PointDistance pd = point_to_region(sb, p);
            if (pd.value < best.value) {
                best.value = pd.value;
                best.witness_a = p;
                best.witness_b = pd.nearest;
            }
        }
        const double gap = best.value - hull->pad;
        if (gap <= 0.0) {
            best.value = 0.0;
            best.witness_a = best.witness_b;
        } else if (hull->pad > 0.0) {
            const Complex dir = (best.witness_b - best.witness_a) /
                                std::abs(best.witness_b - best.witness_a);
            best.witness_a += hull->pad * dir;
            best.value = std::abs(best.witness_a - best.witness_b);
        }
        best.method = DistanceResult::Method::analytic;
        return best;
    }
    if (std::holds_alternative<HullParams>(sb.node().payload)) {
        return detail::swap_witnesses(region_distance(sb, sa, refinement, path));
    }

    if (path != DistancePath::sampled_only) {
        if (auto res = detail::analytic_pair(sa, sb)) return *res;
        if (auto res = detail::analytic_pair(sb, sa)) {
            return detail::swap_witnesses(*res);
        }
        if (path == DistancePath::analytic_only) {
            throw IndeterminateDistanceError(
                "region_distance: no analytic form for this pair");
        }
    }
    return detail::sampled_distance(sa, sb, refinement);
}

/// Distance from a probe point to a region (0 when the point is a member),
/// with the nearest region point as witness.
inline PointDistance point_to_region(const Region& region, Complex z) {
    const Region r = detail::simplify(region);
    const RegionNode& n = r.node();
    if (detail::region_contains_unpunctured(r, z)) return {0.0, z};
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        const Complex c(d->center, 0.0);
        const Complex off = z - c;
        const double dist = std::abs(off);
        if (dist <= d->radius) return {0.0, z};
        const Complex dir = dist > 0.0 ? off / dist : Complex(1.0, 0.0);
        return {dist - d->radius, c + d->radius * dir};
    }
    if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        const Complex c(e->center, 0.0);
        const Complex off = z - c;
        const double dist = std::abs(off);
        if (dist >= e->radius) return {0.0, z};
        const Complex dir = dist > 0.0 ? off / dist : Complex(1.0, 0.0);
        return {e->radius - dist, c + e->radius * dir};
    }
    if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        if (h->greater) {
            if (z.real() >= h->bound) return {0.0, z};
            return {h->bound - z.real(), Complex(h->bound, z.imag())};
        }
        if (z.real() <= h->bound) return {0.0, z};
        return {z.real() - h->bound, Complex(h->bound, z.imag())};
    }
    if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        // D is convex; the nearest point lies on one of the four boundary
        // pieces (chord, two rays, arc).
        const double phi = s->angle_bound();
        const double rmax = 1.0 / s->epsilon;
        const Complex chord_top(s->delta, s->delta * std::tan(phi));
        const Complex arc_top = rmax * Complex(std::cos(phi), std::sin(phi));
        auto seg_nearest = [](Complex p, Complex q0, Complex q1) {
            const Complex dq = q1 - q0;
            const double len2 = std::norm(dq);
            double t = 0.0;
            if (len2 > 0.0) {
                t = std::clamp(((p - q0).real() * dq.real() +
                                (p - q0).imag() * dq.imag()) /
                                   len2,
                               0.0, 1.0);
            }
            return q0 + t * dq;
        };
        std::vector<Complex> candidates;
        candidates.push_back(seg_nearest(z, std::conj(chord_top), chord_top));
        candidates.push_back(seg_nearest(z, chord_top, arc_top));
        candidates.push_back(
            seg_nearest(z, std::conj(chord_top), std::conj(arc_top)));
        const double a = std::clamp(std::atan2(z.imag(), z.real()), -phi, phi);
        candidates.push_back(rmax * Complex(std::cos(a), std::sin(a)));
        PointDistance best{std::numeric_limits<double>::infinity(), z};
        for (const Complex& cand : candidates) {
            const double d = std::abs(z - cand);
            if (d < best.value) best = {d, cand};
        }
        return best;
    }
    if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        return {std::abs(z.real()), Complex(0.0, z.imag())};
    }
    if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        PointDistance best{std::numeric_limits<double>::infinity(), z};
        for (const Complex& p : hull->points) {
            for (const Complex pp : {p, std::conj(p)}) {
                const double d = std::abs(z - pp);
                if (d < best.value) {
                    const Complex dir =
                        d > 0.0 ? (z - pp) / d : Complex(1.0, 0.0);
                    best = {std::max(0.0, d - hull->pad),
                            pp + std::min(d, hull->pad) * dir};
                }
            }
        }
        return best;
    }
    if (const auto* uni = std::get_if<UnionParams>(&n.payload)) {
        PointDistance best{std::numeric_limits<double>::infinity(), z};
        for (const Region& m : uni->members) {
            const PointDistance d = point_to_region(m, z);
            if (d.value < best.value) best = d;
            if (best.value == 0.0) break;
        }
        return best;
    }
    // Lazy wrappers without closed forms: sample the boundary densely.
    const double window = 8.0 * std::max(detail::characteristic_scale(r),
                                         std::abs(z) + 1.0);
    std::vector<detail::BoundaryArc> arcs;
    detail::collect_arcs(r, window, arcs);
    auto runs = detail::sample_boundary(arcs, 4096, window);
    PointDistance best{std::numeric_limits<double>::infinity(), z};
    for (const auto& run : runs) {
        for (std::size_t i = 0; i + 1 < run.size() || run.size() == 1; ++i) {
            const Complex q0 = run[i].point;
            const Complex q1 = run.size() == 1 ? q0 : run[i + 1].point;
            double sdummy = 0.0;
            double t = 0.0;
            const double d2 =
                detail::segment_segment_dist2(z, z, q0, q1, sdummy, t);
            if (d2 < best.value * best.value) {
                const double pa =
                    run[i].param +
                    t * ((run.size() == 1 ? run[i].param : run[i + 1].param) -
                         run[i].param);
                const Complex snapped = arcs[run[i].arc].at(pa);
                best = {std::abs(z - snapped), snapped};
            }
            if (run.size() == 1) break;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Cloud containment
// ---------------------------------------------------------------------------

struct ContainmentReport {
    double fraction_inside = 0.0;
    double worst_violation_distance = 0.0;
    std::vector<int> violating_pair_ids;
};

/// Membership tally of a sampled cloud against a region. Violation distances
/// come from point_to_region on the offending points.
inline ContainmentReport containment_report(const SrgCloud& cloud,
                                            const Region& region) {
    if (cloud.points.empty()) {
        throw EmptyCloudError("containment_report: empty cloud");
    }
    ContainmentReport report;
    int inside = 0;
    std::vector<int> violators;
    for (const auto& p : cloud.points) {
        const Complex z = p.value();
        if (region.contains(z)) {
            ++inside;
        } else {
            violators.push_back(p.pair_id);
            report.worst_violation_distance =
                std::max(report.worst_violation_distance,
                         point_to_region(region, z).value);
        }
    }
    report.fraction_inside =
        static_cast<double>(inside) / static_cast<double>(cloud.points.size());
    std::sort(violators.begin(), violators.end());
    violators.erase(std::unique(violators.begin(), violators.end()),
                    violators.end());
    report.violating_pair_ids = std::move(violators);
    return report;
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

inline OrderedJson region_to_json(const Region& region) {
    const RegionNode& n = region.node();
    OrderedJson j;
    if (const auto* d = std::get_if<DiskParams>(&n.payload)) {
        j["variant"] = "disk";
        j["center"] = d->center;
        j["radius"] = d->radius;
    } else if (const auto* e = std::get_if<DiskExteriorParams>(&n.payload)) {
        j["variant"] = "disk_exterior";
        j["center"] = e->center;
        j["radius"] = e->radius;
    } else if (const auto* h = std::get_if<HalfPlaneParams>(&n.payload)) {
        j["variant"] = "half_plane";
        j["bound"] = h->bound;
        j["side"] = h->greater ? "geq" : "leq";
    } else if (const auto* s = std::get_if<SectorDiskParams>(&n.payload)) {
        j["variant"] = "sector_disk";
        j["delta"] = s->delta;
        j["epsilon"] = s->epsilon;
    } else if (std::holds_alternative<ImaginaryAxisParams>(n.payload)) {
        j["variant"] = "imaginary_axis";
    } else if (const auto* sc = std::get_if<ScaledParams>(&n.payload)) {
        j["variant"] = "scaled";
        j["tau"] = sc->tau;
        j["inner"] = region_to_json(sc->inner.front());
    } else if (const auto* inv = std::get_if<InvertedParams>(&n.payload)) {
        j["variant"] = "inverted";
        j["inner"] = region_to_json(inv->inner.front());
    } else if (const auto* hull = std::get_if<HullParams>(&n.payload)) {
        j["variant"] = "hull_of_cloud";
        j["pad"] = hull->pad;
        OrderedJson pts = OrderedJson::array();
        for (const Complex& p : hull->points) {
            OrderedJson q;
            q["re"] = p.real();
            q["im"] = p.imag();
            pts.push_back(std::move(q));
        }
        j["points"] = std::move(pts);
    } else {
        const auto& uni = std::get<UnionParams>(n.payload);
        j["variant"] = "union";
        OrderedJson members = OrderedJson::array();
        for (const Region& m : uni.members) members.push_back(region_to_json(m));
        j["members"] = std::move(members);
    }
    if (region.punctured_at_zero()) j["punctured_at_zero"] = true;
    return j;
}

inline Region region_from_json(const Json& j, const std::string& where = "region") {
    jsonu::require_object(j, where);
    const std::string variant = jsonu::get_string(j, where, "variant");
    Region out;
    if (variant == "disk" || variant == "disk_exterior") {
        jsonu::check_keys(j, where, {"variant", "center", "radius", "punctured_at_zero"});
        const double c = jsonu::get_number(j, where, "center");
        const double r = jsonu::get_number(j, where, "radius");
        out = variant == "disk" ? Region::disk(c, r) : Region::disk_exterior(c, r);
    } else if (variant == "half_plane") {
        jsonu::check_keys(j, where, {"variant", "bound", "side", "punctured_at_zero"});
        const double b = jsonu::get_number(j, where, "bound");
        const std::string side = jsonu::get_string(j, where, "side");
        if (side == "geq") {
            out = Region::half_plane_geq(b);
        } else if (side == "leq") {
            out = Region::half_plane_leq(b);
        } else {
            throw ConfigError(where + "/side", "expected `geq` or `leq`");
        }
    } else if (variant == "sector_disk") {
        jsonu::check_keys(j, where, {"variant", "delta", "epsilon", "punctured_at_zero"});
        out = Region::sector_disk(jsonu::get_number(j, where, "delta"),
                                  jsonu::get_number(j, where, "epsilon"));
    } else if (variant == "imaginary_axis") {
        jsonu::check_keys(j, where, {"variant", "punctured_at_zero"});
        out = Region::imaginary_axis(jsonu::get_bool_or(j, where, "punctured_at_zero", true));
        return out;
    } else if (variant == "scaled") {
        jsonu::check_keys(j, where, {"variant", "tau", "inner", "punctured_at_zero"});
        out = scale_region(
            region_from_json(jsonu::require(j, where, "inner"), where + "/inner"),
            jsonu::get_number(j, where, "tau"));
    } else if (variant == "inverted") {
        jsonu::check_keys(j, where, {"variant", "inner", "punctured_at_zero"});
        out = invert_region(
            region_from_json(jsonu::require(j, where, "inner"), where + "/inner"));
    } else if (variant == "hull_of_cloud") {
        jsonu::check_keys(j, where, {"variant", "pad", "points", "punctured_at_zero"});
        const Json& pts = jsonu::require(j, where, "points");
        if (!pts.is_array() || pts.empty()) {
            throw ConfigError(where + "/points", "expected nonempty array");
        }
        std::vector<Complex> points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string pw = where + "/points/" + std::to_string(i);
            jsonu::check_keys(pts[i], pw, {"re", "im"});
            points.emplace_back(jsonu::get_number(pts[i], pw, "re"),
                                std::abs(jsonu::get_number(pts[i], pw, "im")));
        }
        out = Region::hull_of_points(std::move(points),
                                     jsonu::get_number_or(j, where, "pad", 0.0));
    } else if (variant == "union") {
        jsonu::check_keys(j, where, {"variant", "members", "punctured_at_zero"});
        const Json& members = jsonu::require(j, where, "members");
        if (!members.is_array() || members.empty()) {
            throw ConfigError(where + "/members", "expected nonempty array");
        }
        std::vector<Region> regions;
        for (std::size_t i = 0; i < members.size(); ++i) {
            regions.push_back(region_from_json(
                members[i], where + "/members/" + std::to_string(i)));
        }
        out = Region::union_of(std::move(regions));
    } else {
        throw ConfigError(where + "/variant", "unknown variant `" + variant + "`");
    }
    if (jsonu::get_bool_or(j, where, "punctured_at_zero", false)) {
        out = out.with_puncture(true);
    }
    return out;
}

}  // namespace srglab
