#include <catch2/catch_amalgamated.hpp>

#include "srglab/regions.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <random>

using namespace srglab;
using srglab::testing::tanh_op;

namespace {

bool near_member(const Region& r, Complex z, double tol = 1e-9) {
    return r.contains(z) || point_to_region(r, z).value <= tol;
}

}  // namespace

TEST_CASE("sector disk D follows the defining inequalities") {
    const Region d = make_sector_disk_D(0.25, 0.25);
    const auto& params = std::get<SectorDiskParams>(d.node().payload);
    CHECK(params.angle_bound() == Catch::Approx(M_PI / 3).margin(1e-12));
    CHECK(d.bounding_radius().value() == Catch::Approx(4.0));
    CHECK(d.min_modulus() == Catch::Approx(0.25));

    CHECK(d.contains({1.0, 0.0}));
    CHECK_FALSE(d.contains({5.0, 0.0}));  // radius bound
    CHECK(d.contains({0.25, 0.0}));       // Re boundary
    CHECK_FALSE(d.contains({0.2, 0.0}));
    CHECK(d.contains({1.0, 1.5}));
    CHECK(d.contains({1.0, -1.5}));  // conjugate symmetry
    CHECK_FALSE(d.contains({0.3, 2.0}));  // angle bound

    SECTION("degenerate angle bound gives the real segment [1/2, 2]") {
        const Region flat = make_sector_disk_D(0.5, 0.5);
        const auto& p = std::get<SectorDiskParams>(flat.node().payload);
        CHECK(p.angle_bound() == Catch::Approx(0.0).margin(1e-7));
        CHECK(flat.contains({0.5, 0.0}));
        CHECK(flat.contains({2.0, 0.0}));
        CHECK(flat.contains({1.0, 0.0}));
        CHECK_FALSE(flat.contains({1.0, 0.1}));
    }
    SECTION("invalid indices are domain errors naming the constraint") {
        CHECK_THROWS_AS(make_sector_disk_D(0.0, 0.25), std::domain_error);
        CHECK_THROWS_AS(make_sector_disk_D(0.25, -1.0), std::domain_error);
        CHECK_THROWS_AS(make_sector_disk_D(0.6, 0.6), std::domain_error);
        try {
            make_sector_disk_D(0.6, 0.6);
        } catch (const std::domain_error& err) {
            CHECK(std::string(err.what()).find("2*sqrt") != std::string::npos);
        }
    }
}

TEST_CASE("half plane and axis membership") {
    const Region rhp = Region::half_plane_geq(0.0);
    CHECK(rhp.contains({0.0, 1.0}));
    CHECK(rhp.contains({0.0, -1.0}));
    CHECK(rhp.contains({0.0, 0.0}));
    CHECK_FALSE(rhp.contains({-0.1, 0.0}));

    const Region axis = Region::imaginary_axis(true);
    CHECK(axis.contains({0.0, 2.0}));
    CHECK_FALSE(axis.contains({0.0, 0.0}));  // punctured
    CHECK(Region::imaginary_axis(false).contains({0.0, 0.0}));
    CHECK_FALSE(axis.contains({0.01, 2.0}));
}

TEST_CASE("inversion simplifications are Moebius-exact") {
    SECTION("inverted disk away from zero contains 1/z for disk members") {
        const Region disk = Region::disk(1.0, 0.5);
        const Region inv = invert_region(disk);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const Complex z(1.0 + 0.5 * uni(rng), 0.5 * uni(rng));
            if (disk.contains(z)) CHECK(inv.contains(1.0 / z));
        }
        // analytic image: disk(c,r) -> disk(c/(c^2-r^2), r/(c^2-r^2))
        const auto* img = std::get_if<DiskParams>(&inv.node().payload);
        REQUIRE(img != nullptr);
        CHECK(img->center == Catch::Approx(1.0 / 0.75));
        CHECK(img->radius == Catch::Approx(0.5 / 0.75));
    }
    SECTION("inverted half plane Re >= 1 is the punctured disk(1/2, 1/2)") {
        const Region inv = invert_region(Region::half_plane_geq(1.0));
        const auto* img = std::get_if<DiskParams>(&inv.node().payload);
        REQUIRE(img != nullptr);
        CHECK(img->center == Catch::Approx(0.5));
        CHECK(img->radius == Catch::Approx(0.5));
        CHECK(inv.punctured_at_zero());
        CHECK_FALSE(inv.contains({0.0, 0.0}));
        for (double t = -10.0; t <= 10.0; t += 0.25) {
            CHECK(inv.contains(1.0 / Complex(1.0, t)));
        }
    }
    SECTION("inverting a region containing zero yields an extended region") {
        const Region inv = invert_region(Region::disk(0.0, 1.0));
        CHECK(inv.contains_infinity());
        CHECK(std::holds_alternative<DiskExteriorParams>(inv.node().payload));
        CHECK(inv.contains({2.0, 0.0}));
        CHECK_FALSE(inv.contains({0.5, 0.0}));
    }
    SECTION("double inversion restores membership") {
        const std::vector<Region> regions = {
            Region::disk(1.0, 0.5), Region::half_plane_geq(1.0),
            make_sector_disk_D(0.25, 0.25), Region::disk(0.0, 2.0)};
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> uni(-3.0, 3.0);
        for (const Region& r : regions) {
            const Region back = invert_region(invert_region(r));
            for (int i = 0; i < 1000; ++i) {
                const Complex z(uni(rng), uni(rng));
                if (z == Complex(0.0, 0.0)) continue;
                CHECK(back.contains(z) == r.contains(z));
            }
        }
    }
}

TEST_CASE("scaling simplifications") {
    const Region scaled = scale_region(Region::disk(1.0, 1.0), 2.0);
    const auto* img = std::get_if<DiskParams>(&scaled.node().payload);
    REQUIRE(img != nullptr);
    CHECK(img->center == 2.0);
    CHECK(img->radius == 2.0);

    const Region d_scaled = scale_region(make_sector_disk_D(0.25, 0.25), 2.0);
    const auto* dimg = std::get_if<SectorDiskParams>(&d_scaled.node().payload);
    REQUIRE(dimg != nullptr);
    CHECK(dimg->delta == Catch::Approx(0.5));
    CHECK(dimg->epsilon == Catch::Approx(0.125));

    CHECK_THROWS_AS(scale_region(Region::disk(0, 1), 0.0), std::domain_error);
}

TEST_CASE("analytic distances with witnesses") {
    SECTION("disk vs half plane") {
        const DistanceResult d =
            region_distance(Region::disk(0.0, 1.0), Region::half_plane_geq(3.0));
        CHECK(d.value == Catch::Approx(2.0).margin(1e-12));
        CHECK(d.witness_a == Complex(1.0, 0.0));
        CHECK(d.witness_b == Complex(3.0, 0.0));
    }
    SECTION("sector disk vs left half plane is delta") {
        const DistanceResult d = region_distance(make_sector_disk_D(0.25, 0.25),
                                                 Region::half_plane_leq(0.0));
        CHECK(d.value == Catch::Approx(0.25).margin(1e-9));
        CHECK(d.method == DistanceResult::Method::analytic);
        const DistanceResult sampled =
            region_distance(make_sector_disk_D(0.25, 0.25),
                            Region::half_plane_leq(0.0), 4,
                            DistancePath::sampled_only);
        CHECK(sampled.value == Catch::Approx(0.25).margin(1e-4));
        CHECK(std::abs(sampled.value - d.value) < 1e-4);
    }
    SECTION("overlapping disks have an interior witness") {
        const DistanceResult d =
            region_distance(Region::disk(0.0, 1.0), Region::disk(1.0, 1.0));
        CHECK(d.value == 0.0);
        CHECK(Region::disk(0.0, 1.0).contains(d.witness_a));
        CHECK(Region::disk(1.0, 1.0).contains(d.witness_b));
    }
    SECTION("disk inside a disk exterior") {
        const DistanceResult d = region_distance(Region::disk(0.0, 0.5),
                                                 Region::disk_exterior(0.0, 1.0));
        CHECK(d.value == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("axis cases") {
        CHECK(region_distance(Region::disk(2.0, 0.5), Region::imaginary_axis())
                  .value == Catch::Approx(1.5).margin(1e-12));
        CHECK(region_distance(Region::half_plane_geq(0.7), Region::imaginary_axis())
                  .value == Catch::Approx(0.7).margin(1e-12));
        CHECK(region_distance(make_sector_disk_D(0.3, 0.3),
                              Region::imaginary_axis())
                  .value == Catch::Approx(0.3).margin(1e-12));
    }
}

TEST_CASE("distance properties across a pair matrix") {
    const std::vector<Region> regions = {
        Region::disk(0.0, 1.0),       Region::disk(4.0, 0.5),
        Region::half_plane_geq(3.0),  Region::half_plane_leq(-2.0),
        make_sector_disk_D(0.25, 0.25), Region::imaginary_axis(),
        Region::disk_exterior(0.0, 6.0)};
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = 0; j < regions.size(); ++j) {
            const DistanceResult dij = region_distance(regions[i], regions[j]);
            const DistanceResult dji = region_distance(regions[j], regions[i]);
            CHECK(dij.value == Catch::Approx(dji.value).margin(1e-9));
            // witnesses are members (or boundary members) of their regions
            CHECK(near_member(regions[i], dij.witness_a));
            CHECK(near_member(regions[j], dij.witness_b));
            // reported value equals the witness separation
            CHECK(std::abs(dij.value -
                           std::abs(dij.witness_a - dij.witness_b)) < 1e-9);
        }
    }
}

TEST_CASE("analytic and boundary-sampled distances agree within 1e-4") {
    struct Pair {
        Region a, b;
    };
    const std::vector<Pair> pairs = {
        {Region::disk(0.0, 1.0), Region::disk(5.0, 2.0)},
        {Region::disk(0.0, 1.0), Region::half_plane_geq(3.0)},
        {make_sector_disk_D(0.25, 0.25), Region::half_plane_leq(-0.5)},
        {Region::disk(3.0, 0.5), Region::imaginary_axis()},
        {make_sector_disk_D(0.5, 0.5), Region::half_plane_leq(0.0)},
    };
    for (const auto& [a, b] : pairs) {
        const double analytic = region_distance(a, b).value;
        const double sampled =
            region_distance(a, b, 4, DistancePath::sampled_only).value;
        CHECK(std::abs(analytic - sampled) < 1e-4);
    }
}

TEST_CASE("monotonicity: growing a disk weakly shrinks distances") {
    const Region target = Region::half_plane_geq(5.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double r = 0.5; r <= 4.0; r += 0.5) {
        const double d = region_distance(Region::disk(0.0, r), target).value;
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
}

TEST_CASE("generic sampled path: sector disk vs disk") {
    // No closed form is registered for this pair; it must go through the
    // boundary sampler and converge.
    const Region d = make_sector_disk_D(0.25, 0.25);
    const Region ball = Region::disk(-2.0, 0.5);
    const DistanceResult res = region_distance(d, ball);
    CHECK(res.method == DistanceResult::Method::sampled_boundary);
    // nearest pair: chord corner region of D at Re = 0.25 vs disk edge
    const double expected =
        std::abs(Complex(0.25, 0.0) - Complex(-1.5, 0.0));
    CHECK(res.value == Catch::Approx(expected).margin(1e-4));
    CHECK(near_member(d, res.witness_a, 1e-8));
    CHECK(near_member(ball, res.witness_b, 1e-8));

    CHECK_THROWS_AS(region_distance(d, ball, 4, DistancePath::analytic_only),
                    IndeterminateDistanceError);
    CHECK_THROWS_AS(region_distance(d, ball, 0, DistancePath::sampled_only),
                    IndeterminateDistanceError);
}

TEST_CASE("union and hull regions") {
    const Region uni = Region::union_of(
        {Region::disk(0.0, 1.0), Region::disk(10.0, 1.0)});
    CHECK(uni.contains({10.5, 0.0}));
    CHECK(uni.contains({0.5, 0.0}));
    CHECK_FALSE(uni.contains({5.0, 0.0}));
    const DistanceResult d = region_distance(uni, Region::half_plane_geq(12.0));
    CHECK(d.value == Catch::Approx(1.0).margin(1e-12));

    const Region hull = Region::hull_of_points({{1.0, 1.0}, {2.0, 0.0}}, 0.25);
    CHECK(hull.contains({1.1, 1.1}));
    CHECK(hull.contains({1.1, -1.1}));  // conjugate branch
    CHECK_FALSE(hull.contains({1.5, 0.5}));
    const DistanceResult hd = region_distance(hull, Region::half_plane_geq(3.0));
    CHECK(hd.value == Catch::Approx(0.75).margin(1e-12));
    CHECK(near_member(hull, hd.witness_a));

    // pad-0 hull of one point against a disk through that point
    const Region point_hull = Region::hull_of_points({{1.0, 0.0}}, 0.0);
    CHECK(region_distance(point_hull, Region::disk(1.0, 0.5)).value == 0.0);
}

TEST_CASE("prop-1 style region algebra: D equals the triple intersection") {
    const double delta = 0.25;
    const double eps = 0.25;
    const Region d = make_sector_disk_D(delta, eps);
    const Region re_cut = Region::half_plane_geq(delta);
    const Region ball = Region::disk(0.0, 1.0 / eps);
    const double angle_bound = std::acos(2.0 * std::sqrt(delta * eps));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const Complex z(uni(rng), uni(rng));
        const bool in_sector =
            std::atan2(std::abs(z.imag()), z.real()) <= angle_bound &&
            std::abs(z) > 0.0;
        const bool in_all = re_cut.contains(z) && ball.contains(z) && in_sector;
        CHECK(d.contains(z) == in_all);
    }
}

TEST_CASE("containment reports") {
    ExcitationConfig cfg;
    cfg.ensemble_size = 60;
    cfg.horizon = 12.0;
    cfg.dt = 0.01;
    cfg.seed = 3;

    SECTION("tanh cloud sits in the closed right half-plane") {
        const SrgCloud cloud = sample_soft_srg(tanh_op(), cfg);
        const ContainmentReport report =
            containment_report(cloud, Region::half_plane_geq(0.0));
        CHECK(report.fraction_inside == 1.0);
        CHECK(report.violating_pair_ids.empty());
    }
    SECTION("integrator hard cloud is in the closed RHP but off the axis") {
        ExcitationConfig hard = cfg;
        hard.windowed = false;
        const SrgCloud cloud =
            sample_hard_srg(OperatorSpec::integrator(1), hard);
        CHECK(containment_report(cloud, Region::half_plane_geq(0.0))
                  .fraction_inside == 1.0);
        const ContainmentReport axis_report =
            containment_report(cloud, Region::imaginary_axis());
        CHECK(axis_report.fraction_inside < 1.0);
        CHECK(axis_report.worst_violation_distance > 0.0);
        CHECK_FALSE(axis_report.violating_pair_ids.empty());
    }
}

TEST_CASE("region JSON round-trips") {
    const std::vector<Region> regions = {
        Region::disk(1.5, 0.5),
        Region::disk_exterior(0.0, 2.0),
        Region::half_plane_leq(-1.0),
        make_sector_disk_D(0.2, 0.3),
        Region::imaginary_axis(),
        Region::union_of({Region::disk(0, 1), Region::half_plane_geq(4.0)}),
        Region::hull_of_points({{1.0, 2.0}}, 0.1),
    };
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (const Region& r : regions) {
        const OrderedJson j = region_to_json(r);
        const Region back = region_from_json(Json::parse(j.dump()));
        for (int i = 0; i < 300; ++i) {
            const Complex z(uni(rng), uni(rng));
            CHECK(back.contains(z) == r.contains(z));
        }
    }
    Json bad = {{"variant", "moon"}};
    CHECK_THROWS_AS(region_from_json(bad), ConfigError);
    Json extra = Json::parse(region_to_json(Region::disk(0, 1)).dump());
    extra["color"] = "red";
    CHECK_THROWS_AS(region_from_json(extra), ConfigError);
}
