#include <catch2/catch_amalgamated.hpp>

#include "srglab/json_util.hpp"
#include "srglab/operators.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using srglab::Json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("srglab_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(SRGLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string integrator_json() {
    return R"({"variant":"integrator","params":{"dimension":1}})";
}

std::string negate_tanh_json() {
    return R"({"variant":"negate","params":{"inner":
              {"variant":"static_nonlinearity","params":{"kind":"tanh_gain","gain":1.0,"dimension":1}}}})";
}

std::string corollary_plant_json() {
    return R"({"variant":"parallel_sum","params":{"terms":[
      {"variant":"scale","params":{"factor":0.25,"inner":
        {"variant":"static_nonlinearity","params":{"kind":"sector","slope_min":1.0,"slope_max":1.0,"shape":0,"dimension":1}}}},
      {"variant":"lti_state_space","params":{
        "a":{"rows":1,"cols":1,"data":[-1.0]},
        "b":{"rows":1,"cols":1,"data":[1.0]},
        "c":{"rows":1,"cols":1,"data":[1.0]},
        "d":{"rows":1,"cols":1,"data":[0.0]}}}]}})";
}

}  // namespace

TEST_CASE("srg-soft on the integrator emits a cloud hugging the imaginary axis") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "cfg.json", R"({
      "operator": "integrator.json",
      "excitation": {
        "ensemble_size": 40, "horizon": 8.0, "dt": 0.01, "seed": 7,
        "derivative_of_window": true, "active_fraction": 0.4
      },
      "output_prefix": "integ"
    })");
    const int code =
        run_cli("srg-soft --config " + (dir.path / "cfg.json").string() +
                " --out " + (dir.path / "out").string());
    CHECK(code == 0);
    REQUIRE(fs::exists(dir.path / "out" / "integ.cloud.json"));
    REQUIRE(fs::exists(dir.path / "out" / "integ.cloud.csv"));
    REQUIRE(fs::exists(dir.path / "out" / "integ.cloud.svg"));

    const Json cloud =
        Json::parse(read_file(dir.path / "out" / "integ.cloud.json"));
    CHECK(cloud["kind"] == "soft");
    for (const auto& p : cloud["points"]) {
        const double re = p["re"].get<double>();
        const double im = p["im"].get<double>();
        CHECK(std::abs(re) <= 0.02 * std::hypot(re, im));
    }
}

TEST_CASE("malformed operator JSON exits 1 and leaves no artifacts") {
    TempDir dir;
    write_file(dir.path / "broken.json", "{\"variant\": \"integrator\"");
    write_file(dir.path / "cfg.json", R"({
      "operator": "broken.json",
      "excitation": {"ensemble_size": 4, "horizon": 2.0, "dt": 0.01},
      "output_prefix": "x"
    })");
    const fs::path out = dir.path / "out";
    const int code = run_cli("srg-soft --config " +
                             (dir.path / "cfg.json").string() + " --out " +
                             out.string());
    CHECK(code == 1);
    CHECK((!fs::exists(out) || fs::is_empty(out)));
}

TEST_CASE("unknown config keys are rejected") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "cfg.json", R"({
      "operator": "integrator.json",
      "excitation": {"ensemble_size": 4, "horizon": 2.0, "dt": 0.01},
      "output_prefix": "x",
      "tolerence": 1e-3
    })");
    CHECK(run_cli("srg-soft --config " + (dir.path / "cfg.json").string() +
                  " --out " + (dir.path / "out").string()) == 1);
}

TEST_CASE("cert-hard exit codes follow the verdict") {
    TempDir dir;
    write_file(dir.path / "ok.json", R"({
      "p_evidence": {"region": {"variant":"sector_disk","delta":0.25,"epsilon":0.25}},
      "c_inverse_evidence": {"region": {"variant":"half_plane","bound":0.0,"side":"leq"}},
      "assumptions": {"well_posedness":"asserted_by_user","p_stable":"satisfied"},
      "output_prefix": "ok"
    })");
    CHECK(run_cli("cert-hard --config " + (dir.path / "ok.json").string() +
                  " --out " + (dir.path / "out").string()) == 0);
    const Json cert =
        Json::parse(read_file(dir.path / "out" / "ok.certificate.json"));
    CHECK(cert["verdict"] == "certified");
    CHECK(cert["margin"].get<double>() == Catch::Approx(0.25).margin(1e-9));

    write_file(dir.path / "overlap.json", R"({
      "p_evidence": {"region": {"variant":"disk","center":0.0,"radius":2.0}},
      "c_inverse_evidence": {"region": {"variant":"disk","center":0.0,"radius":1.0}},
      "assumptions": {"well_posedness":"asserted_by_user","p_stable":"satisfied"},
      "output_prefix": "overlap"
    })");
    CHECK(run_cli("cert-hard --config " + (dir.path / "overlap.json").string() +
                  " --out " + (dir.path / "out").string()) == 2);
}

TEST_CASE("cert-passivity end-to-end on the corollary fixture") {
    TempDir dir;
    write_file(dir.path / "plant.json", corollary_plant_json());
    write_file(dir.path / "controller.json", negate_tanh_json());
    write_file(dir.path / "cfg.json", R"({
      "operator_p": "plant.json",
      "operator_c": "controller.json",
      "delta": 0.2, "epsilon": 0.02,
      "excitation": {"ensemble_size": 24, "horizon": 12.0, "dt": 0.01,
                      "seed": 11, "windowed": false},
      "assumptions": {"well_posedness": "asserted_by_user"},
      "output_prefix": "cor"
    })");
    const int code =
        run_cli("cert-passivity --config " + (dir.path / "cfg.json").string() +
                " --out " + (dir.path / "out").string());
    CHECK(code == 0);
    const Json cert =
        Json::parse(read_file(dir.path / "out" / "cor.certificate.json"));
    CHECK(cert["verdict"] == "certified");
    CHECK(cert["margin"].get<double>() >= 0.2 - 1e-6);
    CHECK(fs::exists(dir.path / "out" / "cor.p_cloud.json"));
    CHECK(fs::exists(dir.path / "out" / "cor.certificate.svg"));
}

TEST_CASE("region distances and plots through the CLI") {
    TempDir dir;
    write_file(dir.path / "cfg.json", R"({
      "regions": [
        {"variant":"sector_disk","delta":0.25,"epsilon":0.25},
        {"variant":"half_plane","bound":0.0,"side":"leq"}
      ],
      "distance": {"a": 0, "b": 1},
      "output_prefix": "geo"
    })");
    CHECK(run_cli("region --config " + (dir.path / "cfg.json").string() +
                  " --out " + (dir.path / "out").string()) == 0);
    const Json d = Json::parse(read_file(dir.path / "out" / "geo.distance.json"));
    CHECK(d["value"].get<double>() == Catch::Approx(0.25).margin(1e-9));
    CHECK(fs::exists(dir.path / "out" / "geo.regions.svg"));
}

TEST_CASE("simulate writes a loop trace from a step input") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "controller.json",
               R"({"variant":"scale","params":{"factor":-1.0,"inner":
                  {"variant":"static_nonlinearity","params":{"kind":"sector","slope_min":1.0,"slope_max":1.0,"shape":0,"dimension":1}}}})");
    write_file(dir.path / "cfg.json", R"({
      "operator_p": "integrator.json",
      "operator_c": "controller.json",
      "d1": {"step": {"amplitude": 1.0, "horizon": 2.0, "dt": 0.001}},
      "output_prefix": "loop"
    })");
    CHECK(run_cli("simulate --config " + (dir.path / "cfg.json").string() +
                  " --out " + (dir.path / "out").string()) == 0);
    const std::string csv = read_file(dir.path / "out" / "loop.trace.csv");
    CHECK(csv.rfind("t,d1_0,u1_0,u2_0,y1_0,y2_0\n", 0) == 0);

    SECTION("d1 can come from a signal CSV file") {
        std::string input = "t,ch0\n";
        for (int k = 0; k < 50; ++k) {
            input += std::to_string(0.01 * k) + ",1.0\n";
        }
        write_file(dir.path / "d1.csv", input);
        write_file(dir.path / "cfg_csv.json", R"({
          "operator_p": "integrator.json",
          "operator_c": "controller.json",
          "d1": "d1.csv",
          "output_prefix": "from_csv"
        })");
        CHECK(run_cli("simulate --config " + (dir.path / "cfg_csv.json").string() +
                      " --out " + (dir.path / "out").string()) == 0);
        CHECK(fs::exists(dir.path / "out" / "from_csv.trace.csv"));
    }
}

TEST_CASE("gain-estimate emits per-amplitude suprema") {
    TempDir dir;
    write_file(dir.path / "plant.json", corollary_plant_json());
    write_file(dir.path / "controller.json", negate_tanh_json());
    write_file(dir.path / "cfg.json", R"({
      "operator_p": "plant.json",
      "operator_c": "controller.json",
      "excitation": {"ensemble_size": 4, "horizon": 6.0, "dt": 0.01, "seed": 3},
      "amplitude_scales": [0.1, 1.0],
      "output_prefix": "gain"
    })");
    CHECK(run_cli("gain-estimate --config " + (dir.path / "cfg.json").string() +
                  " --out " + (dir.path / "out").string()) == 0);
    const Json gain = Json::parse(read_file(dir.path / "out" / "gain.gain.json"));
    CHECK(gain["any_divergent"] == false);
    CHECK(gain["per_amplitude_sup"].size() == 2);
}

TEST_CASE("plot overlays clouds, regions and certificate witnesses") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "srg.json", R"({
      "operator": "integrator.json",
      "excitation": {"ensemble_size": 10, "horizon": 6.0, "dt": 0.01,
                      "seed": 5, "windowed": false},
      "output_prefix": "integ"
    })");
    REQUIRE(run_cli("srg-hard --config " + (dir.path / "srg.json").string() +
                    " --out " + dir.path.string()) == 0);
    write_file(dir.path / "plot.json", R"({
      "clouds": ["integ.cloud.json"],
      "regions": [{"variant":"half_plane","bound":0.0,"side":"geq"}],
      "output_prefix": "overlay"
    })");
    CHECK(run_cli("plot --config " + (dir.path / "plot.json").string() +
                  " --out " + (dir.path / "out").string()) == 0);
    const std::string svg = read_file(dir.path / "out" / "overlay.plot.svg");
    CHECK(svg.find("<svg") == 0);
}

TEST_CASE("falsification workflow: sample, invert, certify, exit 2") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "identity.json",
               R"({"variant":"static_nonlinearity","params":{"kind":"sector","slope_min":1.0,"slope_max":1.0,"shape":0,"dimension":1}})");
    write_file(dir.path / "grow.json", R"({
      "operator": "integrator.json",
      "excitation": {"ensemble_size": 10, "horizon": 18.0, "dt": 0.001,
                      "seed": 7,
                      "families": [{"kind": "exp_growth", "growth_rate": 1.0}]},
      "output_prefix": "integrator_growing"
    })");
    write_file(dir.path / "inv.json", R"({
      "operator": "identity.json",
      "excitation": {"ensemble_size": 8, "horizon": 6.0, "dt": 0.01,
                      "seed": 9, "windowed": false},
      "invert": true,
      "output_prefix": "identity_inverse"
    })");
    write_file(dir.path / "cert.json", R"({
      "p_evidence": {"cloud_file": "integrator_growing.cloud.json"},
      "c_inverse_evidence": {"cloud_file": "identity_inverse.cloud.json"},
      "assumptions": {"well_posedness": "asserted_by_user",
                       "p_stable": "violated"},
      "output_prefix": "falsify"
    })");
    const std::string out = dir.path.string();
    REQUIRE(run_cli("srg-hard --config " + (dir.path / "grow.json").string() +
                    " --out " + out) == 0);
    REQUIRE(run_cli("srg-hard --config " + (dir.path / "inv.json").string() +
                    " --out " + out) == 0);
    // inverse cloud of the identity sits at 1 + 0j
    const Json inv =
        Json::parse(read_file(dir.path / "identity_inverse.cloud.json"));
    for (const auto& p : inv["points"]) {
        CHECK(p["re"].get<double>() == Catch::Approx(1.0).epsilon(1e-9));
    }
    // cloud_file references resolve against the cwd fallback; run from dir
    const std::string cmd = "cd " + dir.path.string() + " && " +
                            std::string(SRGLAB_CLI_PATH) +
                            " cert-hard --config cert.json --out . "
                            "> /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CHECK(WEXITSTATUS(rc) == 2);  // not certified
    const Json cert = Json::parse(read_file(dir.path / "falsify.certificate.json"));
    CHECK(cert["verdict"] == "not_certified");
    CHECK(cert["margin"].get<double>() < 1e-6);
}

TEST_CASE("artifacts are byte-identical across reruns") {
    TempDir dir;
    write_file(dir.path / "integrator.json", integrator_json());
    write_file(dir.path / "cfg.json", R"({
      "operator": "integrator.json",
      "excitation": {"ensemble_size": 16, "horizon": 6.0, "dt": 0.01, "seed": 21,
                      "derivative_of_window": true},
      "output_prefix": "det"
    })");
    REQUIRE(run_cli("srg-soft --config " + (dir.path / "cfg.json").string() +
                    " --out " + (dir.path / "a").string()) == 0);
    REQUIRE(run_cli("srg-soft --config " + (dir.path / "cfg.json").string() +
                    " --out " + (dir.path / "b").string()) == 0);
    for (const char* name :
         {"det.cloud.json", "det.cloud.csv", "det.cloud.svg"}) {
        CHECK(read_file(dir.path / "a" / name) ==
              read_file(dir.path / "b" / name));
    }
}
