// Command-line front end: sample SRG clouds, build and measure regions,
// certify feedback loops, run closed-loop simulations and loop-gain
// estimates, and plot everything as deterministic SVG.
//
// All artifacts are staged in memory and written atomically (temp + rename)
// after the command succeeds, so failed runs leave no partial files.
// Certificate commands exit 0 iff the verdict is `certified`, 2 for
// `not_certified`, 3 for `indeterminate`; schema violations exit 1.

#include "srglab/certifier.hpp"
#include "srglab/feedback.hpp"
#include "srglab/json_util.hpp"
#include "srglab/operators.hpp"
#include "srglab/regions.hpp"
#include "srglab/signal.hpp"
#include "srglab/srg.hpp"
#include "srglab/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using namespace srglab;

namespace {

struct ArtifactSet {
    std::vector<std::pair<std::string, std::string>> files;
    void add(std::string name, std::string content) {
        files.emplace_back(std::move(name), std::move(content));
    }
};

void write_artifacts(const fs::path& outdir, const ArtifactSet& artifacts) {
    fs::create_directories(outdir);
    for (const auto& [name, content] : artifacts.files) {
        const fs::path target = outdir / name;
        const fs::path tmp = outdir / (name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp.string());
            out << content;
        }
        fs::rename(tmp, target);
    }
}

std::string dump(const OrderedJson& j) { return j.dump(2) + "\n"; }

Json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& err) {
        throw ConfigError(path.string(), err.what());
    }
}

/// Referenced files resolve against the config file's directory first and
/// fall back to the working directory (where earlier commands wrote their
/// artifacts).
fs::path resolve_input(const fs::path& base, const std::string& rel) {
    const fs::path relative_to_config = base / rel;
    if (fs::exists(relative_to_config)) return relative_to_config;
    return fs::path(rel);
}

OperatorSpec load_operator(const Json& j, const fs::path& base,
                           const std::string& where) {
    if (j.is_string()) {
        const fs::path path = resolve_input(base, j.get<std::string>());
        return operator_from_json(load_json_file(path), path.string());
    }
    return operator_from_json(j, where);
}

Region load_region(const Json& j, const fs::path& base, const std::string& where) {
    if (j.is_string()) {
        const fs::path path = resolve_input(base, j.get<std::string>());
        return region_from_json(load_json_file(path), path.string());
    }
    return region_from_json(j, where);
}

SrgCloud load_cloud_file(const fs::path& base, const std::string& rel) {
    const fs::path path = resolve_input(base, rel);
    return cloud_from_json(load_json_file(path), path.string());
}

Evidence load_evidence(const Json& j, const fs::path& base,
                       const std::string& where) {
    jsonu::check_keys(j, where, {"region", "region_file", "cloud_file"});
    const int given = static_cast<int>(j.contains("region")) +
                      static_cast<int>(j.contains("region_file")) +
                      static_cast<int>(j.contains("cloud_file"));
    if (given != 1) {
        throw ConfigError(where,
                          "give exactly one of region, region_file, cloud_file");
    }
    if (j.contains("region")) {
        return Evidence(region_from_json(j["region"], where + "/region"));
    }
    if (j.contains("region_file")) {
        return Evidence(load_region(j["region_file"], base, where + "/region_file"));
    }
    return Evidence(
        load_cloud_file(base, jsonu::get_string(j, where, "cloud_file")));
}

AssumptionStatus assumption_status_from_string(const std::string& s,
                                               const std::string& where) {
    if (s == "satisfied") return AssumptionStatus::satisfied;
    if (s == "asserted_by_user") return AssumptionStatus::asserted_by_user;
    if (s == "violated") return AssumptionStatus::violated;
    if (s == "unchecked") return AssumptionStatus::unchecked;
    throw ConfigError(where, "unknown assumption status `" + s + "`");
}

void apply_assumptions(AssumptionChecklist& checklist, const Json& j,
                       const std::string& where) {
    jsonu::require_object(j, where);
    for (const auto& item : j.items()) {
        if (!item.value().is_string()) {
            throw ConfigError(where + "/" + item.key(), "expected status string");
        }
        try {
            checklist.set(item.key(),
                          assumption_status_from_string(item.value(), where),
                          "set via configuration");
        } catch (const std::invalid_argument& err) {
            throw ConfigError(where + "/" + item.key(), err.what());
        }
    }
}

SolverConfig solver_from_json(const Json& j, const std::string& where) {
    jsonu::check_keys(j, where,
                      {"tolerance", "max_iterations", "divergence_threshold"});
    SolverConfig cfg;
    cfg.tolerance = jsonu::get_number_or(j, where, "tolerance", cfg.tolerance);
    cfg.max_iterations = static_cast<int>(
        jsonu::get_integer_or(j, where, "max_iterations", cfg.max_iterations));
    cfg.divergence_threshold = jsonu::get_number_or(j, where, "divergence_threshold",
                                                    cfg.divergence_threshold);
    return cfg;
}

ExcitationConfig excitation_with_override(const Json& parent,
                                          const std::string& where,
                                          std::optional<long long> seed) {
    ExcitationConfig cfg;
    if (auto it = parent.find("excitation"); it != parent.end()) {
        cfg = excitation_from_json(*it, where + "/excitation");
    }
    if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);
    cfg.validate();
    return cfg;
}

OrderedJson distance_to_json(const DistanceResult& d) {
    OrderedJson j;
    j["value"] = d.value;
    j["method"] = d.method == DistanceResult::Method::analytic
                      ? "analytic"
                      : "sampled_boundary";
    j["refinement_level"] = d.refinement_level;
    j["witness_a"] = {{"re", d.witness_a.real()}, {"im", d.witness_a.imag()}};
    j["witness_b"] = {{"re", d.witness_b.real()}, {"im", d.witness_b.imag()}};
    return j;
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::certified: return 0;
        case Verdict::not_certified: return 2;
        case Verdict::indeterminate: return 3;
    }
    return 1;
}

struct CommandContext {
    Json config;
    fs::path base;  // directory of the config file, for relative paths
    fs::path outdir;
    std::optional<long long> seed_override;
};

int run_srg(const CommandContext& ctx, SrgKind kind, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"operator", "excitation", "invert", "output_prefix",
                       "plot_title"});
    const OperatorSpec spec =
        load_operator(jsonu::require(ctx.config, where, "operator"), ctx.base,
                      where + "/operator");
    const ExcitationConfig cfg =
        excitation_with_override(ctx.config, where, ctx.seed_override);
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix",
                             kind == SrgKind::soft ? "srg_soft" : "srg_hard");
    SrgCloud cloud = kind == SrgKind::soft ? sample_soft_srg(spec, cfg)
                                           : sample_hard_srg(spec, cfg);
    // `invert` swaps input/output roles: the artifact is the inverse SRG.
    const bool invert = jsonu::get_bool_or(ctx.config, where, "invert", false);
    if (invert) cloud = invert_cloud(cloud);
    artifacts.add(prefix + ".cloud.json", dump(cloud_to_json(cloud)));
    artifacts.add(prefix + ".cloud.csv", cloud_to_csv(cloud));
    svg::SrgPlot plot;
    plot.add_cloud(cloud, std::string(invert ? "inverse " : "") +
                              srg_kind_name(kind) + " SRG cloud");
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title",
                                     kind == SrgKind::soft ? "soft SRG" : "hard SRG");
    artifacts.add(prefix + ".cloud.svg", plot.render(opt));
    return 0;
}

int run_region(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"regions", "distance", "output_prefix", "plot_title"});
    const Json& regions_json = jsonu::require(ctx.config, where, "regions");
    if (!regions_json.is_array() || regions_json.empty()) {
        throw ConfigError(where + "/regions", "expected nonempty array");
    }
    std::vector<Region> regions;
    for (std::size_t i = 0; i < regions_json.size(); ++i) {
        regions.push_back(load_region(regions_json[i], ctx.base,
                                      where + "/regions/" + std::to_string(i)));
    }
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "region");

    OrderedJson echo = OrderedJson::array();
    for (const auto& r : regions) {
        OrderedJson entry;
        entry["region"] = region_to_json(r);
        entry["simplified"] = region_to_json(detail::simplify(r));
        if (auto b = r.bounding_radius()) entry["bounding_radius"] = *b;
        entry["min_modulus"] = r.min_modulus();
        entry["contains_infinity"] = r.contains_infinity();
        echo.push_back(std::move(entry));
    }
    OrderedJson out;
    out["regions"] = std::move(echo);
    artifacts.add(prefix + ".regions.json", dump(out));

    svg::SrgPlot plot;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        plot.add_region(regions[i], "region " + std::to_string(i));
    }
    if (auto it = ctx.config.find("distance"); it != ctx.config.end()) {
        const std::string dw = where + "/distance";
        jsonu::check_keys(*it, dw, {"a", "b", "refinement", "path"});
        const auto a = static_cast<std::size_t>(jsonu::get_integer_or(*it, dw, "a", 0));
        const auto b = static_cast<std::size_t>(jsonu::get_integer_or(*it, dw, "b", 1));
        if (a >= regions.size() || b >= regions.size()) {
            throw ConfigError(dw, "region index out of range");
        }
        const int refinement =
            static_cast<int>(jsonu::get_integer_or(*it, dw, "refinement", 4));
        const std::string path_str =
            jsonu::get_string_or(*it, dw, "path", "automatic");
        DistancePath path = DistancePath::automatic;
        if (path_str == "analytic_only") {
            path = DistancePath::analytic_only;
        } else if (path_str == "sampled_only") {
            path = DistancePath::sampled_only;
        } else if (path_str != "automatic") {
            throw ConfigError(dw + "/path", "unknown path `" + path_str + "`");
        }
        const DistanceResult d =
            region_distance(regions[a], regions[b], refinement, path);
        artifacts.add(prefix + ".distance.json", dump(distance_to_json(d)));
        plot.add_witness_segment(d.witness_a, d.witness_b);
    }
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title", "regions");
    artifacts.add(prefix + ".regions.svg", plot.render(opt));
    return 0;
}

void add_evidence_to_plot(svg::SrgPlot& plot, const Evidence& evidence,
                          const std::string& label) {
    if (const auto* region = std::get_if<Region>(&evidence)) {
        plot.add_region(*region, label);
    } else {
        plot.add_cloud(std::get<SrgCloud>(evidence), label);
    }
}

int run_cert_hard(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"p_evidence", "c_inverse_evidence", "assumptions",
                       "margin_floor", "output_prefix", "plot_title"});
    const Evidence p = load_evidence(jsonu::require(ctx.config, where, "p_evidence"),
                                     ctx.base, where + "/p_evidence");
    const Evidence c =
        load_evidence(jsonu::require(ctx.config, where, "c_inverse_evidence"),
                      ctx.base, where + "/c_inverse_evidence");
    AssumptionChecklist checklist = AssumptionChecklist::for_hard();
    if (auto it = ctx.config.find("assumptions"); it != ctx.config.end()) {
        apply_assumptions(checklist, *it, where + "/assumptions");
    }
    const double floor = jsonu::get_number_or(ctx.config, where, "margin_floor",
                                              kDefaultMarginFloor);
    const Certificate cert = certify_hard(p, c, std::move(checklist), floor);
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "cert_hard");
    artifacts.add(prefix + ".certificate.json", dump(certificate_to_json(cert)));
    svg::SrgPlot plot;
    add_evidence_to_plot(plot, p, "SRG_e(P) evidence");
    add_evidence_to_plot(plot, c, "inverse SRG_e(C) evidence");
    plot.add_witness_segment(cert.witnesses.z1, cert.witnesses.z2);
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title",
                                     "hard separation certificate");
    artifacts.add(prefix + ".certificate.svg", plot.render(opt));
    return verdict_exit_code(cert.verdict);
}

int run_cert_soft(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"p_evidence", "c_inverse_evidence", "tau_grid",
                       "assumptions", "margin_floor", "output_prefix",
                       "plot_title"});
    const Evidence p = load_evidence(jsonu::require(ctx.config, where, "p_evidence"),
                                     ctx.base, where + "/p_evidence");
    const Evidence c =
        load_evidence(jsonu::require(ctx.config, where, "c_inverse_evidence"),
                      ctx.base, where + "/c_inverse_evidence");
    const Json& grid_json = jsonu::require(ctx.config, where, "tau_grid");
    if (!grid_json.is_array() || grid_json.empty()) {
        throw ConfigError(where + "/tau_grid", "expected nonempty array");
    }
    const auto grid = grid_json.get<std::vector<double>>();
    AssumptionChecklist checklist = AssumptionChecklist::for_soft();
    if (auto it = ctx.config.find("assumptions"); it != ctx.config.end()) {
        apply_assumptions(checklist, *it, where + "/assumptions");
    }
    const double floor = jsonu::get_number_or(ctx.config, where, "margin_floor",
                                              kDefaultMarginFloor);
    const Certificate cert = certify_soft(p, c, grid, std::move(checklist), floor);
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "cert_soft");
    artifacts.add(prefix + ".certificate.json", dump(certificate_to_json(cert)));
    svg::SrgPlot plot;
    add_evidence_to_plot(plot, p, "SRG(P) evidence");
    add_evidence_to_plot(plot, c, "inverse SRG(C) evidence (tau = 1)");
    plot.add_witness_segment(cert.witnesses.z1, cert.witnesses.z2);
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title",
                                     "soft separation certificate");
    artifacts.add(prefix + ".certificate.svg", plot.render(opt));
    return verdict_exit_code(cert.verdict);
}

int run_cert_passivity(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"operator_p", "operator_c", "delta", "epsilon",
                       "excitation", "assumptions", "margin_floor",
                       "output_prefix", "plot_title"});
    const OperatorSpec spec_p =
        load_operator(jsonu::require(ctx.config, where, "operator_p"), ctx.base,
                      where + "/operator_p");
    const OperatorSpec spec_c =
        load_operator(jsonu::require(ctx.config, where, "operator_c"), ctx.base,
                      where + "/operator_c");
    PassivityIndices indices;
    indices.delta = jsonu::get_number(ctx.config, where, "delta");
    indices.epsilon = jsonu::get_number(ctx.config, where, "epsilon");

    PassivityEvidence evidence;
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "cert_passivity");
    if (ctx.config.contains("excitation")) {
        const ExcitationConfig cfg =
            excitation_with_override(ctx.config, where, ctx.seed_override);
        evidence.p_hard_cloud = sample_hard_srg(spec_p, cfg);
        evidence.c_hard_cloud = sample_hard_srg(spec_c, cfg);
        artifacts.add(prefix + ".p_cloud.json",
                      dump(cloud_to_json(*evidence.p_hard_cloud)));
        artifacts.add(prefix + ".c_cloud.json",
                      dump(cloud_to_json(*evidence.c_hard_cloud)));
    }
    AssumptionChecklist checklist = AssumptionChecklist::for_hard();
    if (auto it = ctx.config.find("assumptions"); it != ctx.config.end()) {
        apply_assumptions(checklist, *it, where + "/assumptions");
    }
    const double floor = jsonu::get_number_or(ctx.config, where, "margin_floor",
                                              kDefaultMarginFloor);
    const Certificate cert = certify_passivity_corollary(
        indices, evidence, std::move(checklist), floor);
    artifacts.add(prefix + ".certificate.json", dump(certificate_to_json(cert)));
    svg::SrgPlot plot;
    plot.add_region(Region::sector_disk(indices.delta, indices.epsilon),
                    "D(delta, epsilon)");
    plot.add_region(Region::half_plane_leq(0.0), "inverse SRG side of C");
    if (evidence.p_hard_cloud) {
        plot.add_cloud(*evidence.p_hard_cloud, "hard SRG cloud of P");
    }
    plot.add_witness_segment(cert.witnesses.z1, cert.witnesses.z2);
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title",
                                     "passivity corollary certificate");
    artifacts.add(prefix + ".certificate.svg", plot.render(opt));
    return verdict_exit_code(cert.verdict);
}

SampledSignal load_d1(const Json& j, const fs::path& base, int dim,
                      const std::string& where,
                      std::optional<long long> seed_override) {
    if (j.is_string()) {
        return load_signal_csv((base / j.get<std::string>()).string());
    }
    jsonu::require_object(j, where);
    if (j.contains("step")) {
        jsonu::check_keys(j, where, {"step"});
        const Json& s = j["step"];
        const std::string sw = where + "/step";
        jsonu::check_keys(s, sw, {"amplitude", "horizon", "dt"});
        const double amplitude = jsonu::get_number_or(s, sw, "amplitude", 1.0);
        const double horizon = jsonu::get_number(s, sw, "horizon");
        const double dt = jsonu::get_number(s, sw, "dt");
        const auto n = static_cast<Eigen::Index>(std::llround(horizon / dt));
        return SampledSignal(
            dt, Eigen::MatrixXd::Constant(n, dim, amplitude));
    }
    jsonu::check_keys(j, where, {"excitation", "pair_id"});
    ExcitationConfig cfg = excitation_from_json(
        jsonu::require(j, where, "excitation"), where + "/excitation");
    if (seed_override) cfg.seed = static_cast<std::uint64_t>(*seed_override);
    const int pair_id =
        static_cast<int>(jsonu::get_integer_or(j, where, "pair_id", 0));
    return excitation_pair(cfg, dim, pair_id).first;
}

int run_simulate(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"operator_p", "operator_c", "d1", "solver",
                       "output_prefix"});
    const OperatorSpec spec_p =
        load_operator(jsonu::require(ctx.config, where, "operator_p"), ctx.base,
                      where + "/operator_p");
    const OperatorSpec spec_c =
        load_operator(jsonu::require(ctx.config, where, "operator_c"), ctx.base,
                      where + "/operator_c");
    SolverConfig solver;
    if (auto it = ctx.config.find("solver"); it != ctx.config.end()) {
        solver = solver_from_json(*it, where + "/solver");
    }
    const SampledSignal d1 =
        load_d1(jsonu::require(ctx.config, where, "d1"), ctx.base,
                spec_p.io_dimension(), where + "/d1", ctx.seed_override);
    const LoopTrace trace = solve_feedback(spec_p, spec_c, d1, solver);
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "simulate");
    artifacts.add(prefix + ".trace.csv", loop_trace_to_csv(trace));
    OrderedJson stats;
    stats["max_iterations_used"] = trace.max_iterations_used;
    stats["max_residual"] = trace.max_residual;
    artifacts.add(prefix + ".solve.json", dump(stats));
    return 0;
}

int run_gain_estimate(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"operator_p", "operator_c", "excitation",
                       "amplitude_scales", "solver", "t_grid", "output_prefix"});
    const OperatorSpec spec_p =
        load_operator(jsonu::require(ctx.config, where, "operator_p"), ctx.base,
                      where + "/operator_p");
    const OperatorSpec spec_c =
        load_operator(jsonu::require(ctx.config, where, "operator_c"), ctx.base,
                      where + "/operator_c");
    GainEstimateConfig cfg;
    cfg.excitation = excitation_with_override(ctx.config, where, ctx.seed_override);
    if (auto it = ctx.config.find("amplitude_scales"); it != ctx.config.end()) {
        cfg.amplitude_scales = it->get<std::vector<double>>();
    }
    if (auto it = ctx.config.find("t_grid"); it != ctx.config.end()) {
        cfg.t_grid = it->get<std::vector<double>>();
    }
    if (auto it = ctx.config.find("solver"); it != ctx.config.end()) {
        cfg.solver = solver_from_json(*it, where + "/solver");
    }
    const GainEstimate estimate =
        estimate_loop_incremental_gain(spec_p, spec_c, cfg);
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "gain");
    artifacts.add(prefix + ".gain.json", dump(gain_estimate_to_json(estimate)));
    return 0;
}

int run_plot(const CommandContext& ctx, ArtifactSet& artifacts) {
    const std::string where = "config";
    jsonu::check_keys(ctx.config, where,
                      {"clouds", "regions", "certificate", "plot_title",
                       "output_prefix"});
    svg::SrgPlot plot;
    if (auto it = ctx.config.find("regions"); it != ctx.config.end()) {
        if (!it->is_array()) throw ConfigError(where + "/regions", "expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            plot.add_region(load_region((*it)[i], ctx.base,
                                        where + "/regions/" + std::to_string(i)),
                            "region " + std::to_string(i));
        }
    }
    if (auto it = ctx.config.find("clouds"); it != ctx.config.end()) {
        if (!it->is_array()) throw ConfigError(where + "/clouds", "expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) {
                throw ConfigError(where + "/clouds/" + std::to_string(i),
                                  "expected file path");
            }
            const SrgCloud cloud =
                load_cloud_file(ctx.base, (*it)[i].get<std::string>());
            plot.add_cloud(cloud, "cloud " + std::to_string(i));
        }
    }
    if (auto it = ctx.config.find("certificate"); it != ctx.config.end()) {
        if (!it->is_string()) {
            throw ConfigError(where + "/certificate", "expected file path");
        }
        const Json cert = load_json_file(ctx.base / it->get<std::string>());
        const Json& w = jsonu::require(cert, "certificate", "witnesses");
        plot.add_witness_segment(
            Complex(w.at("z1").at("re").get<double>(),
                    w.at("z1").at("im").get<double>()),
            Complex(w.at("z2").at("re").get<double>(),
                    w.at("z2").at("im").get<double>()));
    }
    if (plot.empty()) throw ConfigError(where, "nothing to plot");
    svg::PlotOptions opt;
    opt.title = jsonu::get_string_or(ctx.config, where, "plot_title", "SRG plot");
    const std::string prefix =
        jsonu::get_string_or(ctx.config, where, "output_prefix", "plot");
    artifacts.add(prefix + ".plot.svg", plot.render(opt));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"srglab: sampled scaled relative graphs, region geometry, and "
                 "feedback stability certificates"};
    app.require_subcommand(1);

    struct SubOptions {
        std::string config_path;
        std::string out_dir = ".";
        std::optional<long long> seed;
    };
    std::map<std::string, SubOptions> options;
    const std::vector<std::string> names = {
        "srg-soft",     "srg-hard", "region",       "cert-hard", "cert-soft",
        "cert-passivity", "simulate", "gain-estimate", "plot"};
    const std::map<std::string, std::string> blurbs = {
        {"srg-soft", "sample the soft SRG of an operator"},
        {"srg-hard", "sample the hard SRG of an operator"},
        {"region", "validate regions and measure region distances"},
        {"cert-hard", "certify feedback stability by hard SRG separation"},
        {"cert-soft", "certify feedback stability by soft separation with a tau sweep"},
        {"cert-passivity", "certify via the passivity corollary through D(delta,epsilon)"},
        {"simulate", "solve the closed loop P # C with d2 = 0"},
        {"gain-estimate", "estimate the closed-loop incremental gain from samples"},
        {"plot", "overlay clouds, regions and margin witnesses as SVG"}};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, blurbs.at(name));
        auto& opt = options[name];
        sub->add_option("--config", opt.config_path, "JSON configuration file")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "override the excitation seed");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    const SubOptions& opt = options.at(command);
    try {
        CommandContext ctx;
        const fs::path config_path(opt.config_path);
        ctx.config = load_json_file(config_path);
        ctx.base = config_path.has_parent_path() ? config_path.parent_path()
                                                 : fs::path(".");
        ctx.outdir = opt.out_dir;
        ctx.seed_override = opt.seed;

        ArtifactSet artifacts;
        int code = 1;
        if (command == "srg-soft") {
            code = run_srg(ctx, SrgKind::soft, artifacts);
        } else if (command == "srg-hard") {
            code = run_srg(ctx, SrgKind::hard, artifacts);
        } else if (command == "region") {
            code = run_region(ctx, artifacts);
        } else if (command == "cert-hard") {
            code = run_cert_hard(ctx, artifacts);
        } else if (command == "cert-soft") {
            code = run_cert_soft(ctx, artifacts);
        } else if (command == "cert-passivity") {
            code = run_cert_passivity(ctx, artifacts);
        } else if (command == "simulate") {
            code = run_simulate(ctx, artifacts);
        } else if (command == "gain-estimate") {
            code = run_gain_estimate(ctx, artifacts);
        } else if (command == "plot") {
            code = run_plot(ctx, artifacts);
        }
        write_artifacts(ctx.outdir, artifacts);
        return code;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
