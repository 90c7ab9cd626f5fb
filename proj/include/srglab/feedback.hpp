#pragma once

// Closed-loop solver for the positive feedback interconnection
//   u1 = d1 + y2,  u2 = y1,  y1 = P(u1),  y2 = C(u2),  d2 = 0,
// solved causally sample by sample. When at most one of P, C has direct
// feedthrough the per-step algebra is explicit; when both do, each step runs
// a successive-substitution fixed point whose failure to contract is
// reported as a solver failure (the numerical face of ill-posedness).

#include "srglab/json_util.hpp"
#include "srglab/operators.hpp"
#include "srglab/parallel.hpp"
#include "srglab/srg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace srglab {

struct SolverConfig {
    double tolerance = 1e-10;          // per-step fixed-point tolerance
    int max_iterations = 100;          // per-step iteration cap
    double divergence_threshold = 1e12;  // |sample| beyond this flags divergence
};

class WellPosednessError : public std::runtime_error {
public:
    WellPosednessError(const std::string& what, Eigen::Index step)
        : std::runtime_error(what), step_(step) {}
    [[nodiscard]] Eigen::Index step() const { return step_; }

private:
    Eigen::Index step_;
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, Eigen::Index step)
        : std::runtime_error(what), step_(step) {}
    [[nodiscard]] Eigen::Index step() const { return step_; }

private:
    Eigen::Index step_;
};

struct LoopTrace {
    SampledSignal d1, u1, u2, y1, y2;
    int max_iterations_used = 0;
    double max_residual = 0.0;
};

/// Solve P # C with d2 = 0 for the given external input d1.
inline LoopTrace solve_feedback(const OperatorSpec& spec_p,
                                const OperatorSpec& spec_c,
                                const SampledSignal& d1,
                                const SolverConfig& cfg = {}) {
    if (spec_p.io_dimension() != spec_c.io_dimension()) {
        throw std::invalid_argument("solve_feedback: P and C dimensions differ");
    }
    if (d1.channels() != spec_p.io_dimension()) {
        throw std::invalid_argument("solve_feedback: d1 channel count mismatch");
    }
    const Eigen::Index n = d1.samples();
    const Eigen::Index dim = d1.channels();
    auto p = make_stepper(spec_p, d1.dt);
    auto c = make_stepper(spec_c, d1.dt);
    const bool ft_p = has_direct_feedthrough(spec_p);
    const bool ft_c = has_direct_feedthrough(spec_c);

    LoopTrace trace;
    Eigen::MatrixXd u1(n, dim), u2(n, dim), y1(n, dim), y2(n, dim);
    Eigen::VectorXd y2_warm = Eigen::VectorXd::Zero(dim);

    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::VectorXd d1k = d1.values.row(k).transpose();
        Eigen::VectorXd u1k, u2k, y1k, y2k;
        int iterations = 1;
        double residual = 0.0;
        if (!ft_p) {
            // y1[k] ignores u1[k]; evaluate the strictly causal side first.
            y1k = p->output(Eigen::VectorXd::Zero(dim));
            u2k = y1k;
            y2k = c->output(u2k);
            u1k = d1k + y2k;
        } else if (!ft_c) {
            y2k = c->output(Eigen::VectorXd::Zero(dim));
            u1k = d1k + y2k;
            y1k = p->output(u1k);
            u2k = y1k;
        } else {
            // Algebraic loop: iterate y2 -> C(P(d1 + y2)).
            Eigen::VectorXd guess = y2_warm;
            bool converged = false;
            for (int it = 0; it < cfg.max_iterations; ++it) {
                u1k = d1k + guess;
                y1k = p->output(u1k);
                u2k = y1k;
                const Eigen::VectorXd next = c->output(u2k);
                residual = (next - guess).lpNorm<Eigen::Infinity>();
                guess = next;
                iterations = it + 1;
                if (!guess.allFinite()) {
                    throw DivergenceError(
                        "solve_feedback: fixed point diverged at sample " +
                            std::to_string(k),
                        k);
                }
                if (residual <= cfg.tolerance) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw WellPosednessError(
                    "solve_feedback: per-step fixed point did not reach "
                    "tolerance at sample " +
                        std::to_string(k) + " (residual " +
                        std::to_string(residual) + ")",
                    k);
            }
            y2k = guess;
            u1k = d1k + y2k;
            y1k = p->output(u1k);
            u2k = y1k;
        }
        const double peak =
            std::max({u1k.lpNorm<Eigen::Infinity>(), u2k.lpNorm<Eigen::Infinity>(),
                      y1k.lpNorm<Eigen::Infinity>(), y2k.lpNorm<Eigen::Infinity>()});
        if (!std::isfinite(peak) || peak > cfg.divergence_threshold) {
            throw DivergenceError(
                "solve_feedback: trace exceeded divergence threshold at sample " +
                    std::to_string(k),
                k);
        }
        u1.row(k) = u1k.transpose();
        u2.row(k) = u2k.transpose();
        y1.row(k) = y1k.transpose();
        y2.row(k) = y2k.transpose();
        p->advance(u1k);
        c->advance(u2k);
        y2_warm = y2k;
        trace.max_iterations_used = std::max(trace.max_iterations_used, iterations);
        trace.max_residual = std::max(trace.max_residual, residual);
    }
    trace.d1 = d1;
    trace.u1 = SampledSignal(d1.dt, std::move(u1));
    trace.u2 = SampledSignal(d1.dt, std::move(u2));
    trace.y1 = SampledSignal(d1.dt, std::move(y1));
    trace.y2 = SampledSignal(d1.dt, std::move(y2));
    return trace;
}

// ---------------------------------------------------------------------------
// Well-posedness probe
// ---------------------------------------------------------------------------

struct TauProbeReport {
    double tau = 0.0;
    int trials = 0;
    int solver_failures = 0;
    int divergences = 0;
    int max_iterations = 0;
    [[nodiscard]] bool flagged() const {
        return solver_failures > 0 || divergences > 0;
    }
};

/// Attempt to solve P # (tau C) on a random ensemble for each tau. Failures
/// are data, not errors; a flagged tau means the solver could not settle,
/// not a proof of ill-posedness.
inline std::vector<TauProbeReport> wellposedness_probe(
    const OperatorSpec& spec_p, const OperatorSpec& spec_c,
    const std::vector<double>& tau_grid, int trials, std::uint64_t seed,
    const SolverConfig& cfg = {}, double horizon = 2.0, double dt = 0.01) {
    if (trials < 1) throw std::invalid_argument("wellposedness_probe: trials >= 1");
    const int dim = spec_p.io_dimension();
    const auto n = static_cast<Eigen::Index>(std::llround(horizon / dt));
    std::vector<TauProbeReport> reports;
    for (double tau : tau_grid) {
        TauProbeReport report;
        report.tau = tau;
        report.trials = trials;
        const OperatorSpec tau_c = OperatorSpec::scale(tau, spec_c);
        std::mt19937_64 rng(detail::splitmix64(seed ^ std::hash<double>{}(tau)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < trials; ++t) {
            Eigen::MatrixXd m(n, dim);
            for (Eigen::Index k = 0; k < n; ++k) {
                for (int ch = 0; ch < dim; ++ch) m(k, ch) = gauss(rng);
            }
            try {
                const LoopTrace trace =
                    solve_feedback(spec_p, tau_c, SampledSignal(dt, std::move(m)), cfg);
                report.max_iterations =
                    std::max(report.max_iterations, trace.max_iterations_used);
            } catch (const WellPosednessError&) {
                report.solver_failures += 1;
            } catch (const DivergenceError&) {
                report.divergences += 1;
            }
        }
        reports.push_back(report);
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Loop incremental-gain estimation
// ---------------------------------------------------------------------------

struct GainEstimateConfig {
    ExcitationConfig excitation;
    std::vector<double> amplitude_scales = {1.0};
    SolverConfig solver;
    std::vector<double> t_grid;  // empty -> excitation hard grid
};

struct GainCurve {
    int pair_id = 0;
    double amplitude = 1.0;
    std::vector<double> t_grid;
    std::vector<double> gamma;  // gamma_T(delta d1, delta (u1,u2)); NaN if (d d1)_T = 0
    bool divergent = false;
};

struct GainEstimate {
    double sup_gain = 0.0;
    bool any_divergent = false;
    std::uint64_t seed = 0;
    std::vector<GainCurve> curves;
    std::map<double, double> per_amplitude_sup;
};

/// Empirical lower bound on the closed-loop incremental gain from d1 to the
/// stacked internal signal (u1, u2), reported per amplitude scale so that
/// nonlinear amplitude dependence stays visible. Falsifies stability claims;
/// never proves them.
inline GainEstimate estimate_loop_incremental_gain(const OperatorSpec& spec_p,
                                                   const OperatorSpec& spec_c,
                                                   const GainEstimateConfig& cfg) {
    cfg.excitation.validate();
    if (cfg.amplitude_scales.empty()) {
        throw std::invalid_argument("gain estimate: amplitude_scales empty");
    }
    const int dim = spec_p.io_dimension();
    const std::vector<double> grid =
        cfg.t_grid.empty() ? cfg.excitation.effective_hard_grid() : cfg.t_grid;
    GainEstimate estimate;
    estimate.seed = cfg.excitation.seed;

    struct Job {
        int pair_id;
        double amplitude;
    };
    std::vector<Job> jobs;
    for (double amp : cfg.amplitude_scales) {
        for (int pair = 0; pair < cfg.excitation.ensemble_size; ++pair) {
            jobs.push_back({pair, amp});
        }
    }
    std::vector<GainCurve> curves(jobs.size());
    parallel_for(
        jobs.size(),
        [&](std::size_t i) {
            const Job& job = jobs[i];
            auto [base1, base2] = excitation_pair(cfg.excitation, dim, job.pair_id);
            const SampledSignal d1a = scaled(base1, job.amplitude);
            const SampledSignal d1b = scaled(base2, job.amplitude);
            GainCurve curve;
            curve.pair_id = job.pair_id;
            curve.amplitude = job.amplitude;
            curve.t_grid = grid;
            try {
                const LoopTrace ta = solve_feedback(spec_p, spec_c, d1a, cfg.solver);
                const LoopTrace tb = solve_feedback(spec_p, spec_c, d1b, cfg.solver);
                const SampledSignal dd1 = difference(ta.d1, tb.d1);
                const SampledSignal du =
                    hstack(difference(ta.u1, tb.u1), difference(ta.u2, tb.u2));
                for (double T : grid) {
                    const SampledSignal dd1T = truncate(dd1, T);
                    if (is_zero(dd1T)) {
                        curve.gamma.push_back(std::numeric_limits<double>::quiet_NaN());
                        continue;
                    }
                    curve.gamma.push_back(norm(truncate(du, T)) / norm(dd1T));
                }
            } catch (const DivergenceError&) {
                curve.divergent = true;
            } catch (const WellPosednessError&) {
                curve.divergent = true;
            }
            curves[i] = std::move(curve);
        },
        cfg.excitation.threads);

    for (auto& curve : curves) {
        double& amp_sup = estimate.per_amplitude_sup[curve.amplitude];
        if (curve.divergent) {
            estimate.any_divergent = true;
            estimate.sup_gain = std::numeric_limits<double>::infinity();
            amp_sup = std::numeric_limits<double>::infinity();
        } else {
            for (double g : curve.gamma) {
                if (std::isnan(g)) continue;
                estimate.sup_gain = std::max(estimate.sup_gain, g);
                amp_sup = std::max(amp_sup, g);
            }
        }
        estimate.curves.push_back(std::move(curve));
    }
    return estimate;
}

// ---------------------------------------------------------------------------
// Interchange
// ---------------------------------------------------------------------------

inline std::string loop_trace_to_csv(const LoopTrace& trace) {
    const Eigen::Index n = trace.d1.samples();
    const Eigen::Index dim = trace.d1.channels();
    std::string out = "t";
    const char* names[] = {"d1", "u1", "u2", "y1", "y2"};
    for (const char* name : names) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out += ",";
            out += name;
            out += "_" + std::to_string(c);
        }
    }
    out += "\n";
    const SampledSignal* signals[] = {&trace.d1, &trace.u1, &trace.u2, &trace.y1,
                                      &trace.y2};
    for (Eigen::Index k = 0; k < n; ++k) {
        out += detail::format_double(static_cast<double>(k) * trace.d1.dt);
        for (const SampledSignal* s : signals) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                out += ",";
                out += detail::format_double(s->values(k, c));
            }
        }
        out += "\n";
    }
    return out;
}

inline OrderedJson gain_estimate_to_json(const GainEstimate& estimate) {
    OrderedJson j;
    if (std::isinf(estimate.sup_gain)) {
        j["sup_gain"] = "infinity";
    } else {
        j["sup_gain"] = estimate.sup_gain;
    }
    j["any_divergent"] = estimate.any_divergent;
    j["seed"] = estimate.seed;
    OrderedJson per_amp = OrderedJson::object();
    for (const auto& [amp, sup] : estimate.per_amplitude_sup) {
        if (std::isinf(sup)) {
            per_amp[detail::format_double(amp)] = "infinity";
        } else {
            per_amp[detail::format_double(amp)] = sup;
        }
    }
    j["per_amplitude_sup"] = std::move(per_amp);
    OrderedJson curves = OrderedJson::array();
    for (const auto& curve : estimate.curves) {
        OrderedJson c;
        c["pair_id"] = curve.pair_id;
        c["amplitude"] = curve.amplitude;
        c["divergent"] = curve.divergent;
        c["T"] = curve.t_grid;
        OrderedJson gammas = OrderedJson::array();
        for (double g : curve.gamma) {
            if (std::isnan(g)) {
                gammas.push_back(nullptr);
            } else {
                gammas.push_back(g);
            }
        }
        c["gamma"] = std::move(gammas);
        curves.push_back(std::move(c));
    }
    j["curves"] = std::move(curves);
    return j;
}

}  // namespace srglab
