#pragma once

// Sampled scaled relative graphs. A cloud is a finite inner approximation of
// the soft SRG (energy-bounded trajectory pairs, full-horizon functionals)
// or the hard SRG (extended-space pairs, functionals truncated at every T of
// a grid). Points are stored in polar form with angle in [0, pi]; the
// conjugate branch is implied.
//
// Soft admission applies a tail-energy filter to all four trajectories as a
// finite-horizon proxy for membership in the operator's L2 domain. Hard
// sampling admits any pair with nonzero truncated increments.

#include "srglab/json_util.hpp"
#include "srglab/operators.hpp"
#include "srglab/parallel.hpp"
#include "srglab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srglab {

using Complex = std::complex<double>;

enum class SrgKind { soft, hard };

inline const char* srg_kind_name(SrgKind k) {
    return k == SrgKind::soft ? "soft" : "hard";
}

struct SrgPoint {
    double magnitude = 0.0;       // > 0 by construction
    double angle = 0.0;           // in [0, pi]; conjugate implied
    SrgKind kind = SrgKind::soft;
    std::optional<double> horizon_T;  // hard points only
    int pair_id = 0;

    [[nodiscard]] Complex value() const {
        return Complex(magnitude * std::cos(angle), magnitude * std::sin(angle));
    }
};

struct AdmissionStats {
    int pairs_tried = 0;
    int pairs_admitted = 0;
    std::map<std::string, int> rejections;  // cause -> count
};

struct SrgCloud {
    SrgKind kind = SrgKind::soft;
    std::vector<SrgPoint> points;
    std::string excitation_digest;
    std::uint64_t seed = 0;
    AdmissionStats stats;
};

class EmptyCloudError : public std::runtime_error {
public:
    explicit EmptyCloudError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Excitation configuration
// ---------------------------------------------------------------------------

enum class SignalFamilyKind {
    filtered_noise,
    multisine,
    step_mixture,
    chirp,
    exp_growth  // growing L2e trajectories; exercise modes soft pairs cannot
};

struct SignalFamily {
    SignalFamilyKind kind = SignalFamilyKind::filtered_noise;
    double amplitude_min = 0.5;
    double amplitude_max = 1.5;
    double cutoff_hz = 0.5;      // filtered_noise
    double freq_min_hz = 0.05;   // multisine / chirp
    double freq_max_hz = 1.5;
    int tones = 6;               // multisine
    int steps = 3;               // step_mixture
    double growth_rate = 1.0;    // exp_growth
};

struct ExcitationConfig {
    int ensemble_size = 200;  // trajectory pairs to draw
    double horizon = 12.0;    // seconds
    double dt = 0.01;
    std::vector<SignalFamily> families;  // empty -> standard four families
    std::uint64_t seed = 1;
    double tail_tolerance = 1e-4;  // soft admission threshold
    double tail_window = 0.25;     // fraction of horizon checked for tails
    std::vector<double> hard_t_grid;  // empty -> 16 log-spaced in [4dt, horizon]
    bool windowed = true;             // sin^2 envelope on [0, active_fraction*H]
    double active_fraction = 0.4;
    bool derivative_of_window = false;  // emit exact discrete derivatives
    std::vector<double> perturbation_scales = {0.01, 0.1, 1.0};
    int threads = 0;  // 0 = SRG_LAB_THREADS / hardware default

    [[nodiscard]] Eigen::Index samples() const {
        return static_cast<Eigen::Index>(std::llround(horizon / dt));
    }

    [[nodiscard]] std::vector<SignalFamily> effective_families() const {
        if (!families.empty()) return families;
        SignalFamily noise;
        noise.kind = SignalFamilyKind::filtered_noise;
        SignalFamily sines;
        sines.kind = SignalFamilyKind::multisine;
        SignalFamily steps;
        steps.kind = SignalFamilyKind::step_mixture;
        SignalFamily chirp;
        chirp.kind = SignalFamilyKind::chirp;
        return {noise, sines, steps, chirp};
    }

    [[nodiscard]] std::vector<double> effective_hard_grid() const {
        if (!hard_t_grid.empty()) return hard_t_grid;
        std::vector<double> grid;
        const double lo = 4.0 * dt;
        const double hi = horizon;
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            const double f = static_cast<double>(i) / (n - 1);
            grid.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
        }
        grid.back() = hi;  // land on the horizon exactly
        return grid;
    }

    void validate() const {
        if (ensemble_size < 2) {
            throw std::invalid_argument("excitation: ensemble_size must be >= 2");
        }
        if (!(dt > 0.0)) throw std::invalid_argument("excitation: dt must be > 0");
        if (samples() < 8) {
            throw std::invalid_argument("excitation: horizon too short for dt");
        }
        if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
            throw std::invalid_argument("excitation: tail_tolerance must be in (0,1)");
        }
        if (!(tail_window > 0.0 && tail_window < 1.0)) {
            throw std::invalid_argument("excitation: tail_window must be in (0,1)");
        }
        if (!(active_fraction > 0.0 && active_fraction <= 1.0)) {
            throw std::invalid_argument("excitation: active_fraction in (0,1]");
        }
        const auto grid = effective_hard_grid();
        double prev = 0.0;
        for (double t : grid) {
            if (!(t > prev)) {
                throw std::invalid_argument("excitation: hard T grid must be strictly increasing");
            }
            if (t > horizon * (1.0 + 1e-12)) {
                throw std::invalid_argument("excitation: hard T grid exceeds horizon");
            }
            prev = t;
        }
        if (perturbation_scales.empty()) {
            throw std::invalid_argument("excitation: perturbation_scales must be nonempty");
        }
    }
};

// ---------------------------------------------------------------------------
// Deterministic trajectory-pair generation
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t pair_seed(std::uint64_t seed, int pair_id) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(pair_id) + 1));
}

inline void normalize_rms(Eigen::MatrixXd& m, double target) {
    const double n = static_cast<double>(m.size());
    const double rms = std::sqrt(m.squaredNorm() / n);
    if (rms > 0.0) m *= target / rms;
}

/// One channel of raw excitation, before envelope/derivative shaping.
inline Eigen::VectorXd draw_channel(const SignalFamily& fam, Eigen::Index n,
                                    double dt, double horizon,
                                    std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    switch (fam.kind) {
        case SignalFamilyKind::filtered_noise: {
            const double alpha =
                1.0 - std::exp(-2.0 * M_PI * fam.cutoff_hz * dt);
            double y = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) {
                y += alpha * (gauss(rng) - y);
                s(k) = y;
            }
            break;
        }
        case SignalFamilyKind::multisine: {
            for (int tone = 0; tone < fam.tones; ++tone) {
                const double f =
                    fam.freq_min_hz + uni(rng) * (fam.freq_max_hz - fam.freq_min_hz);
                const double phi = uni(rng) * 2.0 * M_PI;
                const double amp = 0.5 + 0.5 * uni(rng);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double t = static_cast<double>(k) * dt;
                    s(k) += amp * std::sin(2.0 * M_PI * f * t + phi);
                }
            }
            break;
        }
        case SignalFamilyKind::step_mixture: {
            for (int step = 0; step < fam.steps; ++step) {
                const double at = uni(rng) * 0.7 * horizon;
                const double height = 2.0 * uni(rng) - 1.0;
                const auto from = static_cast<Eigen::Index>(at / dt);
                for (Eigen::Index k = from; k < n; ++k) s(k) += height;
            }
            break;
        }
        case SignalFamilyKind::chirp: {
            const double f0 = fam.freq_min_hz;
            const double f1 = fam.freq_max_hz;
            const double phi = uni(rng) * 2.0 * M_PI;
            for (Eigen::Index k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) * dt;
                s(k) = std::sin(
                    2.0 * M_PI * (f0 * t + 0.5 * (f1 - f0) * t * t / horizon) + phi);
            }
            break;
        }
        case SignalFamilyKind::exp_growth: {
            for (Eigen::Index k = 0; k < n; ++k) {
                s(k) = std::exp(fam.growth_rate * static_cast<double>(k) * dt);
            }
            break;
        }
    }
    return s;
}

inline SampledSignal draw_excitation(const SignalFamily& fam,
                                     const ExcitationConfig& cfg, int channels,
                                     std::mt19937_64& rng) {
    const Eigen::Index n = cfg.samples();
    Eigen::MatrixXd m(n, channels);
    for (int c = 0; c < channels; ++c) {
        m.col(c) = draw_channel(fam, n, cfg.dt, cfg.horizon, rng);
    }
    std::uniform_real_distribution<double> amp(fam.amplitude_min,
                                               fam.amplitude_max);
    const double target = amp(rng);
    if (fam.kind == SignalFamilyKind::exp_growth) {
        m *= target;  // growth profile is the point; keep it unnormalized
    } else {
        normalize_rms(m, target);
        const bool window = cfg.windowed || cfg.derivative_of_window;
        if (window) {
            const double active = cfg.active_fraction * cfg.horizon;
            for (Eigen::Index k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) * cfg.dt;
                const double w =
                    t < active ? std::sin(M_PI * t / active) * std::sin(M_PI * t / active)
                               : 0.0;
                m.row(k) *= w;
            }
        }
        if (cfg.derivative_of_window) {
            // Exact discrete derivative of the windowed signal; the running
            // rectangle sum returns to zero at the horizon by construction.
            Eigen::MatrixXd d(n, channels);
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k + 1 < n) {
                    d.row(k) = (m.row(k + 1) - m.row(k)) / cfg.dt;
                } else {
                    d.row(k) = -m.row(k) / cfg.dt;
                }
            }
            m = std::move(d);
        }
    }
    return SampledSignal(cfg.dt, std::move(m));
}

/// Draw the (u1, u2) trajectory pair for `pair_id`. Even pairs are
/// independent draws, odd pairs are perturbations u2 = u1 + eps*delta.
inline std::pair<SampledSignal, SampledSignal> draw_pair(
    const ExcitationConfig& cfg, int channels, int pair_id) {
    const auto families = cfg.effective_families();
    const SignalFamily& fam =
        families[static_cast<std::size_t>(pair_id) % families.size()];
    std::mt19937_64 rng(pair_seed(cfg.seed, pair_id));
    SampledSignal u1 = draw_excitation(fam, cfg, channels, rng);
    if (pair_id % 2 == 1) {
        const auto& scales = cfg.perturbation_scales;
        const double eps =
            scales[static_cast<std::size_t>(pair_id / 2) % scales.size()];
        SampledSignal delta = draw_excitation(fam, cfg, channels, rng);
        return {u1, SampledSignal(u1.dt, u1.values + eps * delta.values)};
    }
    SampledSignal u2 = draw_excitation(fam, cfg, channels, rng);
    return {u1, u2};
}

inline std::string excitation_digest(const ExcitationConfig& cfg);

}  // namespace detail

/// Deterministic (u1, u2) excitation pair for `pair_id` under the config.
/// Exposed so that loop-gain estimation draws the same ensembles the SRG
/// samplers do.
inline std::pair<SampledSignal, SampledSignal> excitation_pair(
    const ExcitationConfig& cfg, int channels, int pair_id) {
    return detail::draw_pair(cfg, channels, pair_id);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace detail {

struct PairOutcome {
    std::vector<SrgPoint> points;
    std::optional<std::string> rejection;
};

inline SrgCloud assemble_cloud(SrgKind kind, const ExcitationConfig& cfg,
                               std::vector<PairOutcome>& outcomes) {
    SrgCloud cloud;
    cloud.kind = kind;
    cloud.excitation_digest = excitation_digest(cfg);
    cloud.seed = cfg.seed;
    cloud.stats.pairs_tried = static_cast<int>(outcomes.size());
    for (auto& out : outcomes) {
        if (!out.points.empty()) {
            cloud.stats.pairs_admitted += 1;
            for (auto& p : out.points) cloud.points.push_back(p);
        }
        if (out.rejection) cloud.stats.rejections[*out.rejection] += 1;
    }
    if (cloud.points.empty()) {
        std::ostringstream msg;
        msg << srg_kind_name(kind) << " SRG sampling: all " << outcomes.size()
            << " pairs rejected (";
        bool first = true;
        for (const auto& [cause, count] : cloud.stats.rejections) {
            if (!first) msg << ", ";
            msg << cause << ": " << count;
            first = false;
        }
        msg << ")";
        throw EmptyCloudError(msg.str());
    }
    // Points are already ordered by (pair_id, T) because outcomes are
    // assembled in pair order; keep that contract explicit.
    std::stable_sort(cloud.points.begin(), cloud.points.end(),
                     [](const SrgPoint& a, const SrgPoint& b) {
                         if (a.pair_id != b.pair_id) return a.pair_id < b.pair_id;
                         return a.horizon_T.value_or(0.0) < b.horizon_T.value_or(0.0);
                     });
    return cloud;
}

}  // namespace detail

/// Sample the soft SRG of `spec`: one point per admitted trajectory pair.
inline SrgCloud sample_soft_srg(const OperatorSpec& spec,
                                const ExcitationConfig& cfg) {
    cfg.validate();
    const int channels = spec.io_dimension();
    std::vector<detail::PairOutcome> outcomes(
        static_cast<std::size_t>(cfg.ensemble_size));
    parallel_for(
        outcomes.size(),
        [&](std::size_t i) {
            const int pair_id = static_cast<int>(i);
            auto [u1, u2] = detail::draw_pair(cfg, channels, pair_id);
            const SampledSignal y1 = evaluate(spec, u1);
            const SampledSignal y2 = evaluate(spec, u2);
            const SampledSignal du = difference(u1, u2);
            const SampledSignal dy = difference(y1, y2);
            detail::PairOutcome& out = outcomes[i];
            if (is_zero(du)) {
                out.rejection = "zero_delta_u";
                return;
            }
            if (is_zero(dy)) {
                out.rejection = "zero_delta_y";
                return;
            }
            const double w = cfg.tail_window;
            if (tail_energy_fraction(u1, w) >= cfg.tail_tolerance ||
                tail_energy_fraction(u2, w) >= cfg.tail_tolerance) {
                out.rejection = "input_tail";
                return;
            }
            if (tail_energy_fraction(y1, w) >= cfg.tail_tolerance ||
                tail_energy_fraction(y2, w) >= cfg.tail_tolerance) {
                out.rejection = "output_tail";
                return;
            }
            const GainPhasePair gp = gain_phase(du, dy);
            SrgPoint p;
            p.magnitude = gp.gain;
            p.angle = gp.phase;
            p.kind = SrgKind::soft;
            p.pair_id = pair_id;
            out.points.push_back(p);
        },
        cfg.threads);
    return detail::assemble_cloud(SrgKind::soft, cfg, outcomes);
}

/// Sample the hard SRG of `spec`: one point per pair and per grid horizon T
/// with nonzero truncated increments. No tail admission; growing
/// extended-space trajectories are allowed.
inline SrgCloud sample_hard_srg(const OperatorSpec& spec,
                                const ExcitationConfig& cfg) {
    cfg.validate();
    const int channels = spec.io_dimension();
    const std::vector<double> grid = cfg.effective_hard_grid();
    std::vector<detail::PairOutcome> outcomes(
        static_cast<std::size_t>(cfg.ensemble_size));
    parallel_for(
        outcomes.size(),
        [&](std::size_t i) {
            const int pair_id = static_cast<int>(i);
            auto [u1, u2] = detail::draw_pair(cfg, channels, pair_id);
            const SampledSignal y1 = evaluate(spec, u1);
            const SampledSignal y2 = evaluate(spec, u2);
            const SampledSignal du = difference(u1, u2);
            const SampledSignal dy = difference(y1, y2);
            detail::PairOutcome& out = outcomes[i];
            bool any_nonzero_du = false;
            for (double T : grid) {
                const SampledSignal duT = truncate(du, T);
                if (is_zero(duT)) continue;
                any_nonzero_du = true;
                const SampledSignal dyT = truncate(dy, T);
                if (is_zero(dyT)) continue;
                const GainPhasePair gp = gain_phase(duT, dyT);
                SrgPoint p;
                p.magnitude = gp.gain;
                p.angle = gp.phase;
                p.kind = SrgKind::hard;
                p.horizon_T = T;
                p.pair_id = pair_id;
                out.points.push_back(p);
            }
            if (out.points.empty()) {
                out.rejection = any_nonzero_du ? "zero_delta_y" : "zero_delta_u";
            }
        },
        cfg.threads);
    return detail::assemble_cloud(SrgKind::hard, cfg, outcomes);
}

// ---------------------------------------------------------------------------
// Cloud transforms and distances
// ---------------------------------------------------------------------------

/// Swap input/output roles: gains reciprocal, phases unchanged.
inline SrgCloud invert_cloud(const SrgCloud& cloud) {
    if (cloud.points.empty()) throw EmptyCloudError("invert_cloud: empty cloud");
    SrgCloud out = cloud;
    for (auto& p : out.points) p.magnitude = 1.0 / p.magnitude;
    return out;
}

/// SRG of tau*P from the SRG of P: magnitudes scale, phases unchanged.
inline SrgCloud scale_cloud(const SrgCloud& cloud, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("scale_cloud: tau must be > 0");
    SrgCloud out = cloud;
    for (auto& p : out.points) p.magnitude *= tau;
    return out;
}

struct CloudDistance {
    double value = 0.0;
    Complex z1;  // witness in cloud a (upper-half representative)
    Complex z2;  // witness in cloud b, conjugated if that branch was closer
};

/// Minimum complex distance between two clouds, accounting for the implied
/// conjugate branches: d({z, conj z}, {w, conj w}) = min(|z-w|, |z-conj w|).
inline CloudDistance cloud_min_distance_witness(const SrgCloud& a,
                                                const SrgCloud& b) {
    if (a.points.empty() || b.points.empty()) {
        throw EmptyCloudError("cloud_min_distance: empty cloud");
    }
    CloudDistance best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& pa : a.points) {
        const Complex z = pa.value();
        for (const auto& pb : b.points) {
            const Complex w = pb.value();
            const double direct = std::abs(z - w);
            const double crossed = std::abs(z - std::conj(w));
            if (direct < best.value) {
                best.value = direct;
                best.z1 = z;
                best.z2 = w;
            }
            if (crossed < best.value) {
                best.value = crossed;
                best.z1 = z;
                best.z2 = std::conj(w);
            }
        }
    }
    return best;
}

inline double cloud_min_distance(const SrgCloud& a, const SrgCloud& b) {
    return cloud_min_distance_witness(a, b).value;
}

// ---------------------------------------------------------------------------
// Interchange
// ---------------------------------------------------------------------------

namespace detail {

inline std::string excitation_to_canonical(const ExcitationConfig& cfg) {
    std::ostringstream s;
    s.precision(17);
    s << cfg.ensemble_size << "|" << cfg.horizon << "|" << cfg.dt << "|"
      << cfg.seed << "|" << cfg.tail_tolerance << "|" << cfg.tail_window << "|"
      << cfg.windowed << "|" << cfg.active_fraction << "|"
      << cfg.derivative_of_window << "|";
    for (const auto& f : cfg.effective_families()) {
        s << static_cast<int>(f.kind) << "," << f.amplitude_min << ","
          << f.amplitude_max << "," << f.cutoff_hz << "," << f.freq_min_hz << ","
          << f.freq_max_hz << "," << f.tones << "," << f.steps << ","
          << f.growth_rate << ";";
    }
    s << "|";
    for (double t : cfg.effective_hard_grid()) s << t << ",";
    s << "|";
    for (double e : cfg.perturbation_scales) s << e << ",";
    return s.str();
}

inline std::string excitation_digest(const ExcitationConfig& cfg) {
    const std::string canon = excitation_to_canonical(cfg);
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace detail

inline OrderedJson cloud_to_json(const SrgCloud& cloud) {
    OrderedJson j;
    j["kind"] = srg_kind_name(cloud.kind);
    j["conjugate_symmetric"] = true;
    j["excitation_digest"] = cloud.excitation_digest;
    j["seed"] = cloud.seed;
    OrderedJson stats;
    stats["pairs_tried"] = cloud.stats.pairs_tried;
    stats["pairs_admitted"] = cloud.stats.pairs_admitted;
    OrderedJson rej = OrderedJson::object();
    for (const auto& [cause, count] : cloud.stats.rejections) rej[cause] = count;
    stats["rejections"] = std::move(rej);
    j["stats"] = std::move(stats);
    OrderedJson points = OrderedJson::array();
    for (const auto& p : cloud.points) {
        OrderedJson q;
        const Complex z = p.value();
        q["re"] = z.real();
        q["im"] = z.imag();
        q["kind"] = srg_kind_name(p.kind);
        if (p.horizon_T) {
            q["T"] = *p.horizon_T;
        } else {
            q["T"] = nullptr;
        }
        q["pair_id"] = p.pair_id;
        points.push_back(std::move(q));
    }
    j["points"] = std::move(points);
    return j;
}

inline SrgCloud cloud_from_json(const Json& j, const std::string& where = "cloud") {
    jsonu::check_keys(j, where,
                      {"kind", "conjugate_symmetric", "excitation_digest",
                       "seed", "stats", "points"});
    SrgCloud cloud;
    const std::string kind = jsonu::get_string(j, where, "kind");
    if (kind == "soft") {
        cloud.kind = SrgKind::soft;
    } else if (kind == "hard") {
        cloud.kind = SrgKind::hard;
    } else {
        throw ConfigError(where + "/kind", "expected `soft` or `hard`");
    }
    cloud.excitation_digest = jsonu::get_string_or(j, where, "excitation_digest", "");
    cloud.seed = static_cast<std::uint64_t>(jsonu::get_integer_or(j, where, "seed", 0));
    if (auto it = j.find("stats"); it != j.end()) {
        const std::string sw = where + "/stats";
        jsonu::check_keys(*it, sw, {"pairs_tried", "pairs_admitted", "rejections"});
        cloud.stats.pairs_tried =
            static_cast<int>(jsonu::get_integer_or(*it, sw, "pairs_tried", 0));
        cloud.stats.pairs_admitted =
            static_cast<int>(jsonu::get_integer_or(*it, sw, "pairs_admitted", 0));
        if (auto rj = it->find("rejections"); rj != it->end()) {
            for (const auto& item : rj->items()) {
                cloud.stats.rejections[item.key()] = item.value().get<int>();
            }
        }
    }
    const Json& points = jsonu::require(j, where, "points");
    if (!points.is_array()) throw ConfigError(where + "/points", "expected array");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string pw = where + "/points/" + std::to_string(i);
        const Json& q = points[i];
        jsonu::check_keys(q, pw, {"re", "im", "kind", "T", "pair_id"});
        const double re = jsonu::get_number(q, pw, "re");
        const double im = jsonu::get_number(q, pw, "im");
        SrgPoint p;
        p.magnitude = std::hypot(re, im);
        p.angle = std::atan2(std::abs(im), re);
        p.kind = cloud.kind;
        if (auto t = q.find("T"); t != q.end() && !t->is_null()) {
            p.horizon_T = t->get<double>();
        }
        p.pair_id = static_cast<int>(jsonu::get_integer_or(q, pw, "pair_id", 0));
        if (!(p.magnitude > 0.0)) {
            throw ConfigError(pw, "cloud points must have magnitude > 0");
        }
        cloud.points.push_back(p);
    }
    if (cloud.points.empty()) throw ConfigError(where, "cloud has no points");
    return cloud;
}

inline const char* family_kind_name(SignalFamilyKind k) {
    switch (k) {
        case SignalFamilyKind::filtered_noise: return "filtered_noise";
        case SignalFamilyKind::multisine: return "multisine";
        case SignalFamilyKind::step_mixture: return "step_mixture";
        case SignalFamilyKind::chirp: return "chirp";
        case SignalFamilyKind::exp_growth: return "exp_growth";
    }
    return "?";
}

inline SignalFamily family_from_json(const Json& j, const std::string& where) {
    jsonu::check_keys(j, where,
                      {"kind", "amplitude_min", "amplitude_max", "cutoff_hz",
                       "freq_min_hz", "freq_max_hz", "tones", "steps",
                       "growth_rate"});
    SignalFamily fam;
    const std::string kind = jsonu::get_string(j, where, "kind");
    if (kind == "filtered_noise") {
        fam.kind = SignalFamilyKind::filtered_noise;
    } else if (kind == "multisine") {
        fam.kind = SignalFamilyKind::multisine;
    } else if (kind == "step_mixture") {
        fam.kind = SignalFamilyKind::step_mixture;
    } else if (kind == "chirp") {
        fam.kind = SignalFamilyKind::chirp;
    } else if (kind == "exp_growth") {
        fam.kind = SignalFamilyKind::exp_growth;
    } else {
        throw ConfigError(where + "/kind", "unknown family `" + kind + "`");
    }
    fam.amplitude_min = jsonu::get_number_or(j, where, "amplitude_min", fam.amplitude_min);
    fam.amplitude_max = jsonu::get_number_or(j, where, "amplitude_max", fam.amplitude_max);
    fam.cutoff_hz = jsonu::get_number_or(j, where, "cutoff_hz", fam.cutoff_hz);
    fam.freq_min_hz = jsonu::get_number_or(j, where, "freq_min_hz", fam.freq_min_hz);
    fam.freq_max_hz = jsonu::get_number_or(j, where, "freq_max_hz", fam.freq_max_hz);
    fam.tones = static_cast<int>(jsonu::get_integer_or(j, where, "tones", fam.tones));
    fam.steps = static_cast<int>(jsonu::get_integer_or(j, where, "steps", fam.steps));
    fam.growth_rate = jsonu::get_number_or(j, where, "growth_rate", fam.growth_rate);
    return fam;
}

inline ExcitationConfig excitation_from_json(const Json& j,
                                             const std::string& where = "excitation") {
    jsonu::check_keys(j, where,
                      {"ensemble_size", "horizon", "dt", "seed", "tail_tolerance",
                       "tail_window", "hard_t_grid", "windowed", "active_fraction",
                       "derivative_of_window", "perturbation_scales", "threads",
                       "families"});
    ExcitationConfig cfg;
    cfg.ensemble_size = static_cast<int>(
        jsonu::get_integer_or(j, where, "ensemble_size", cfg.ensemble_size));
    cfg.horizon = jsonu::get_number_or(j, where, "horizon", cfg.horizon);
    cfg.dt = jsonu::get_number_or(j, where, "dt", cfg.dt);
    cfg.seed = static_cast<std::uint64_t>(
        jsonu::get_integer_or(j, where, "seed", static_cast<long long>(cfg.seed)));
    cfg.tail_tolerance =
        jsonu::get_number_or(j, where, "tail_tolerance", cfg.tail_tolerance);
    cfg.tail_window = jsonu::get_number_or(j, where, "tail_window", cfg.tail_window);
    cfg.windowed = jsonu::get_bool_or(j, where, "windowed", cfg.windowed);
    cfg.active_fraction =
        jsonu::get_number_or(j, where, "active_fraction", cfg.active_fraction);
    cfg.derivative_of_window = jsonu::get_bool_or(j, where, "derivative_of_window",
                                                  cfg.derivative_of_window);
    cfg.threads =
        static_cast<int>(jsonu::get_integer_or(j, where, "threads", cfg.threads));
    if (auto it = j.find("hard_t_grid"); it != j.end()) {
        if (!it->is_array()) throw ConfigError(where + "/hard_t_grid", "expected array");
        cfg.hard_t_grid = it->get<std::vector<double>>();
    }
    if (auto it = j.find("perturbation_scales"); it != j.end()) {
        if (!it->is_array()) {
            throw ConfigError(where + "/perturbation_scales", "expected array");
        }
        cfg.perturbation_scales = it->get<std::vector<double>>();
    }
    if (auto it = j.find("families"); it != j.end()) {
        if (!it->is_array()) throw ConfigError(where + "/families", "expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            cfg.families.push_back(family_from_json(
                (*it)[i], where + "/families/" + std::to_string(i)));
        }
    }
    cfg.validate();
    return cfg;
}

inline std::string cloud_to_csv(const SrgCloud& cloud) {
    std::string out = "re,im,kind,T,pair_id\n";
    for (const auto& p : cloud.points) {
        const Complex z = p.value();
        out += detail::format_double(z.real());
        out += ",";
        out += detail::format_double(z.imag());
        out += ",";
        out += srg_kind_name(p.kind);
        out += ",";
        if (p.horizon_T) out += detail::format_double(*p.horizon_T);
        out += ",";
        out += std::to_string(p.pair_id);
        out += "\n";
    }
    return out;
}

}  // namespace srglab
