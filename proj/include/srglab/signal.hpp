#pragma once

// Uniformly sampled multichannel signals and the inner-product / gain /
// phase arithmetic everything else is built on. Integrals are rectangle-rule
// sums scaled by dt so that truncation at sample boundaries is exact.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srglab {

/// Uniformly sampled real signal. Rows are time steps 0..N-1, columns are
/// channels; sample k lives at t = k*dt.
struct SampledSignal {
    double dt = 0.0;
    Eigen::MatrixXd values;  // N x channels

    SampledSignal() = default;
    SampledSignal(double dt_, Eigen::MatrixXd values_)
        : dt(dt_), values(std::move(values_)) {
        validate();
    }

    [[nodiscard]] Eigen::Index samples() const { return values.rows(); }
    [[nodiscard]] Eigen::Index channels() const { return values.cols(); }

    /// Nominal duration N*dt covered by the samples.
    [[nodiscard]] double horizon() const {
        return dt * static_cast<double>(samples());
    }

    void validate() const {
        if (!(dt > 0.0)) {
            throw std::invalid_argument("SampledSignal: dt must be positive");
        }
        if (values.rows() < 1 || values.cols() < 1) {
            throw std::invalid_argument(
                "SampledSignal: need at least one sample and one channel");
        }
        if (!values.allFinite()) {
            throw std::invalid_argument("SampledSignal: values must be finite");
        }
    }

    static SampledSignal zeros(double dt, Eigen::Index samples,
                               Eigen::Index channels) {
        return SampledSignal(dt, Eigen::MatrixXd::Zero(samples, channels));
    }
};

/// Gain/phase of a signal pair. `phase_defined` is false when either signal
/// is zero; the stored phase is then the conventional default 0 so that
/// consumers can filter such points out instead of silently using them.
struct GainPhasePair {
    double gain = 0.0;
    double phase = 0.0;
    bool phase_defined = true;
};

inline bool conformable(const SampledSignal& u, const SampledSignal& v) {
    return u.dt == v.dt && u.samples() == v.samples() &&
           u.channels() == v.channels();
}

inline void require_conformable(const SampledSignal& u, const SampledSignal& v,
                                const char* op) {
    if (!conformable(u, v)) {
        std::ostringstream msg;
        msg << op << ": signals not conformable (dt " << u.dt << " vs " << v.dt
            << ", samples " << u.samples() << " vs " << v.samples()
            << ", channels " << u.channels() << " vs " << v.channels() << ")";
        throw std::invalid_argument(msg.str());
    }
}

/// Rectangle-rule inner product dt * sum_k sum_c u[k,c]*v[k,c].
inline double inner_product(const SampledSignal& u, const SampledSignal& v) {
    require_conformable(u, v, "inner_product");
    return u.dt * u.values.cwiseProduct(v.values).sum();
}

inline double norm(const SampledSignal& u) {
    return std::sqrt(u.dt) * u.values.norm();
}

inline bool is_zero(const SampledSignal& u) { return u.values.isZero(0.0); }

namespace detail {

/// Index of the last sample kept by truncation at time T (floor snap with a
/// small relative guard so T == k*dt lands on k despite rounding).
inline Eigen::Index truncation_index(double T, double dt, Eigen::Index n) {
    if (T < 0.0) {
        throw std::domain_error("truncate: T must be nonnegative");
    }
    const double ratio = T / dt;
    auto k = static_cast<Eigen::Index>(std::floor(ratio + 1e-9 * (ratio + 1.0)));
    if (k >= n) k = n - 1;
    return k;
}

}  // namespace detail

/// Truncation operator: samples at t <= T kept, later samples zeroed. Length
/// is unchanged so truncated signals stay conformable with their originals.
inline SampledSignal truncate(const SampledSignal& u, double T) {
    const Eigen::Index keep = detail::truncation_index(T, u.dt, u.samples()) + 1;
    SampledSignal out = u;
    if (keep < out.samples()) {
        out.values.bottomRows(out.samples() - keep).setZero();
    }
    return out;
}

/// ||v|| / ||u||, or +infinity when u = 0.
inline double gain(const SampledSignal& u, const SampledSignal& v) {
    require_conformable(u, v, "gain");
    const double nu = norm(u);
    if (nu == 0.0) return std::numeric_limits<double>::infinity();
    return norm(v) / nu;
}

/// arccos of the normalized inner product, clamped to [0, pi]. Zero signals
/// yield the default 0 with phase_defined = false on the full pair variant.
inline double phase(const SampledSignal& u, const SampledSignal& v) {
    require_conformable(u, v, "phase");
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double c = inner_product(u, v) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

inline GainPhasePair gain_phase(const SampledSignal& u,
                                const SampledSignal& v) {
    require_conformable(u, v, "gain_phase");
    GainPhasePair out;
    const double nu = norm(u);
    const double nv = norm(v);
    out.gain = nu == 0.0 ? std::numeric_limits<double>::infinity() : nv / nu;
    if (nu == 0.0 || nv == 0.0) {
        out.phase = 0.0;
        out.phase_defined = false;
    } else {
        double c = inner_product(u, v) / (nu * nv);
        out.phase = std::acos(std::clamp(c, -1.0, 1.0));
    }
    return out;
}

/// Gain/phase of the pair truncated at horizon T.
inline GainPhasePair gain_phase_truncated(const SampledSignal& u,
                                          const SampledSignal& v, double T) {
    return gain_phase(truncate(u, T), truncate(v, T));
}

/// Fraction of the signal energy contained in the final `fraction_window`
/// portion of the horizon; 0 for the zero signal.
inline double tail_energy_fraction(const SampledSignal& u,
                                   double fraction_window) {
    if (!(fraction_window > 0.0 && fraction_window < 1.0)) {
        throw std::domain_error(
            "tail_energy_fraction: fraction_window must be in (0,1)");
    }
    const auto n = u.samples();
    auto tail = static_cast<Eigen::Index>(
        std::llround(fraction_window * static_cast<double>(n)));
    tail = std::clamp<Eigen::Index>(tail, 0, n);
    const double total = u.values.squaredNorm();
    if (total == 0.0) return 0.0;
    const double tail_energy = u.values.bottomRows(tail).squaredNorm();
    return tail_energy / total;
}

inline SampledSignal difference(const SampledSignal& a,
                                const SampledSignal& b) {
    require_conformable(a, b, "difference");
    return SampledSignal(a.dt, a.values - b.values);
}

inline SampledSignal scaled(const SampledSignal& a, double factor) {
    return SampledSignal(a.dt, factor * a.values);
}

/// Stack two conformable-in-time signals channel-wise.
inline SampledSignal hstack(const SampledSignal& a, const SampledSignal& b) {
    if (a.dt != b.dt || a.samples() != b.samples()) {
        throw std::invalid_argument("hstack: time bases differ");
    }
    Eigen::MatrixXd m(a.samples(), a.channels() + b.channels());
    m << a.values, b.values;
    return SampledSignal(a.dt, std::move(m));
}

// ---------------------------------------------------------------------------
// CSV interchange: header row `t,ch0,ch1,...`, one row per sample.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline std::string signal_to_csv(const SampledSignal& u) {
    std::string out = "t";
    for (Eigen::Index c = 0; c < u.channels(); ++c) {
        out += ",ch" + std::to_string(c);
    }
    out += "\n";
    for (Eigen::Index k = 0; k < u.samples(); ++k) {
        out += detail::format_double(static_cast<double>(k) * u.dt);
        for (Eigen::Index c = 0; c < u.channels(); ++c) {
            out += ",";
            out += detail::format_double(u.values(k, c));
        }
        out += "\n";
    }
    return out;
}

/// Parse the CSV signal format. The t column must be uniform; it is checked
/// against the inferred (or supplied) dt to 1e-9 relative tolerance.
inline SampledSignal signal_from_csv(std::istream& in,
                                     std::optional<double> expected_dt = {}) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("signal csv: empty input");
    }
    if (line.rfind("t,", 0) != 0) {
        throw std::invalid_argument("signal csv: header must start with `t,`");
    }
    Eigen::Index channels = 0;
    for (char ch : line) {
        if (ch == ',') ++channels;
    }
    std::vector<double> times;
    std::vector<double> data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        Eigen::Index col = 0;
        while (std::getline(row, cell, ',')) {
            double v = 0.0;
            try {
                v = std::stod(cell);
            } catch (const std::exception&) {
                throw std::invalid_argument("signal csv: bad number `" + cell +
                                            "` at row " +
                                            std::to_string(times.size() + 1));
            }
            if (col == 0) {
                times.push_back(v);
            } else {
                data.push_back(v);
            }
            ++col;
        }
        if (col != channels + 1) {
            throw std::invalid_argument("signal csv: row " +
                                        std::to_string(times.size()) +
                                        " has wrong column count");
        }
    }
    const auto n = static_cast<Eigen::Index>(times.size());
    if (n < 1) throw std::invalid_argument("signal csv: no samples");
    double dt = 0.0;
    if (expected_dt) {
        dt = *expected_dt;
    } else if (n >= 2) {
        dt = times[1] - times[0];
    } else {
        throw std::invalid_argument(
            "signal csv: single-sample file needs an explicit dt");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("signal csv: dt must be > 0");
    for (Eigen::Index k = 0; k < n; ++k) {
        const double expect = static_cast<double>(k) * dt;
        const double tol = 1e-9 * std::max(1.0, std::abs(expect));
        if (std::abs(times[static_cast<std::size_t>(k)] - expect) > tol) {
            throw std::invalid_argument(
                "signal csv: t column not uniform at row " + std::to_string(k));
        }
    }
    Eigen::MatrixXd values(n, channels);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index c = 0; c < channels; ++c) {
            values(k, c) = data[static_cast<std::size_t>(k * channels + c)];
        }
    }
    return SampledSignal(dt, std::move(values));
}

inline SampledSignal load_signal_csv(const std::string& path,
                                     std::optional<double> expected_dt = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open signal csv: " + path);
    return signal_from_csv(in, expected_dt);
}

}  // namespace srglab
