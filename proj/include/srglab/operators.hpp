#pragma once

// Causal operator descriptions and their sample-by-sample evaluation.
//
// Dynamic blocks are continuous-time state-space models discretized with a
// zero-order hold. The integrator variant is special-cased as the lossless
// trapezoidal realization x+ = x + dt*u, y = x + (dt/2)*u, whose truncated
// inner product with its input telescopes to (1/2)|x(T+)|^2 exactly; this is
// what makes the sampled hard SRG of the integrator land in the closed right
// half-plane to machine precision instead of drifting O(dt) across the axis.
//
// All variants map the zero signal to the zero signal (zero initial state,
// zero-preserving nonlinearities).

#include "srglab/json_util.hpp"
#include "srglab/signal.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace srglab {

class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, Eigen::Index sample)
        : std::runtime_error(what), sample_(sample) {}
    [[nodiscard]] Eigen::Index sample() const { return sample_; }

private:
    Eigen::Index sample_;
};

// ---------------------------------------------------------------------------
// Static nonlinearities
// ---------------------------------------------------------------------------

enum class NonlinearityKind { tanh_gain, saturation, relu, deadzone, sector };

/// Memoryless map applied elementwise and per sample. Every kind maps 0 to 0.
struct StaticNonlinearity {
    NonlinearityKind kind = NonlinearityKind::relu;
    int dimension = 1;
    double gain = 1.0;       // tanh_gain: x -> tanh(gain*x)
    double limit = 1.0;      // saturation: clamp to [-limit, limit]
    double width = 1.0;      // deadzone half-width
    double slope_min = 1.0;  // sector slope bounds [a, b]
    double slope_max = 1.0;
    int shape = 0;  // sector shape: 0 mean-slope linear, 1 smooth, 2 piecewise

    [[nodiscard]] double apply(double x) const {
        switch (kind) {
            case NonlinearityKind::tanh_gain:
                return std::tanh(gain * x);
            case NonlinearityKind::saturation:
                return std::clamp(x, -limit, limit);
            case NonlinearityKind::relu:
                return x > 0.0 ? x : 0.0;
            case NonlinearityKind::deadzone:
                return x - std::clamp(x, -width, width);
            case NonlinearityKind::sector: {
                const double a = slope_min;
                const double b = slope_max;
                switch (shape) {
                    case 0:
                        return 0.5 * (a + b) * x;
                    case 1:
                        return a * x + (b - a) * std::tanh(x);
                    case 2:
                        if (std::abs(x) <= 1.0) return b * x;
                        return (x > 0.0 ? 1.0 : -1.0) * (b + a * (std::abs(x) - 1.0));
                    default:
                        throw std::invalid_argument(
                            "sector nonlinearity: unknown shape id " +
                            std::to_string(shape));
                }
            }
        }
        throw std::logic_error("unreachable nonlinearity kind");
    }

    void validate() const {
        if (dimension < 1) {
            throw std::invalid_argument("nonlinearity: dimension must be >= 1");
        }
        switch (kind) {
            case NonlinearityKind::tanh_gain:
                if (!(gain > 0.0)) {
                    throw std::invalid_argument("tanh_gain: gain must be > 0");
                }
                break;
            case NonlinearityKind::saturation:
                if (!(limit > 0.0)) {
                    throw std::invalid_argument("saturation: limit must be > 0");
                }
                break;
            case NonlinearityKind::deadzone:
                if (!(width > 0.0)) {
                    throw std::invalid_argument("deadzone: width must be > 0");
                }
                break;
            case NonlinearityKind::sector:
                if (slope_min > slope_max) {
                    throw std::invalid_argument("sector: need slope_min <= slope_max");
                }
                if (shape < 0 || shape > 2) {
                    throw std::invalid_argument("sector: unknown shape id");
                }
                break;
            case NonlinearityKind::relu:
                break;
        }
    }
};

// ---------------------------------------------------------------------------
// Operator spec tree
// ---------------------------------------------------------------------------

class OperatorSpec;

/// Continuous-time state space dx = A x + B u, y = C x + D u.
struct LtiParams {
    Eigen::MatrixXd a, b, c, d;
};

struct IntegratorParams {
    int dimension = 1;
};

struct SeriesParams {
    std::vector<OperatorSpec> stages;  // applied first-to-last
};

struct ParallelSumParams {
    std::vector<OperatorSpec> terms;
};

struct ScaleParams {
    double factor = 1.0;
    std::vector<OperatorSpec> inner;  // exactly one; vector keeps type complete
};

struct NegateParams {
    std::vector<OperatorSpec> inner;  // exactly one
};

struct OperatorNode;

/// Immutable declarative description of a causal square system.
class OperatorSpec {
public:
    OperatorSpec() = default;

    static OperatorSpec lti_state_space(Eigen::MatrixXd a, Eigen::MatrixXd b,
                                        Eigen::MatrixXd c, Eigen::MatrixXd d);
    static OperatorSpec static_nonlinearity(StaticNonlinearity nl);
    static OperatorSpec integrator(int dimension);
    static OperatorSpec series(std::vector<OperatorSpec> stages);
    static OperatorSpec parallel_sum(std::vector<OperatorSpec> terms);
    static OperatorSpec scale(double factor, OperatorSpec inner);
    static OperatorSpec negate(OperatorSpec inner);

    [[nodiscard]] int io_dimension() const;
    [[nodiscard]] const OperatorNode& node() const {
        if (!node_) throw std::logic_error("empty OperatorSpec");
        return *node_;
    }
    [[nodiscard]] bool valid() const { return node_ != nullptr; }

private:
    explicit OperatorSpec(std::shared_ptr<const OperatorNode> node)
        : node_(std::move(node)) {}
    std::shared_ptr<const OperatorNode> node_;
};

struct OperatorNode {
    std::variant<LtiParams, StaticNonlinearity, IntegratorParams, SeriesParams,
                 ParallelSumParams, ScaleParams, NegateParams>
        payload;
    int io_dim = 0;
};

inline int OperatorSpec::io_dimension() const { return node().io_dim; }

inline OperatorSpec OperatorSpec::lti_state_space(Eigen::MatrixXd a,
                                                  Eigen::MatrixXd b,
                                                  Eigen::MatrixXd c,
                                                  Eigen::MatrixXd d) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("lti_state_space: A must be square");
    }
    const Eigen::Index nx = a.rows();
    const Eigen::Index nio = d.rows();
    if (d.cols() != nio) {
        throw std::invalid_argument("lti_state_space: D must be square (square system)");
    }
    if (b.rows() != nx || b.cols() != nio || c.rows() != nio || c.cols() != nx) {
        throw std::invalid_argument("lti_state_space: inconsistent matrix dimensions");
    }
    if (!a.allFinite() || !b.allFinite() || !c.allFinite() || !d.allFinite()) {
        throw std::invalid_argument("lti_state_space: matrices must be finite");
    }
    auto node = std::make_shared<OperatorNode>();
    node->payload = LtiParams{std::move(a), std::move(b), std::move(c), std::move(d)};
    node->io_dim = static_cast<int>(nio);
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::static_nonlinearity(StaticNonlinearity nl) {
    nl.validate();
    auto node = std::make_shared<OperatorNode>();
    node->io_dim = nl.dimension;
    node->payload = std::move(nl);
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::integrator(int dimension) {
    if (dimension < 1) {
        throw std::invalid_argument("integrator: dimension must be >= 1");
    }
    auto node = std::make_shared<OperatorNode>();
    node->payload = IntegratorParams{dimension};
    node->io_dim = dimension;
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::series(std::vector<OperatorSpec> stages) {
    if (stages.empty()) throw std::invalid_argument("series: no stages");
    const int dim = stages.front().io_dimension();
    for (const auto& s : stages) {
        if (s.io_dimension() != dim) {
            throw std::invalid_argument("series: stage io dimensions differ");
        }
    }
    auto node = std::make_shared<OperatorNode>();
    node->payload = SeriesParams{std::move(stages)};
    node->io_dim = dim;
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::parallel_sum(std::vector<OperatorSpec> terms) {
    if (terms.empty()) throw std::invalid_argument("parallel_sum: no terms");
    const int dim = terms.front().io_dimension();
    for (const auto& t : terms) {
        if (t.io_dimension() != dim) {
            throw std::invalid_argument("parallel_sum: term io dimensions differ");
        }
    }
    auto node = std::make_shared<OperatorNode>();
    node->payload = ParallelSumParams{std::move(terms)};
    node->io_dim = dim;
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::scale(double factor, OperatorSpec inner) {
    if (!std::isfinite(factor)) {
        throw std::invalid_argument("scale: factor must be finite");
    }
    auto node = std::make_shared<OperatorNode>();
    node->io_dim = inner.io_dimension();
    node->payload = ScaleParams{factor, {std::move(inner)}};
    return OperatorSpec(std::move(node));
}

inline OperatorSpec OperatorSpec::negate(OperatorSpec inner) {
    auto node = std::make_shared<OperatorNode>();
    node->io_dim = inner.io_dimension();
    node->payload = NegateParams{{std::move(inner)}};
    return OperatorSpec(std::move(node));
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

struct DiscreteLti {
    Eigen::MatrixXd ad, bd;
};

/// Zero-order hold: matrix exponential of the augmented [[A,B],[0,0]] block.
inline DiscreteLti discretize_lti(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b, double dt) {
    if (a.rows() != a.cols()) throw std::invalid_argument("discretize_lti: A not square");
    if (b.rows() != a.rows()) throw std::invalid_argument("discretize_lti: B rows != A rows");
    if (!(dt > 0.0)) throw std::invalid_argument("discretize_lti: dt must be > 0");
    const Eigen::Index nx = a.rows();
    const Eigen::Index nu = b.cols();
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(nx + nu, nx + nu);
    block.topLeftCorner(nx, nx) = a * dt;
    block.topRightCorner(nx, nu) = b * dt;
    Eigen::MatrixXd e = block.exp();
    if (!e.allFinite()) {
        throw std::runtime_error("discretize_lti: matrix exponential overflow");
    }
    return DiscreteLti{e.topLeftCorner(nx, nx), e.topRightCorner(nx, nu)};
}

// ---------------------------------------------------------------------------
// Steppers: one-sample-at-a-time evaluation with explicit state
// ---------------------------------------------------------------------------

/// Causal evaluator advanced one sample at a time. `output` is a pure
/// function of (current state, candidate input); `advance` commits the input
/// and moves to the next step. The split is what lets the feedback solver
/// iterate on an algebraic loop without double-stepping state.
class Stepper {
public:
    virtual ~Stepper() = default;
    [[nodiscard]] virtual Eigen::VectorXd output(const Eigen::VectorXd& u) const = 0;
    virtual void advance(const Eigen::VectorXd& u) = 0;
};

namespace detail {

class LtiStepper final : public Stepper {
public:
    LtiStepper(const LtiParams& p, double dt)
        : c_(p.c), d_(p.d), x_(Eigen::VectorXd::Zero(p.a.rows())) {
        auto disc = discretize_lti(p.a, p.b, dt);
        ad_ = std::move(disc.ad);
        bd_ = std::move(disc.bd);
    }
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        return c_ * x_ + d_ * u;
    }
    void advance(const Eigen::VectorXd& u) override { x_ = ad_ * x_ + bd_ * u; }

private:
    Eigen::MatrixXd ad_, bd_, c_, d_;
    Eigen::VectorXd x_;
};

class IntegratorStepper final : public Stepper {
public:
    IntegratorStepper(int dim, double dt)
        : dt_(dt), x_(Eigen::VectorXd::Zero(dim)) {}
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        return x_ + 0.5 * dt_ * u;
    }
    void advance(const Eigen::VectorXd& u) override { x_ += dt_ * u; }

private:
    double dt_;
    Eigen::VectorXd x_;
};

class StaticStepper final : public Stepper {
public:
    explicit StaticStepper(StaticNonlinearity nl) : nl_(std::move(nl)) {}
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        Eigen::VectorXd y(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i) y(i) = nl_.apply(u(i));
        return y;
    }
    void advance(const Eigen::VectorXd&) override {}

private:
    StaticNonlinearity nl_;
};

class SeriesStepper final : public Stepper {
public:
    explicit SeriesStepper(std::vector<std::unique_ptr<Stepper>> stages)
        : stages_(std::move(stages)) {}
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        Eigen::VectorXd v = u;
        for (const auto& s : stages_) v = s->output(v);
        return v;
    }
    void advance(const Eigen::VectorXd& u) override {
        Eigen::VectorXd v = u;
        for (auto& s : stages_) {
            Eigen::VectorXd next = s->output(v);
            s->advance(v);
            v = std::move(next);
        }
    }

private:
    std::vector<std::unique_ptr<Stepper>> stages_;
};

class ParallelSumStepper final : public Stepper {
public:
    explicit ParallelSumStepper(std::vector<std::unique_ptr<Stepper>> terms)
        : terms_(std::move(terms)) {}
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(u.size());
        for (const auto& t : terms_) y += t->output(u);
        return y;
    }
    void advance(const Eigen::VectorXd& u) override {
        for (auto& t : terms_) t->advance(u);
    }

private:
    std::vector<std::unique_ptr<Stepper>> terms_;
};

class ScaleStepper final : public Stepper {
public:
    ScaleStepper(double factor, std::unique_ptr<Stepper> inner)
        : factor_(factor), inner_(std::move(inner)) {}
    [[nodiscard]] Eigen::VectorXd output(const Eigen::VectorXd& u) const override {
        return factor_ * inner_->output(u);
    }
    void advance(const Eigen::VectorXd& u) override { inner_->advance(u); }

private:
    double factor_;
    std::unique_ptr<Stepper> inner_;
};

}  // namespace detail

inline std::unique_ptr<Stepper> make_stepper(const OperatorSpec& spec, double dt) {
    const OperatorNode& n = spec.node();
    if (const auto* lti = std::get_if<LtiParams>(&n.payload)) {
        return std::make_unique<detail::LtiStepper>(*lti, dt);
    }
    if (const auto* nl = std::get_if<StaticNonlinearity>(&n.payload)) {
        return std::make_unique<detail::StaticStepper>(*nl);
    }
    if (const auto* integ = std::get_if<IntegratorParams>(&n.payload)) {
        return std::make_unique<detail::IntegratorStepper>(integ->dimension, dt);
    }
    if (const auto* ser = std::get_if<SeriesParams>(&n.payload)) {
        std::vector<std::unique_ptr<Stepper>> stages;
        stages.reserve(ser->stages.size());
        for (const auto& s : ser->stages) stages.push_back(make_stepper(s, dt));
        return std::make_unique<detail::SeriesStepper>(std::move(stages));
    }
    if (const auto* par = std::get_if<ParallelSumParams>(&n.payload)) {
        std::vector<std::unique_ptr<Stepper>> terms;
        terms.reserve(par->terms.size());
        for (const auto& t : par->terms) terms.push_back(make_stepper(t, dt));
        return std::make_unique<detail::ParallelSumStepper>(std::move(terms));
    }
    if (const auto* sc = std::get_if<ScaleParams>(&n.payload)) {
        return std::make_unique<detail::ScaleStepper>(
            sc->factor, make_stepper(sc->inner.front(), dt));
    }
    const auto& neg = std::get<NegateParams>(n.payload);
    return std::make_unique<detail::ScaleStepper>(
        -1.0, make_stepper(neg.inner.front(), dt));
}

// ---------------------------------------------------------------------------
// Evaluation and structural probes
// ---------------------------------------------------------------------------

inline SampledSignal evaluate(const OperatorSpec& spec, const SampledSignal& u) {
    if (u.channels() != spec.io_dimension()) {
        throw std::invalid_argument(
            "evaluate: input has " + std::to_string(u.channels()) +
            " channels, operator expects " + std::to_string(spec.io_dimension()));
    }
    auto stepper = make_stepper(spec, u.dt);
    Eigen::MatrixXd y(u.samples(), u.channels());
    for (Eigen::Index k = 0; k < u.samples(); ++k) {
        const Eigen::VectorXd uk = u.values.row(k).transpose();
        Eigen::VectorXd yk = stepper->output(uk);
        if (!yk.allFinite()) {
            throw EvaluationError(
                "evaluate: non-finite output at sample " + std::to_string(k), k);
        }
        y.row(k) = yk.transpose();
        stepper->advance(uk);
    }
    return SampledSignal(u.dt, std::move(y));
}

/// True iff output sample k can depend on input sample k.
inline bool has_direct_feedthrough(const OperatorSpec& spec) {
    const OperatorNode& n = spec.node();
    if (const auto* lti = std::get_if<LtiParams>(&n.payload)) {
        return !lti->d.isZero(0.0);
    }
    if (std::holds_alternative<StaticNonlinearity>(n.payload)) return true;
    if (std::holds_alternative<IntegratorParams>(n.payload)) {
        return true;  // trapezoidal realization has the (dt/2)*u term
    }
    if (const auto* ser = std::get_if<SeriesParams>(&n.payload)) {
        for (const auto& s : ser->stages) {
            if (!has_direct_feedthrough(s)) return false;
        }
        return true;
    }
    if (const auto* par = std::get_if<ParallelSumParams>(&n.payload)) {
        for (const auto& t : par->terms) {
            if (has_direct_feedthrough(t)) return true;
        }
        return false;
    }
    if (const auto* sc = std::get_if<ScaleParams>(&n.payload)) {
        return sc->factor != 0.0 && has_direct_feedthrough(sc->inner.front());
    }
    return has_direct_feedthrough(std::get<NegateParams>(n.payload).inner.front());
}

struct CausalityReport {
    double max_violation = 0.0;
    bool pass = false;
    int trials = 0;
};

/// Empirical check of the truncation identity Gamma_T P = Gamma_T P Gamma_T
/// on random inputs and horizons. Takes a generic evaluator so that test
/// doubles (e.g. an acausal shift) can be probed too.
inline CausalityReport check_causality(
    const std::function<SampledSignal(const SampledSignal&)>& op, int io_dim,
    double dt, Eigen::Index samples, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_causality: trials >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, dt * static_cast<double>(samples));
    CausalityReport report;
    report.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXd m(samples, io_dim);
        for (Eigen::Index k = 0; k < samples; ++k) {
            for (int c = 0; c < io_dim; ++c) m(k, c) = gauss(rng);
        }
        SampledSignal u(dt, std::move(m));
        const double T = uni(rng);
        const SampledSignal lhs = truncate(op(u), T);
        const SampledSignal rhs = truncate(op(truncate(u, T)), T);
        report.max_violation =
            std::max(report.max_violation, norm(difference(lhs, rhs)));
    }
    report.pass = report.max_violation <= 1e-9;
    return report;
}

inline CausalityReport check_causality(const OperatorSpec& spec, int trials,
                                       std::uint64_t seed, double dt = 0.01,
                                       Eigen::Index samples = 200) {
    return check_causality(
        [&spec](const SampledSignal& u) { return evaluate(spec, u); },
        spec.io_dimension(), dt, samples, trials, seed);
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

namespace detail {

inline Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    }
    j["data"] = data;
    return j;
}

inline Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& where) {
    jsonu::check_keys(j, where, {"rows", "cols", "data"});
    const auto rows = jsonu::get_integer(j, where, "rows");
    const auto cols = jsonu::get_integer(j, where, "cols");
    if (rows < 1 || cols < 1) throw ConfigError(where, "matrix dims must be >= 1");
    const Json& data = jsonu::require(j, where, "data");
    if (!data.is_array() ||
        data.size() != static_cast<std::size_t>(rows * cols)) {
        throw ConfigError(where + "/data", "expected rows*cols numbers (row-major)");
    }
    Eigen::MatrixXd m(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c, ++i) {
            if (!data[i].is_number()) throw ConfigError(where + "/data", "expected number");
            m(r, c) = data[i].get<double>();
        }
    }
    return m;
}

inline const char* nonlinearity_name(NonlinearityKind k) {
    switch (k) {
        case NonlinearityKind::tanh_gain: return "tanh_gain";
        case NonlinearityKind::saturation: return "saturation";
        case NonlinearityKind::relu: return "relu";
        case NonlinearityKind::deadzone: return "deadzone";
        case NonlinearityKind::sector: return "sector";
    }
    return "?";
}

}  // namespace detail

inline Json operator_to_json(const OperatorSpec& spec);

namespace detail {

inline Json nonlinearity_to_json(const StaticNonlinearity& nl) {
    Json p;
    p["kind"] = nonlinearity_name(nl.kind);
    p["dimension"] = nl.dimension;
    switch (nl.kind) {
        case NonlinearityKind::tanh_gain: p["gain"] = nl.gain; break;
        case NonlinearityKind::saturation: p["limit"] = nl.limit; break;
        case NonlinearityKind::deadzone: p["width"] = nl.width; break;
        case NonlinearityKind::sector:
            p["slope_min"] = nl.slope_min;
            p["slope_max"] = nl.slope_max;
            p["shape"] = nl.shape;
            break;
        case NonlinearityKind::relu: break;
    }
    return p;
}

}  // namespace detail

inline Json operator_to_json(const OperatorSpec& spec) {
    const OperatorNode& n = spec.node();
    Json j;
    Json p;
    if (const auto* lti = std::get_if<LtiParams>(&n.payload)) {
        j["variant"] = "lti_state_space";
        p["a"] = detail::matrix_to_json(lti->a);
        p["b"] = detail::matrix_to_json(lti->b);
        p["c"] = detail::matrix_to_json(lti->c);
        p["d"] = detail::matrix_to_json(lti->d);
    } else if (const auto* nl = std::get_if<StaticNonlinearity>(&n.payload)) {
        j["variant"] = "static_nonlinearity";
        p = detail::nonlinearity_to_json(*nl);
    } else if (const auto* integ = std::get_if<IntegratorParams>(&n.payload)) {
        j["variant"] = "integrator";
        p["dimension"] = integ->dimension;
    } else if (const auto* ser = std::get_if<SeriesParams>(&n.payload)) {
        j["variant"] = "series";
        Json stages = Json::array();
        for (const auto& s : ser->stages) stages.push_back(operator_to_json(s));
        p["stages"] = std::move(stages);
    } else if (const auto* par = std::get_if<ParallelSumParams>(&n.payload)) {
        j["variant"] = "parallel_sum";
        Json terms = Json::array();
        for (const auto& t : par->terms) terms.push_back(operator_to_json(t));
        p["terms"] = std::move(terms);
    } else if (const auto* sc = std::get_if<ScaleParams>(&n.payload)) {
        j["variant"] = "scale";
        p["factor"] = sc->factor;
        p["inner"] = operator_to_json(sc->inner.front());
    } else {
        const auto& neg = std::get<NegateParams>(n.payload);
        j["variant"] = "negate";
        p["inner"] = operator_to_json(neg.inner.front());
    }
    j["params"] = std::move(p);
    return j;
}

inline OperatorSpec operator_from_json(const Json& j,
                                       const std::string& where = "operator") {
    jsonu::check_keys(j, where, {"variant", "params"});
    const std::string variant = jsonu::get_string(j, where, "variant");
    const Json& p = jsonu::require(j, where, "params");
    const std::string pw = where + "/params";
    if (variant == "lti_state_space") {
        jsonu::check_keys(p, pw, {"a", "b", "c", "d"});
        return OperatorSpec::lti_state_space(
            detail::matrix_from_json(jsonu::require(p, pw, "a"), pw + "/a"),
            detail::matrix_from_json(jsonu::require(p, pw, "b"), pw + "/b"),
            detail::matrix_from_json(jsonu::require(p, pw, "c"), pw + "/c"),
            detail::matrix_from_json(jsonu::require(p, pw, "d"), pw + "/d"));
    }
    if (variant == "static_nonlinearity") {
        jsonu::check_keys(p, pw,
                          {"kind", "dimension", "gain", "limit", "width",
                           "slope_min", "slope_max", "shape"});
        const std::string kind = jsonu::get_string(p, pw, "kind");
        StaticNonlinearity nl;
        nl.dimension = static_cast<int>(jsonu::get_integer_or(p, pw, "dimension", 1));
        if (kind == "tanh_gain") {
            nl.kind = NonlinearityKind::tanh_gain;
            nl.gain = jsonu::get_number_or(p, pw, "gain", 1.0);
        } else if (kind == "saturation") {
            nl.kind = NonlinearityKind::saturation;
            nl.limit = jsonu::get_number_or(p, pw, "limit", 1.0);
        } else if (kind == "relu") {
            nl.kind = NonlinearityKind::relu;
        } else if (kind == "deadzone") {
            nl.kind = NonlinearityKind::deadzone;
            nl.width = jsonu::get_number_or(p, pw, "width", 1.0);
        } else if (kind == "sector") {
            nl.kind = NonlinearityKind::sector;
            nl.slope_min = jsonu::get_number(p, pw, "slope_min");
            nl.slope_max = jsonu::get_number(p, pw, "slope_max");
            nl.shape = static_cast<int>(jsonu::get_integer_or(p, pw, "shape", 0));
        } else {
            throw ConfigError(pw + "/kind", "unknown nonlinearity `" + kind + "`");
        }
        return OperatorSpec::static_nonlinearity(nl);
    }
    if (variant == "integrator") {
        jsonu::check_keys(p, pw, {"dimension"});
        return OperatorSpec::integrator(
            static_cast<int>(jsonu::get_integer(p, pw, "dimension")));
    }
    if (variant == "series" || variant == "parallel_sum") {
        const char* key = variant == "series" ? "stages" : "terms";
        jsonu::check_keys(p, pw, {key});
        const Json& list = jsonu::require(p, pw, key);
        if (!list.is_array() || list.empty()) {
            throw ConfigError(pw, std::string("expected nonempty array `") + key + "`");
        }
        std::vector<OperatorSpec> children;
        for (std::size_t i = 0; i < list.size(); ++i) {
            children.push_back(operator_from_json(
                list[i], pw + "/" + key + "/" + std::to_string(i)));
        }
        return variant == "series" ? OperatorSpec::series(std::move(children))
                                   : OperatorSpec::parallel_sum(std::move(children));
    }
    if (variant == "scale") {
        jsonu::check_keys(p, pw, {"factor", "inner"});
        return OperatorSpec::scale(
            jsonu::get_number(p, pw, "factor"),
            operator_from_json(jsonu::require(p, pw, "inner"), pw + "/inner"));
    }
    if (variant == "negate") {
        jsonu::check_keys(p, pw, {"inner"});
        return OperatorSpec::negate(
            operator_from_json(jsonu::require(p, pw, "inner"), pw + "/inner"));
    }
    throw ConfigError(where + "/variant", "unknown variant `" + variant + "`");
}

}  // namespace srglab
