#pragma once

// Feedback-stability certificates by SRG separation on the complex plane:
// hard separation, soft separation with a tau-homotopy sweep, and the
// passivity-corollary path through the sector disk D.
//
// Separation of sampled clouds is evidence-grade (clouds are inner
// approximations of the true SRG); separation of valid over-approximating
// regions is the sound path. Certificates record which one they are and
// never report `certified` with an unchecked or violated premise.

#include "srglab/json_util.hpp"
#include "srglab/operators.hpp"
#include "srglab/regions.hpp"
#include "srglab/srg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace srglab {

enum class Verdict { certified, not_certified, indeterminate };
enum class TheoremKind { hard_separation, soft_separation, passivity_corollary };
enum class MarginKind { sm_e, sm };
enum class EvidenceKind { analytic_regions, sampled_clouds, mixed };
enum class AssumptionStatus { satisfied, asserted_by_user, violated, unchecked };
enum class ContinuumStatus { not_applicable, covered, not_covered, indeterminate };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::not_certified: return "not_certified";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

inline const char* theorem_name(TheoremKind t) {
    switch (t) {
        case TheoremKind::hard_separation: return "hard_separation";
        case TheoremKind::soft_separation: return "soft_separation";
        case TheoremKind::passivity_corollary: return "passivity_corollary";
    }
    return "?";
}

inline const char* assumption_status_name(AssumptionStatus s) {
    switch (s) {
        case AssumptionStatus::satisfied: return "satisfied";
        case AssumptionStatus::asserted_by_user: return "asserted_by_user";
        case AssumptionStatus::violated: return "violated";
        case AssumptionStatus::unchecked: return "unchecked";
    }
    return "?";
}

struct AssumptionItem {
    std::string name;
    std::string required_by;
    AssumptionStatus status = AssumptionStatus::unchecked;
    std::string note;
};

/// Premise bookkeeping. Every theorem's premises appear explicitly; nothing
/// defaults to satisfied silently (d2 = 0 is marked satisfied structurally
/// because the solver and the certificates are built for that wiring only,
/// and the item says so).
struct AssumptionChecklist {
    std::vector<AssumptionItem> items;

    static AssumptionChecklist for_hard() {
        AssumptionChecklist c;
        c.items.push_back({"well_posedness", "hard_separation",
                           AssumptionStatus::unchecked, ""});
        c.items.push_back(
            {"p_stable", "hard_separation", AssumptionStatus::unchecked, ""});
        c.items.push_back({"d2_zero", "hard_separation",
                           AssumptionStatus::satisfied,
                           "structural: certificates cover the d2 = 0 wiring only"});
        return c;
    }

    static AssumptionChecklist for_soft() {
        AssumptionChecklist c;
        c.items.push_back({"well_posedness", "soft_separation",
                           AssumptionStatus::unchecked, ""});
        c.items.push_back(
            {"p_stable", "soft_separation", AssumptionStatus::unchecked, ""});
        c.items.push_back(
            {"c_stable", "soft_separation", AssumptionStatus::unchecked, ""});
        c.items.push_back({"tau_well_posedness", "soft_separation",
                           AssumptionStatus::unchecked, ""});
        c.items.push_back({"d2_zero", "soft_separation",
                           AssumptionStatus::satisfied,
                           "structural: certificates cover the d2 = 0 wiring only"});
        return c;
    }

    void set(const std::string& name, AssumptionStatus status,
             const std::string& note = "") {
        for (auto& item : items) {
            if (item.name == name) {
                item.status = status;
                if (!note.empty()) item.note = note;
                return;
            }
        }
        throw std::invalid_argument("checklist: unknown assumption `" + name + "`");
    }

    [[nodiscard]] const AssumptionItem* find(const std::string& name) const {
        for (const auto& item : items) {
            if (item.name == name) return &item;
        }
        return nullptr;
    }

    [[nodiscard]] bool all_acceptable() const {
        return std::all_of(items.begin(), items.end(), [](const AssumptionItem& i) {
            return i.status == AssumptionStatus::satisfied ||
                   i.status == AssumptionStatus::asserted_by_user;
        });
    }

    [[nodiscard]] bool any_violated() const {
        return std::any_of(items.begin(), items.end(), [](const AssumptionItem& i) {
            return i.status == AssumptionStatus::violated;
        });
    }
};

using Evidence = std::variant<Region, SrgCloud>;

struct Witnesses {
    Complex z1;
    Complex z2;
};

struct Certificate {
    Verdict verdict = Verdict::indeterminate;
    TheoremKind theorem = TheoremKind::hard_separation;
    double margin = 0.0;
    MarginKind margin_kind = MarginKind::sm_e;
    double margin_floor = 1e-6;
    EvidenceKind evidence_kind = EvidenceKind::analytic_regions;
    std::vector<double> tau_grid;     // soft certificates
    std::vector<double> tau_margins;  // margin at each grid tau
    ContinuumStatus continuum = ContinuumStatus::not_applicable;
    AssumptionChecklist assumptions;
    Witnesses witnesses;
    std::vector<std::string> caveats;
};

inline constexpr double kDefaultMarginFloor = 1e-6;

// ---------------------------------------------------------------------------
// Margin computation over mixed evidence
// ---------------------------------------------------------------------------

namespace detail {

struct MarginOutcome {
    double value = 0.0;
    Complex z1;
    Complex z2;
    bool indeterminate = false;
    std::string note;
};

inline MarginOutcome evidence_margin(const Evidence& a, const Evidence& b) {
    MarginOutcome out;
    if (std::holds_alternative<Region>(a) && std::holds_alternative<Region>(b)) {
        try {
            const DistanceResult d =
                region_distance(std::get<Region>(a), std::get<Region>(b));
            out.value = d.value;
            out.z1 = d.witness_a;
            out.z2 = d.witness_b;
        } catch (const IndeterminateDistanceError& err) {
            out.indeterminate = true;
            out.note = err.what();
        }
        return out;
    }
    if (std::holds_alternative<SrgCloud>(a) && std::holds_alternative<SrgCloud>(b)) {
        const CloudDistance d = cloud_min_distance_witness(std::get<SrgCloud>(a),
                                                           std::get<SrgCloud>(b));
        out.value = d.value;
        out.z1 = d.z1;
        out.z2 = d.z2;
        return out;
    }
    const bool cloud_first = std::holds_alternative<SrgCloud>(a);
    const SrgCloud& cloud = std::get<SrgCloud>(cloud_first ? a : b);
    const Region& region = std::get<Region>(cloud_first ? b : a);
    double best = std::numeric_limits<double>::infinity();
    Complex zc, zr;
    for (const auto& p : cloud.points) {
        const Complex z = p.value();
        const PointDistance d = point_to_region(region, z);
        if (d.value < best) {
            best = d.value;
            zc = z;
            zr = d.nearest;
        }
    }
    out.value = best;
    out.z1 = cloud_first ? zc : zr;
    out.z2 = cloud_first ? zr : zc;
    return out;
}

inline EvidenceKind classify_evidence(const Evidence& a, const Evidence& b) {
    const bool ra = std::holds_alternative<Region>(a);
    const bool rb = std::holds_alternative<Region>(b);
    if (ra && rb) return EvidenceKind::analytic_regions;
    if (!ra && !rb) return EvidenceKind::sampled_clouds;
    return EvidenceKind::mixed;
}

inline void require_cloud_kind(const Evidence& e, SrgKind kind, const char* who) {
    if (const auto* cloud = std::get_if<SrgCloud>(&e)) {
        if (cloud->kind != kind) {
            throw std::invalid_argument(
                std::string(who) + ": evidence cloud has kind `" +
                srg_kind_name(cloud->kind) + "`, expected `" +
                srg_kind_name(kind) + "`");
        }
    }
}

inline void attach_evidence_caveats(Certificate& cert) {
    if (cert.evidence_kind == EvidenceKind::sampled_clouds) {
        cert.caveats.push_back(
            "inner-approximation evidence: sampled clouds under-approximate "
            "the true SRG; cloud separation alone does not verify the "
            "theorem hypothesis");
    } else if (cert.evidence_kind == EvidenceKind::mixed) {
        cert.caveats.push_back(
            "inner-approximation evidence on the cloud side; region side is "
            "sound only if the region over-approximates the true SRG");
    }
    for (const auto& item : cert.assumptions.items) {
        if (item.status == AssumptionStatus::asserted_by_user) {
            cert.caveats.push_back("assumption asserted by user: " + item.name);
        }
    }
}

inline std::optional<double> evidence_modulus_bound(const Evidence& e) {
    if (const auto* region = std::get_if<Region>(&e)) {
        return region->bounding_radius();
    }
    const auto& cloud = std::get<SrgCloud>(e);
    double m = 0.0;
    for (const auto& p : cloud.points) m = std::max(m, p.magnitude);
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hard separation
// ---------------------------------------------------------------------------

/// Hard SRG separation: evidence for SRG_e(P) against evidence for the
/// inverse SRG of C. Certified iff the distance exceeds the margin floor and
/// every premise is satisfied or asserted.
inline Certificate certify_hard(const Evidence& srg_p,
                                const Evidence& inv_srg_c,
                                AssumptionChecklist checklist,
                                double margin_floor = kDefaultMarginFloor) {
    detail::require_cloud_kind(srg_p, SrgKind::hard, "certify_hard");
    detail::require_cloud_kind(inv_srg_c, SrgKind::hard, "certify_hard");
    Certificate cert;
    cert.theorem = TheoremKind::hard_separation;
    cert.margin_kind = MarginKind::sm_e;
    cert.margin_floor = margin_floor;
    cert.evidence_kind = detail::classify_evidence(srg_p, inv_srg_c);
    cert.assumptions = std::move(checklist);

    const detail::MarginOutcome m = detail::evidence_margin(srg_p, inv_srg_c);
    if (m.indeterminate) {
        cert.verdict = Verdict::indeterminate;
        cert.caveats.push_back("separation distance indeterminate: " + m.note);
        detail::attach_evidence_caveats(cert);
        return cert;
    }
    cert.margin = m.value;
    cert.witnesses = {m.z1, m.z2};
    const bool separated = cert.margin > margin_floor;
    if (cert.assumptions.any_violated() || !cert.assumptions.all_acceptable()) {
        cert.verdict = Verdict::not_certified;
        if (separated) {
            const auto* p_stable = cert.assumptions.find("p_stable");
            if (p_stable && p_stable->status != AssumptionStatus::satisfied &&
                p_stable->status != AssumptionStatus::asserted_by_user) {
                cert.caveats.push_back(
                    "one-sided stability: with hard separation but without "
                    "the P-stable premise, the maps d1 -> u1 and d1 -> y2 "
                    "are still stable");
            }
        }
    } else {
        cert.verdict = separated ? Verdict::certified : Verdict::not_certified;
    }
    detail::attach_evidence_caveats(cert);
    return cert;
}

// ---------------------------------------------------------------------------
// Soft separation with tau homotopy
// ---------------------------------------------------------------------------

/// Appendix step bound mu = 1/(c0*||C||_inc): stability propagates from tau
/// to tau + nu for |nu| < mu, which justifies grid spacings below mu.
inline double homotopy_step_bound(double c0, double inc_gain_c) {
    if (!(c0 > 0.0)) throw std::domain_error("homotopy_step_bound: c0 must be > 0");
    if (!(inc_gain_c > 0.0)) {
        throw std::domain_error("homotopy_step_bound: incremental gain must be > 0");
    }
    return 1.0 / (c0 * inc_gain_c);
}

inline double max_tau_gap(const std::vector<double>& grid) {
    double gap = grid.empty() ? 0.0 : grid.front();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        gap = std::max(gap, grid[i] - grid[i - 1]);
    }
    return gap;
}

inline bool tau_grid_spacing_ok(const std::vector<double>& grid, double mu) {
    return max_tau_gap(grid) < mu;
}

/// Soft SRG separation over a tau grid in (0,1]. The inverse evidence for C
/// is scaled by 1/tau at each grid point (SRG_dagger(tau C) =
/// (1/tau) SRG_dagger(C)); sampling noise never enters the sweep. With
/// bounded inverse evidence the certificate additionally reports whether the
/// grid margins dominate the inter-grid variation bound
/// (1/tau1 - 1/tau2)*M, upgrading the grid verdict to continuum-covering.
inline Certificate certify_soft(const Evidence& srg_p,
                                const Evidence& inv_srg_c_base,
                                std::vector<double> tau_grid,
                                AssumptionChecklist checklist,
                                double margin_floor = kDefaultMarginFloor) {
    if (tau_grid.empty()) {
        throw ConfigError("tau_grid", "must be nonempty");
    }
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end())) {
        throw ConfigError("tau_grid", "must be sorted ascending");
    }
    if (!(tau_grid.front() > 0.0) || tau_grid.back() > 1.0) {
        throw ConfigError("tau_grid", "values must lie in (0, 1]");
    }
    if (std::find(tau_grid.begin(), tau_grid.end(), 1.0) == tau_grid.end()) {
        throw ConfigError("tau_grid", "must contain tau = 1");
    }
    detail::require_cloud_kind(srg_p, SrgKind::soft, "certify_soft");
    detail::require_cloud_kind(inv_srg_c_base, SrgKind::soft, "certify_soft");

    Certificate cert;
    cert.theorem = TheoremKind::soft_separation;
    cert.margin_kind = MarginKind::sm;
    cert.margin_floor = margin_floor;
    cert.evidence_kind = detail::classify_evidence(srg_p, inv_srg_c_base);
    cert.assumptions = std::move(checklist);
    cert.tau_grid = std::move(tau_grid);

    double min_margin = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    Witnesses best_witnesses;
    for (std::size_t i = 0; i < cert.tau_grid.size(); ++i) {
        const double tau = cert.tau_grid[i];
        Evidence scaled_inverse;
        if (const auto* region = std::get_if<Region>(&inv_srg_c_base)) {
            scaled_inverse = scale_region(*region, 1.0 / tau);
        } else {
            scaled_inverse = scale_cloud(std::get<SrgCloud>(inv_srg_c_base), 1.0 / tau);
        }
        const detail::MarginOutcome m = detail::evidence_margin(srg_p, scaled_inverse);
        if (m.indeterminate) {
            cert.verdict = Verdict::indeterminate;
            cert.caveats.push_back("separation distance indeterminate at tau = " +
                                   std::to_string(tau) + ": " + m.note);
            detail::attach_evidence_caveats(cert);
            return cert;
        }
        cert.tau_margins.push_back(m.value);
        if (m.value < min_margin) {
            min_margin = m.value;
            argmin = i;
            best_witnesses = {m.z1, m.z2};
        }
    }
    cert.margin = min_margin;
    cert.witnesses = best_witnesses;

    // Inter-grid continuum bound from the Lipschitz variation of the scaled
    // inverse evidence between adjacent grid points.
    const std::optional<double> modulus_bound =
        detail::evidence_modulus_bound(inv_srg_c_base);
    if (!modulus_bound) {
        cert.continuum = ContinuumStatus::indeterminate;
        cert.caveats.push_back(
            "continuum upgrade indeterminate: inverse evidence is unbounded, "
            "no inter-grid variation bound exists; grid verdict only");
    } else {
        bool covered = true;
        for (std::size_t i = 0; i + 1 < cert.tau_grid.size(); ++i) {
            const double variation =
                (1.0 / cert.tau_grid[i] - 1.0 / cert.tau_grid[i + 1]) *
                *modulus_bound;
            if (!(cert.margin > variation)) {
                covered = false;
                break;
            }
        }
        cert.continuum =
            covered ? ContinuumStatus::covered : ContinuumStatus::not_covered;
        if (covered && cert.tau_grid.front() > 0.0) {
            cert.caveats.push_back(
                "continuum bound covers [tau_min, 1]; tau below the grid is "
                "not claimed");
        }
    }

    const bool separated = cert.margin > margin_floor;
    if (cert.assumptions.any_violated() || !cert.assumptions.all_acceptable()) {
        cert.verdict = Verdict::not_certified;
    } else {
        cert.verdict = separated ? Verdict::certified : Verdict::not_certified;
    }
    if (!separated) {
        cert.caveats.push_back(
            "separation fails at tau = " + std::to_string(cert.tau_grid[argmin]));
    }
    detail::attach_evidence_caveats(cert);
    return cert;
}

// ---------------------------------------------------------------------------
// Passivity corollary
// ---------------------------------------------------------------------------

struct PassivityEvidence {
    std::optional<SrgCloud> p_hard_cloud;  // checked against D(delta, epsilon)
    std::optional<SrgCloud> c_hard_cloud;  // checked against {Re <= 0}
};

struct PassivityIndices {
    double delta = 0.0;
    double epsilon = 0.0;
};

/// Corollary path: P strictly incrementally passive with indices
/// (delta, epsilon) and -C incrementally passive. Builds D(delta, epsilon)
/// for the P side; on the inverse side the closed right half-plane of -C is
/// inversion-invariant (away from 0 and infinity) and negation mirrors it,
/// so the inverse-SRG region of the loop component C is {Re <= 0}. Strict
/// passivity implies a finite incremental gain, so the P-stable premise is
/// discharged structurally.
inline Certificate certify_passivity_corollary(
    const PassivityIndices& indices, const PassivityEvidence& evidence,
    AssumptionChecklist checklist = AssumptionChecklist::for_hard(),
    double margin_floor = kDefaultMarginFloor) {
    const Region d_region = Region::sector_disk(indices.delta, indices.epsilon);
    const Region inv_c_region = Region::half_plane_leq(0.0);

    AssumptionChecklist list = std::move(checklist);
    bool violated = false;
    std::vector<std::string> violation_notes;
    if (evidence.p_hard_cloud) {
        const ContainmentReport report =
            containment_report(*evidence.p_hard_cloud, d_region);
        if (report.fraction_inside < 1.0) {
            violated = true;
            violation_notes.push_back(
                "P cloud escapes D(delta,epsilon): fraction_inside = " +
                std::to_string(report.fraction_inside) + ", worst violation " +
                std::to_string(report.worst_violation_distance));
        }
    }
    if (evidence.c_hard_cloud) {
        const ContainmentReport report =
            containment_report(*evidence.c_hard_cloud, inv_c_region);
        if (report.fraction_inside < 1.0) {
            violated = true;
            violation_notes.push_back(
                "-C passivity violated: SRG cloud of C escapes {Re <= 0}, "
                "fraction_inside = " +
                std::to_string(report.fraction_inside));
        }
    }

    if (violated) {
        list.set("p_stable", AssumptionStatus::violated,
                 "passivity containment contradicted by sampled evidence");
    } else {
        list.set("p_stable", AssumptionStatus::satisfied,
                 "strict incremental passivity implies a finite incremental "
                 "gain, hence P is stable");
    }

    Certificate cert = certify_hard(Evidence(d_region), Evidence(inv_c_region),
                                    std::move(list), margin_floor);
    cert.theorem = TheoremKind::passivity_corollary;
    if (violated) {
        cert.verdict = Verdict::not_certified;
        for (auto& note : violation_notes) {
            cert.caveats.push_back("violated assumption: " + note);
        }
    }
    if (evidence.p_hard_cloud || evidence.c_hard_cloud) {
        cert.evidence_kind = EvidenceKind::mixed;
        cert.caveats.push_back(
            "containment of sampled clouds supports but does not prove the "
            "passivity assumptions");
    }
    return cert;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline OrderedJson certificate_to_json(const Certificate& cert) {
    OrderedJson j;
    j["schema_version"] = 1;
    j["verdict"] = verdict_name(cert.verdict);
    j["theorem"] = theorem_name(cert.theorem);
    j["margin"] = cert.margin;
    j["margin_kind"] = cert.margin_kind == MarginKind::sm_e ? "sm_e" : "sm";
    j["margin_floor"] = cert.margin_floor;
    switch (cert.evidence_kind) {
        case EvidenceKind::analytic_regions:
            j["evidence_kind"] = "analytic_regions";
            break;
        case EvidenceKind::sampled_clouds:
            j["evidence_kind"] = "sampled_clouds";
            break;
        case EvidenceKind::mixed:
            j["evidence_kind"] = "mixed";
            break;
    }
    if (!cert.tau_grid.empty()) {
        j["tau_grid"] = cert.tau_grid;
        j["tau_margins"] = cert.tau_margins;
    }
    switch (cert.continuum) {
        case ContinuumStatus::not_applicable:
            j["continuum"] = "not_applicable";
            break;
        case ContinuumStatus::covered:
            j["continuum"] = "covered";
            break;
        case ContinuumStatus::not_covered:
            j["continuum"] = "not_covered";
            break;
        case ContinuumStatus::indeterminate:
            j["continuum"] = "indeterminate";
            break;
    }
    OrderedJson assumptions = OrderedJson::array();
    for (const auto& item : cert.assumptions.items) {
        OrderedJson a;
        a["name"] = item.name;
        a["required_by"] = item.required_by;
        a["status"] = assumption_status_name(item.status);
        if (!item.note.empty()) a["note"] = item.note;
        assumptions.push_back(std::move(a));
    }
    j["assumptions"] = std::move(assumptions);
    OrderedJson witnesses;
    witnesses["z1"] = {{"re", cert.witnesses.z1.real()},
                       {"im", cert.witnesses.z1.imag()}};
    witnesses["z2"] = {{"re", cert.witnesses.z2.real()},
                       {"im", cert.witnesses.z2.imag()}};
    j["witnesses"] = std::move(witnesses);
    j["caveats"] = cert.caveats;
    return j;
}

}  // namespace srglab
