#include "regmod/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace regmod {

void RadiusSchedule::validate() const {
    if (rho0 <= 0.0) throw PreconditionError("rho0 must be positive");
    if (shrink <= 0.0 || shrink >= 1.0) throw PreconditionError("shrink must lie in (0,1)");
    if (steps < 4) throw PreconditionError("at least four radius steps are required");
    if (samples_per_radius < 1) throw PreconditionError("samples_per_radius must be positive");
    if (rho0 * std::pow(shrink, steps) <= std::numeric_limits<double>::epsilon()) {
        throw PreconditionError("radius schedule underflows");
    }
}

double RadiusSchedule::radius(int k) const { return rho0 * std::pow(shrink, k); }

const char* to_string(ModulusKind k) {
    switch (k) {
        case ModulusKind::kSemi: return "semi";
        case ModulusKind::kSub: return "sub";
        case ModulusKind::kUniform: return "uniform";
        case ModulusKind::kSlope: return "slope";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::kZero: return "zero";
        case Verdict::kPositive: return "positive";
        case Verdict::kDivergent: return "divergent";
        case Verdict::kInconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ModulusEstimate classify_trace(ModulusKind kind, double q,
                               std::vector<std::pair<double, double>> trace) {
    ModulusEstimate est;
    est.kind = kind;
    est.q = q;
    est.trace = std::move(trace);

    // A tail of vacuous radii (no admissible samples at all) pins the value
    // at +inf regardless of what the early, coarser radii saw.
    if (!est.trace.empty()) {
        const std::size_t wr = (est.trace.size() + 2) / 3;
        bool tail_vacuous = true;
        for (std::size_t i = est.trace.size() - wr; i < est.trace.size(); ++i) {
            tail_vacuous = tail_vacuous && std::isinf(est.trace[i].second);
        }
        if (tail_vacuous) {
            est.value = kInf;
            est.infinite = true;
            est.verdict = Verdict::kPositive;
            est.annotation = "no admissible samples";
            return est;
        }
    }

    std::vector<double> finite;
    for (const auto& [rho, quot] : est.trace) {
        if (std::isfinite(quot)) finite.push_back(quot);
    }
    if (finite.size() < 2) {
        est.value = kInf;
        est.infinite = true;
        est.verdict = Verdict::kPositive;
        if (est.annotation.empty()) est.annotation = "no admissible samples";
        return est;
    }

    const std::size_t n = finite.size();
    const std::size_t w = (n + 2) / 3;
    std::vector<double> head(finite.begin(), finite.begin() + w);
    std::vector<double> tail(finite.end() - w, finite.end());

    const double tail_last = tail.back();
    const double tail_min = *std::min_element(tail.begin(), tail.end());
    const double tail_max = *std::max_element(tail.begin(), tail.end());
    const double head_med = median(head);

    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        increasing = increasing && tail[i] > tail[i - 1];
        decreasing = decreasing && tail[i] < tail[i - 1];
    }

    if (tail_max <= 1e-12) {
        est.value = 0.0;
        est.verdict = Verdict::kZero;
        est.uncertainty = tail_max;
        return est;
    }
    if (increasing && tail_last > 10.0 * head_med) {
        est.value = kInf;
        est.infinite = true;
        est.verdict = Verdict::kDivergent;
        return est;
    }
    if (decreasing && tail_last < head_med / 10.0) {
        est.value = 0.0;
        est.verdict = Verdict::kZero;
        est.uncertainty = tail_last;
        return est;
    }
    est.value = tail_min;
    est.verdict = Verdict::kPositive;
    est.uncertainty = tail_max - tail_min;
    return est;
}

bool property_holds(const ModulusEstimate& e) {
    return e.verdict == Verdict::kPositive || e.verdict == Verdict::kDivergent;
}

}  // namespace regmod
