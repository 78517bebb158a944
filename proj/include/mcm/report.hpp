#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace mcm {

inline constexpr int kReportSchemaVersion = 1;

/// Audit outcome. statistical_pass marks checks whose failing direction is
/// decidable but whose passing direction rests on sampled search (existence
/// of a separating parameter, disjointness over a sampled region): a pass
/// there refutes nothing, it just found no counterexample.
enum class Verdict { pass, fail, statistical_pass, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::statistical_pass: return "statistical-pass";
        case Verdict::inconclusive: return "inconclusive";
    }
    throw std::logic_error("unreachable");
}

/// One named check inside an audit: sample and violation counts plus the
/// worst offending sample (by recorded badness) for diagnosis.
struct CheckResult {
    std::string name;
    long samples = 0;
    long violations = 0;
    nlohmann::json worst;  // null when nothing was recorded
    double worst_badness = -std::numeric_limits<double>::infinity();

    void count_pass() { ++samples; }

    template <class PayloadFn>
    void count(bool ok, double badness, PayloadFn&& payload) {
        ++samples;
        if (ok) return;
        ++violations;
        if (badness > worst_badness) {
            worst_badness = badness;
            worst = payload();
        }
    }
};

struct AuditReport {
    std::string subject;
    std::uint64_t seed = 0;
    std::deque<CheckResult> checks;  // deque: references survive later check() calls
    bool statistical = false;    // some passing check was sample-based search
    bool inconclusive = false;   // audit could not exercise a check at all

    /// find-or-create a check slot by name; the reference stays valid while
    /// further slots are created
    CheckResult& check(const std::string& name) {
        for (auto& c : checks)
            if (c.name == name) return c;
        CheckResult fresh;
        fresh.name = name;
        checks.push_back(std::move(fresh));
        return checks.back();
    }

    const CheckResult& check(const std::string& name) const {
        for (auto& c : checks)
            if (c.name == name) return c;
        throw std::invalid_argument("AuditReport: no such check: " + name);
    }

    long total_violations() const {
        long n = 0;
        for (auto& c : checks) n += c.violations;
        return n;
    }

    Verdict verdict() const {
        if (total_violations() > 0) return Verdict::fail;
        if (inconclusive) return Verdict::inconclusive;
        if (statistical) return Verdict::statistical_pass;
        return Verdict::pass;
    }

    bool passed() const {
        Verdict v = verdict();
        return v == Verdict::pass || v == Verdict::statistical_pass;
    }

    nlohmann::json to_json() const {
        nlohmann::json checks_json = nlohmann::json::array();
        for (auto& c : checks) {
            checks_json.push_back({{"name", c.name},
                                   {"samples", c.samples},
                                   {"violations", c.violations},
                                   {"worst_case", c.worst}});
        }
        return {{"schema_version", kReportSchemaVersion},
                {"subject", subject},
                {"seed", seed},
                {"checks", checks_json},
                {"verdict", to_string(verdict())}};
    }
};

}  // namespace mcm
