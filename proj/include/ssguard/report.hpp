#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ssguard {

enum class Verdict { PASS, FAIL, INCONCLUSIVE, INFO };

std::string verdict_name(Verdict v);
Verdict verdict_from(const std::string& s);

struct ReportEntry {
    std::string name;            // dotted check id, e.g. "res.velocity"
    std::string ref;             // the identity/bound the check exercises
    std::optional<double> residual;
    std::optional<double> tol;
    std::optional<double> value; // informational payload (no pass/fail semantics)
    std::string note;
    Verdict verdict = Verdict::INFO;
    double wall_ms = 0.0;
};

/// Makes a PASS/FAIL entry from a residual and tolerance.
ReportEntry check_entry(std::string name, std::string ref, double residual, double tol,
                        std::string note = "");
ReportEntry info_entry(std::string name, std::string ref, double value, std::string note = "");

struct DiagnosticReport {
    std::string tool = "ssguard";
    std::string version = "0.1.0";
    std::string profile_meta;    // "gamma=... symmetry=... grid=..."
    std::vector<ReportEntry> entries;

    void add(ReportEntry e) { entries.push_back(std::move(e)); }
    bool any_fail() const;
    /// 0 = all PASS/INFO/INCONCLUSIVE, 1 = any FAIL.
    int exit_code() const { return any_fail() ? 1 : 0; }

    /// Line-delimited structured text, schema "ssguard-report 1". Deterministic
    /// apart from the wall_ms fields.
    void write(std::ostream& os) const;
    static DiagnosticReport parse(std::istream& is);
};

}  // namespace ssguard
