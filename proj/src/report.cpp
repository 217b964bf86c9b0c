#include "ssguard/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ssguard/grid.hpp"

namespace ssguard {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
        case Verdict::INFO: return "INFO";
    }
    return "INFO";
}

Verdict verdict_from(const std::string& s) {
    if (s == "PASS") return Verdict::PASS;
    if (s == "FAIL") return Verdict::FAIL;
    if (s == "INCONCLUSIVE") return Verdict::INCONCLUSIVE;
    if (s == "INFO") return Verdict::INFO;
    throw Error("unknown verdict: " + s);
}

ReportEntry check_entry(std::string name, std::string ref, double residual, double tol,
                        std::string note) {
    ReportEntry e;
    e.name = std::move(name);
    e.ref = std::move(ref);
    e.residual = residual;
    e.tol = tol;
    e.note = std::move(note);
    e.verdict = residual > tol ? Verdict::FAIL : Verdict::PASS;
    return e;
}

ReportEntry info_entry(std::string name, std::string ref, double value, std::string note) {
    ReportEntry e;
    e.name = std::move(name);
    e.ref = std::move(ref);
    e.value = value;
    e.note = std::move(note);
    e.verdict = Verdict::INFO;
    return e;
}

bool DiagnosticReport::any_fail() const {
    for (const auto& e : entries)
        if (e.verdict == Verdict::FAIL) return true;
    return false;
}

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Splits key=value tokens; values may be double-quoted with backslash escapes.
std::vector<std::pair<std::string, std::string>> tokenize(const std::string& line) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        if (i >= line.size()) break;
        const std::size_t eq = line.find('=', i);
        if (eq == std::string::npos) throw Error("malformed report line: " + line);
        const std::string key = line.substr(i, eq - i);
        std::string val;
        i = eq + 1;
        if (i < line.size() && line[i] == '"') {
            ++i;
            while (i < line.size() && line[i] != '"') {
                if (line[i] == '\\' && i + 1 < line.size()) ++i;
                val.push_back(line[i]);
                ++i;
            }
            ++i;  // closing quote
        } else {
            const std::size_t sp = line.find(' ', i);
            val = line.substr(i, sp == std::string::npos ? std::string::npos : sp - i);
            i = sp == std::string::npos ? line.size() : sp;
        }
        kv.emplace_back(key, val);
    }
    return kv;
}

}  // namespace

void DiagnosticReport::write(std::ostream& os) const {
    os << "ssguard-report 1\n";
    os << "tool " << tool << " " << version << "\n";
    if (!profile_meta.empty()) os << "profile " << profile_meta << "\n";
    for (const auto& e : entries) {
        os << "entry name=" << e.name << " ref=" << quote(e.ref);
        if (e.residual) os << " residual=" << fmt_num(*e.residual);
        if (e.tol) os << " tol=" << fmt_num(*e.tol);
        if (e.value) os << " value=" << fmt_num(*e.value);
        if (!e.note.empty()) os << " note=" << quote(e.note);
        os << " verdict=" << verdict_name(e.verdict);
        os << " wall_ms=" << fmt_num(e.wall_ms) << "\n";
    }
    os << "end\n";
}

DiagnosticReport DiagnosticReport::parse(std::istream& is) {
    DiagnosticReport rep;
    std::string line;
    if (!std::getline(is, line) || line != "ssguard-report 1")
        throw Error("not an ssguard report (missing schema line)");
    while (std::getline(is, line)) {
        if (line == "end") return rep;
        if (line.rfind("tool ", 0) == 0) {
            std::istringstream ss(line.substr(5));
            ss >> rep.tool >> rep.version;
            continue;
        }
        if (line.rfind("profile ", 0) == 0) {
            rep.profile_meta = line.substr(8);
            continue;
        }
        if (line.rfind("entry ", 0) == 0) {
            ReportEntry e;
            for (const auto& [k, v] : tokenize(line.substr(6))) {
                if (k == "name") e.name = v;
                else if (k == "ref") e.ref = v;
                else if (k == "residual") e.residual = std::stod(v);
                else if (k == "tol") e.tol = std::stod(v);
                else if (k == "value") e.value = std::stod(v);
                else if (k == "note") e.note = v;
                else if (k == "verdict") e.verdict = verdict_from(v);
                else if (k == "wall_ms") e.wall_ms = std::stod(v);
            }
            rep.entries.push_back(std::move(e));
            continue;
        }
        throw Error("malformed report line: " + line);
    }
    throw Error("report truncated (missing end)");
}

}  // namespace ssguard
