#include "lozi/report.hpp"

#include <cstdio>
#include <map>

namespace lozi {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::not_applicable: return "not_applicable";
    }
    return "fail";
}

bool Report::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (c.status != CheckStatus::pass) return false;
    return true;
}

const CheckResult* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

CheckResult margin_check(std::string name, double margin, double slack) {
    CheckResult c;
    c.name = std::move(name);
    c.margin = margin;
    c.status = (margin >= -slack) ? CheckStatus::pass : CheckStatus::fail;
    return c;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

void write_report(std::ostream& out, const Report& report) {
    for (const auto& [key, value] : report.info) out << report.section << '.' << key << '=' << value << '\n';
    for (const auto& c : report.checks) {
        out << report.section << '.' << c.name << '=' << to_string(c.status) << " margin=" << fmt(c.margin);
        if (c.witness_n) out << " n=" << *c.witness_n;
        if (c.witness_point) out << " x=" << fmt(c.witness_point->x) << " y=" << fmt(c.witness_point->y);
        if (c.witness_vector) out << " xi=" << fmt(c.witness_vector->xi) << " eta=" << fmt(c.witness_vector->eta);
        if (!c.note.empty()) out << " note=" << c.note;
        out << '\n';
    }
}

Report merge_reports(const std::vector<Report>& reports) {
    Report merged;
    if (reports.empty()) return merged;
    merged.section = reports.front().section;
    merged.info = reports.front().info;
    std::map<std::string, std::size_t> index;
    for (const auto& r : reports) {
        for (const auto& c : r.checks) {
            auto it = index.find(c.name);
            if (it == index.end()) {
                index.emplace(c.name, merged.checks.size());
                merged.checks.push_back(c);
                continue;
            }
            CheckResult& cur = merged.checks[it->second];
            const bool worse_status = c.status != CheckStatus::pass && cur.status == CheckStatus::pass;
            if (worse_status || (c.status == cur.status && c.margin < cur.margin)) cur = c;
        }
    }
    return merged;
}

}  // namespace lozi
