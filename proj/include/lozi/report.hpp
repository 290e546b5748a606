#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lozi/map.hpp"

namespace lozi {

enum class CheckStatus { pass, fail, not_applicable };

const char* to_string(CheckStatus s);

/// One verified clause. `margin` is positive slack when the clause holds
/// (tolerance minus deviation, or bound minus observed value).
struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double margin = 0.0;
    std::optional<long> witness_n;
    std::optional<Point> witness_point;
    std::optional<TangentVector> witness_vector;
    std::string note;
};

struct Report {
    std::string section;
    std::vector<CheckResult> checks;
    /// Informational `section.key=value` lines that do not affect pass/fail.
    std::vector<std::pair<std::string, std::string>> info;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
    void add(CheckResult c) { checks.push_back(std::move(c)); }
};

/// Builds a pass/fail check from a margin (pass iff margin >= -slack).
CheckResult margin_check(std::string name, double margin, double slack = 0.0);

/// Writes `section.check=status margin=<%.9g>` lines, with witness keys when present.
void write_report(std::ostream& out, const Report& report);

/// Merges per-n reports of the same section: each clause keeps its worst margin and witness.
Report merge_reports(const std::vector<Report>& reports);

}  // namespace lozi
