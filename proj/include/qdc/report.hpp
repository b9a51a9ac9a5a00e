#pragma once

#include <string>
#include <vector>

namespace qdc {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckRecord {
    std::string suite;
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string details;
    int degree_used = -1;
};

/// Accumulated verification results. Serialization is stable: fixed key
/// order, records in insertion order, no timestamps.
struct Report {
    std::vector<CheckRecord> checks;

    bool overall_pass() const;
    std::size_t failures() const;
    void add(std::string suite, std::string name, bool pass,
             std::string details = "", int degree_used = -1);
    void skip(std::string suite, std::string name, std::string details = "");
    void merge(const Report& other);
    std::string to_json() const;
    /// One line per record, plus an overall line.
    std::string to_text() const;
};

}  // namespace qdc
