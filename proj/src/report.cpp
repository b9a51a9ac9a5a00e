#include "qdc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qdc {

namespace {
const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}
}  // namespace

bool Report::overall_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) ++n;
    return n;
}

void Report::add(std::string suite, std::string name, bool pass,
                 std::string details, int degree_used) {
    checks.push_back(CheckRecord{std::move(suite), std::move(name),
                                 pass ? CheckStatus::Pass : CheckStatus::Fail,
                                 std::move(details), degree_used});
}

void Report::skip(std::string suite, std::string name, std::string details) {
    checks.push_back(CheckRecord{std::move(suite), std::move(name),
                                 CheckStatus::Skipped, std::move(details), -1});
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json r;
        r["suite"] = c.suite;
        r["name"] = c.name;
        r["status"] = status_name(c.status);
        r["degree_used"] = c.degree_used;
        r["details"] = c.details;
        j["checks"].push_back(std::move(r));
    }
    j["overall"] = overall_pass() ? "pass" : "fail";
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "[" << status_name(c.status) << "] " << c.suite << ": " << c.name;
        if (c.degree_used >= 0) os << " (degree " << c.degree_used << ")";
        if (!c.details.empty()) os << " -- " << c.details;
        os << "\n";
    }
    os << "overall: " << (overall_pass() ? "pass" : "fail") << "\n";
    return os.str();
}

}  // namespace qdc
