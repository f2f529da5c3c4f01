#pragma once

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace altexp {

enum class Verdict { pass, fail, reported_only };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::reported_only: return "reported-only";
    }
    return "?";
}

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

struct Record {
    std::string name;
    std::string citation; // the claim being checked
    nlohmann::json value;
    nlohmann::json bound;
    Verdict verdict = Verdict::reported_only;
    double seconds = 0;
};

/// Machine-readable run report.  Records are emitted sorted by name; timing
/// lives in its own fields so equal runs differ only there.
class Report {
public:
    static constexpr int schema_version = 1;

    explicit Report(nlohmann::json config = nlohmann::json::object()) : config_(std::move(config)) {}

    Record& add(Record r)
    {
        records_.push_back(std::move(r));
        return records_.back();
    }

    Record& add(std::string name, std::string citation, nlohmann::json value, nlohmann::json bound, Verdict v)
    {
        return add(Record{std::move(name), std::move(citation), std::move(value), std::move(bound), v, 0});
    }

    const std::vector<Record>& records() const noexcept { return records_; }
    std::vector<Record>& records() noexcept { return records_; }
    nlohmann::json& config() noexcept { return config_; }

    bool any_fail() const
    {
        return std::any_of(records_.begin(), records_.end(), [](const Record& r) { return r.verdict == Verdict::fail; });
    }

    std::size_t count(Verdict v) const
    {
        return static_cast<std::size_t>(
            std::count_if(records_.begin(), records_.end(), [&](const Record& r) { return r.verdict == v; }));
    }

    void set_total_seconds(double s) { total_seconds_ = s; }

    nlohmann::json to_json(bool with_timing = true) const
    {
        auto sorted = records_;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Record& a, const Record& b) { return a.name < b.name; });
        nlohmann::json recs = nlohmann::json::array();
        nlohmann::json timing = nlohmann::json::object();
        for (const auto& r : sorted) {
            recs.push_back({{"name", r.name},
                            {"citation", r.citation},
                            {"value", r.value},
                            {"bound", r.bound},
                            {"verdict", verdict_name(r.verdict)}});
            timing[r.name] = r.seconds;
        }
        nlohmann::json j{{"schema_version", schema_version},
                         {"config", config_},
                         {"records", recs},
                         {"summary",
                          {{"pass", count(Verdict::pass)},
                           {"fail", count(Verdict::fail)},
                           {"reported_only", count(Verdict::reported_only)}}}};
        if (with_timing) {
            timing["total"] = total_seconds_;
            j["timing"] = timing;
        }
        return j;
    }

private:
    nlohmann::json config_;
    std::vector<Record> records_;
    double total_seconds_ = 0;
};

} // namespace altexp
