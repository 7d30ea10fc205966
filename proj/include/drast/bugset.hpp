#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "drast/error.hpp"
#include "drast/features.hpp"

namespace drast {

// A project's bug-report database: issues that were closed by pull requests
// carry the changed-file ground truth; open issues load with empty PR fields
// and are flagged non-trainable.
struct BugSet {
    std::string project;
    std::string repository_url;
    std::int64_t issue_count = 0;
    std::int64_t pull_request_count = 0;
    std::vector<BugReport> bugs;

    const BugReport* find(const std::string& id) const {
        for (const BugReport& bug : bugs)
            if (bug.id == id) return &bug;
        return nullptr;
    }
    std::size_t trainable_count() const {
        std::size_t n = 0;
        for (const BugReport& bug : bugs) n += bug.trainable;
        return n;
    }
};

namespace bugset_detail {

inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    std::int64_t yoe = y - era * 400;
    std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

}  // namespace bugset_detail

// Accepts "YYYY-MM-DD", "YYYY-MM-DD HH:MM:SS" and the ISO form with 'T' and
// an optional trailing 'Z'. All timestamps read as UTC.
inline std::int64_t parse_timestamp(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    int fields = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep,
                             &h, &mi, &s);
    bool ok = false;
    if (fields == 3) ok = true;
    else if (fields == 7 && (sep == 'T' || sep == ' ')) ok = true;
    if (!ok || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
        mi > 59 || s < 0 || s > 60)
        throw Error(errc::bad_timestamp, "cannot parse timestamp '" + text + "'");
    return bugset_detail::days_from_civil(y, mo, d) * 86400 +
           static_cast<std::int64_t>(h) * 3600 + mi * 60 + s;
}

// Reads a BugC-format JSON file: either {project, repository_url, ...,
// bugs: [...]} or a bare array of bug records. Mandatory per-record fields:
// issue_id, issue_summary, issue_description, issue_reporting_time,
// issue_status. PR fields (fixed_by, pr_status, files_changed, lines_changed)
// may be absent or empty for open issues.
inline BugSet load_bugc(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot read " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::schema_violation, "bug file is not valid JSON: " + std::string(e.what()));
    }

    BugSet set;
    const nlohmann::json* records = nullptr;
    if (doc.is_array()) {
        records = &doc;
    } else if (doc.is_object() && doc.contains("bugs") && doc["bugs"].is_array()) {
        records = &doc["bugs"];
        set.project = doc.value("project", "");
        set.repository_url = doc.value("repository_url", "");
        set.issue_count = doc.value("issue_count", static_cast<std::int64_t>(0));
        set.pull_request_count = doc.value("pull_request_count", static_cast<std::int64_t>(0));
    } else {
        throw Error(errc::schema_violation,
                    "expected a bug array or an object with a 'bugs' array");
    }

    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < records->size(); ++i) {
        const auto& rec = (*records)[i];
        auto require = [&](const char* field) -> const nlohmann::json& {
            if (!rec.contains(field))
                throw Error(errc::schema_violation,
                            "record " + std::to_string(i) + " lacks mandatory field '" +
                                field + "'");
            return rec[field];
        };
        BugReport bug;
        const auto& id = require("issue_id");
        bug.id = id.is_string() ? id.get<std::string>() : id.dump();
        if (!seen_ids.insert(bug.id).second)
            throw Error(errc::schema_violation,
                        "record " + std::to_string(i) + " repeats issue_id " + bug.id);
        bug.summary = require("issue_summary").get<std::string>();
        bug.description = require("issue_description").get<std::string>();
        bug.reported_at = parse_timestamp(require("issue_reporting_time").get<std::string>());
        require("issue_status");
        if (rec.contains("files_changed") && rec["files_changed"].is_array())
            bug.fixed_files = rec["files_changed"].get<std::vector<std::string>>();
        bug.trainable = !bug.fixed_files.empty();
        set.bugs.push_back(std::move(bug));
    }
    return set;
}

}  // namespace drast
