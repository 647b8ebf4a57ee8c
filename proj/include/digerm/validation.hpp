#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace digerm {

using json = nlohmann::ordered_json;

/// One violated rule: a machine-readable code, the offending object, and a
/// human-readable message.  Identity violations additionally carry their
/// index tuple so tests can pin them exactly.
struct ValidationIssue {
    std::string code;
    std::string subject;
    std::string message;
    std::vector<long long> indices;

    bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    void add(std::string code, std::string subject, std::string message,
             std::vector<long long> indices = {})
    {
        issues.push_back({std::move(code), std::move(subject), std::move(message),
                          std::move(indices)});
    }

    bool contains(const std::string& code, const std::string& subject) const
    {
        for (const auto& i : issues)
            if (i.code == code && i.subject == subject)
                return true;
        return false;
    }

    bool contains(const std::string& code, const std::string& subject,
                  const std::vector<long long>& indices) const
    {
        for (const auto& i : issues)
            if (i.code == code && i.subject == subject && i.indices == indices)
                return true;
        return false;
    }

    std::string str() const
    {
        if (issues.empty())
            return "ok";
        std::string out;
        for (const auto& i : issues) {
            out += i.code + " " + i.subject + ": " + i.message + "\n";
        }
        return out;
    }

    json to_json() const
    {
        json arr = json::array();
        for (const auto& i : issues) {
            json o;
            o["code"] = i.code;
            o["subject"] = i.subject;
            o["message"] = i.message;
            if (!i.indices.empty())
                o["indices"] = i.indices;
            arr.push_back(o);
        }
        return arr;
    }
};

} // namespace digerm
