#include "regmod/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace regmod {

std::string format_g6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    if (!rows.empty()) {
        out << "collection,q,kind,method,value,verdict,uncertainty,wallclock_ms,seed\n";
        for (const ReportRow& r : rows) {
            out << r.collection << ',' << format_g6(r.q) << ',' << r.kind << ',' << r.method
                << ',' << (r.infinite ? "inf" : format_g6(r.value)) << ',' << r.verdict << ','
                << format_g6(r.uncertainty) << ',' << r.wallclock_ms << ',' << r.seed << '\n';
        }
    }
    if (!checks.empty()) {
        out << "collection,check,detail,status\n";
        for (const CheckRow& c : checks) {
            out << c.collection << ',' << c.check << ',' << c.detail << ','
                << (c.pass ? "pass" : "fail") << '\n';
        }
    }
    if (!goldens.empty()) {
        out << "collection,quantity,q,measured,target,status\n";
        for (const GoldenRow& g : goldens) {
            out << g.collection << ',' << g.quantity << ',' << format_g6(g.q) << ','
                << g.measured << ',' << g.target << ',' << (g.pass ? "pass" : "fail") << '\n';
        }
    }
    return out.str();
}

std::string Report::to_json() const {
    nlohmann::json doc;
    doc["version"] = tool_version;
    doc["config"] = config_echo;
    if (!rows.empty()) {
        auto& arr = doc["rows"] = nlohmann::json::array();
        for (const ReportRow& r : rows) {
            arr.push_back({{"collection", r.collection},
                           {"q", format_g6(r.q)},
                           {"kind", r.kind},
                           {"method", r.method},
                           {"value", r.infinite ? "inf" : format_g6(r.value)},
                           {"verdict", r.verdict},
                           {"uncertainty", format_g6(r.uncertainty)},
                           {"wallclock_ms", r.wallclock_ms},
                           {"seed", r.seed}});
        }
    }
    if (!checks.empty()) {
        auto& arr = doc["checks"] = nlohmann::json::array();
        for (const CheckRow& c : checks) {
            arr.push_back({{"collection", c.collection},
                           {"check", c.check},
                           {"detail", c.detail},
                           {"status", c.pass ? "pass" : "fail"}});
        }
    }
    if (!goldens.empty()) {
        auto& arr = doc["goldens"] = nlohmann::json::array();
        for (const GoldenRow& g : goldens) {
            arr.push_back({{"collection", g.collection},
                           {"quantity", g.quantity},
                           {"q", format_g6(g.q)},
                           {"measured", g.measured},
                           {"target", g.target},
                           {"status", g.pass ? "pass" : "fail"}});
        }
    }
    return doc.dump(2) + "\n";
}

bool Report::all_pass() const {
    for (const CheckRow& c : checks) {
        if (!c.pass) return false;
    }
    for (const GoldenRow& g : goldens) {
        if (!g.pass) return false;
    }
    return true;
}

}  // namespace regmod
