#ifndef ZETALAB_REPORT_HPP
#define ZETALAB_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace zetalab {

// One verification record.  provenance states where the reference value came
// from: closed-form | quadrature | brute-force | trend.  status "flag" marks
// soft trend findings that never fail a run.
struct CheckRecord {
    std::string name;
    double T_value = 0.0; // 0 when not T-specific
    double computed = 0.0;
    double reference = 0.0;
    double relative_error = 0.0;
    double budget = 0.0;
    std::string status;     // pass | flag | fail
    std::string provenance; // closed-form | quadrature | brute-force | trend
};

inline CheckRecord make_record(std::string name, double T, double computed,
                               double reference, double budget, std::string provenance,
                               bool hard = true) {
    CheckRecord r;
    r.name = std::move(name);
    r.T_value = T;
    r.computed = computed;
    r.reference = reference;
    r.relative_error = (reference != 0.0)
                           ? std::abs(computed - reference) / std::abs(reference)
                           : std::abs(computed);
    r.budget = budget;
    r.provenance = std::move(provenance);
    bool ok = r.relative_error <= budget;
    r.status = ok ? "pass" : (hard ? "fail" : "flag");
    return r;
}

struct TrendSeries {
    std::string name;               // plot file stem
    std::vector<std::pair<double, double>> points; // (log T, ratio)
};

struct ExperimentReport {
    std::vector<CheckRecord> records;
    std::vector<TrendSeries> trends;
    std::uint64_t seed = 0;
    nlohmann::ordered_json config_echo;

    void add(CheckRecord r) { records.push_back(std::move(r)); }

    bool hard_ok() const {
        for (const auto& r : records)
            if (r.status == "fail") return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema"] = "zetalab-report-v1";
        // environment metadata: fixed strings only, so that identical runs
        // produce identical bytes
        j["environment"] = {{"library", "zetalab"},
                            {"floating_point", "ieee754-binary64"},
                            {"compiler", compiler_id()}};
        j["seed"] = seed;
        j["config"] = config_echo;
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json jr;
            jr["name"] = r.name;
            jr["T"] = r.T_value;
            jr["computed"] = r.computed;
            jr["reference"] = r.reference;
            jr["relative_error"] = r.relative_error;
            jr["budget"] = r.budget;
            jr["status"] = r.status;
            jr["provenance"] = r.provenance;
            recs.push_back(std::move(jr));
        }
        j["checks"] = std::move(recs);
        return j;
    }

    static std::string compiler_id() {
#if defined(__clang__)
        return "clang";
#elif defined(__GNUC__)
        return "gcc";
#else
        return "unknown";
#endif
    }
};

namespace report_detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

} // namespace report_detail

// report.json, tables/checks.csv, plots/<trend>.dat under out_dir.
// CSV: '.' decimal, scientific notation, 17 significant digits.
inline void write_report_files(const ExperimentReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/tables");
    fs::create_directories(out_dir + "/plots");
    {
        std::ofstream out(out_dir + "/report.json", std::ios::binary);
        out << rep.to_json().dump(2) << "\n";
    }
    {
        std::ofstream csv(out_dir + "/tables/checks.csv", std::ios::binary);
        csv << "check,T,computed,reference,relative_error,budget,status,provenance\n";
        for (const auto& r : rep.records) {
            csv << r.name << ',' << report_detail::fmt17(r.T_value) << ','
                << report_detail::fmt17(r.computed) << ','
                << report_detail::fmt17(r.reference) << ','
                << report_detail::fmt17(r.relative_error) << ','
                << report_detail::fmt17(r.budget) << ',' << r.status << ','
                << r.provenance << "\n";
        }
    }
    for (const auto& t : rep.trends) {
        std::ofstream dat(out_dir + "/plots/" + t.name + ".dat", std::ios::binary);
        dat << "# x = log T, y = ratio\n";
        for (auto [x, y] : t.points)
            dat << report_detail::fmt17(x) << ' ' << report_detail::fmt17(y) << "\n";
    }
}

} // namespace zetalab

#endif
