#pragma once

#include <string>
#include <utility>
#include <vector>

namespace stratlab {

struct CheckRow {
    std::string id;
    std::string equation; // short label of the identity or bound being checked
    std::string inputs;   // key=value pairs separated by ';'
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// |actual - expected| <= tol
CheckRow check_abs(std::string id, std::string eq, std::string inputs, double expected, double actual, double tol);
// |actual - expected| <= tol |expected|
CheckRow check_rel(std::string id, std::string eq, std::string inputs, double expected, double actual, double tol);
// actual <= bound + tol
CheckRow check_le(std::string id, std::string eq, std::string inputs, double bound, double actual, double tol = 0.0);
// recorded with expected 1 and actual 0/1
CheckRow check_true(std::string id, std::string eq, std::string inputs, bool ok);

struct DataSeries {
    std::string name; // file stem
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
};

struct Report {
    std::vector<CheckRow> rows;
    std::vector<DataSeries> series;

    void add(CheckRow r) { rows.push_back(std::move(r)); }
    void merge(Report other);
    void sort();
    bool all_pass() const;
    // id of the first failing row after sorting; empty when every row passes
    std::string first_failure() const;
    std::size_t failures() const;
};

// "k1=v1;k2=v2" with %.12g numbers
std::string kv(std::initializer_list<std::pair<const char*, double>> items);
std::string fmt(double v);

std::string to_csv(const Report& r, const std::string& config_hash);
std::string to_json(const Report& r, const std::string& suite, const std::string& config_hash);
std::string to_dat(const DataSeries& s);

// writes report.csv, summary.json, config.txt and one .dat per series into dir (created if missing)
void write_report(const std::string& dir, const Report& r, const std::string& suite, const std::string& config_hash,
                  const std::string& config_text);

} // namespace stratlab
