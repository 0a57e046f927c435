#include "stratlab/report.hpp"

#include "stratlab/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stratlab {

namespace {

CheckRow make(std::string id, std::string eq, std::string inputs, double e, double a, double tol, bool pass) {
    return CheckRow{std::move(id), std::move(eq), std::move(inputs), e, a, tol, pass};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::ConfigError, "cannot write " + p.string());
    f << text;
}

} // namespace

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string kv(std::initializer_list<std::pair<const char*, double>> items) {
    std::string out;
    for (const auto& [k, v] : items) {
        if (!out.empty()) out += ';';
        out += k;
        out += '=';
        out += fmt(v);
    }
    return out;
}

CheckRow check_abs(std::string id, std::string eq, std::string inputs, double expected, double actual, double tol) {
    bool pass = std::isfinite(actual) && std::abs(actual - expected) <= tol;
    return make(std::move(id), std::move(eq), std::move(inputs), expected, actual, tol, pass);
}

CheckRow check_rel(std::string id, std::string eq, std::string inputs, double expected, double actual, double tol) {
    bool pass = std::isfinite(actual) && std::abs(actual - expected) <= tol * std::abs(expected);
    return make(std::move(id), std::move(eq), std::move(inputs), expected, actual, tol, pass);
}

CheckRow check_le(std::string id, std::string eq, std::string inputs, double bound, double actual, double tol) {
    bool pass = !std::isnan(actual) && actual <= bound + tol;
    return make(std::move(id), std::move(eq), std::move(inputs), bound, actual, tol, pass);
}

CheckRow check_true(std::string id, std::string eq, std::string inputs, bool ok) {
    return make(std::move(id), std::move(eq), std::move(inputs), 1.0, ok ? 1.0 : 0.0, 0.0, ok);
}

void Report::merge(Report other) {
    for (auto& r : other.rows) rows.push_back(std::move(r));
    for (auto& s : other.series) series.push_back(std::move(s));
}

void Report::sort() {
    std::stable_sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) { return a.id < b.id; });
    std::stable_sort(series.begin(), series.end(),
                     [](const DataSeries& a, const DataSeries& b) { return a.name < b.name; });
}

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

std::string Report::first_failure() const {
    std::string best;
    for (const auto& r : rows)
        if (!r.pass && (best.empty() || r.id < best)) best = r.id;
    return best;
}

std::string to_csv(const Report& r, const std::string& config_hash) {
    std::ostringstream os;
    os << "check_id,equation,inputs,expected,actual,tolerance,pass\n";
    for (const auto& row : r.rows) {
        std::string inputs = "cfg=" + config_hash;
        if (!row.inputs.empty()) inputs += ";" + row.inputs;
        os << csv_field(row.id) << ',' << csv_field(row.equation) << ',' << csv_field(inputs) << ','
           << fmt(row.expected) << ',' << fmt(row.actual) << ',' << fmt(row.tolerance) << ','
           << (row.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_json(const Report& r, const std::string& suite, const std::string& config_hash) {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["config_hash"] = config_hash;
    j["checks"] = r.rows.size();
    j["failures"] = r.failures();
    j["pass"] = r.all_pass();
    j["first_failure"] = r.first_failure();
    auto failed = nlohmann::ordered_json::array();
    for (const auto& row : r.rows)
        if (!row.pass) failed.push_back(row.id);
    j["failed"] = failed;
    auto files = nlohmann::ordered_json::array();
    for (const auto& s : r.series) files.push_back(s.name + ".dat");
    j["data_files"] = files;
    return j.dump(2) + "\n";
}

std::string to_dat(const DataSeries& s) {
    std::ostringstream os;
    os << "# " << s.x_label << ' ' << s.y_label << '\n';
    for (const auto& [x, y] : s.points) os << fmt(x) << ' ' << fmt(y) << '\n';
    return os.str();
}

void write_report(const std::string& dir, const Report& r, const std::string& suite, const std::string& config_hash,
                  const std::string& config_text) {
    namespace fs = std::filesystem;
    fs::path base(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) fail(ErrorKind::ConfigError, "cannot create " + dir + ": " + ec.message());
    write_file(base / "report.csv", to_csv(r, config_hash));
    write_file(base / "summary.json", to_json(r, suite, config_hash));
    write_file(base / "config.txt", config_text);
    for (const auto& s : r.series) write_file(base / (s.name + ".dat"), to_dat(s));
}

} // namespace stratlab
