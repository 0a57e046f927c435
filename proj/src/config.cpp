#include "stratlab/config.hpp"

#include "stratlab/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <array>
#include <cstdio>
#include <set>

namespace stratlab {

namespace {

const std::set<std::string> kSuites = {"green",         "wick",      "laplace",     "s2",     "bound", "lemma-a",
                                       "representation", "localtime", "variational", "asympt", "all"};

template <class T>
T parse_value(const boost::property_tree::ptree& pt, const std::string& key) {
    try {
        return pt.get_value<T>();
    } catch (const std::exception&) {
        fail(ErrorKind::ConfigError, "config: bad value for '" + key + "'");
    }
}

} // namespace

RunConfig load_config(const std::string& path, RunConfig c) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(path, pt);
    } catch (const std::exception& e) {
        fail(ErrorKind::ConfigError, std::string("config: ") + e.what());
    }
    for (const auto& [key, v] : pt) {
        if (!v.empty()) fail(ErrorKind::ConfigError, "config: sections are not supported ('" + key + "')");
        if (key == "suite") c.suite = parse_value<std::string>(v, key);
        else if (key == "seed") c.seed = parse_value<std::uint64_t>(v, key);
        else if (key == "mc") c.mc = parse_value<std::int64_t>(v, key);
        else if (key == "tol") c.tol = parse_value<double>(v, key);
        else if (key == "out") c.out = parse_value<std::string>(v, key);
        else if (key == "d") c.d = parse_value<int>(v, key);
        else if (key == "alpha") c.alpha = parse_value<double>(v, key);
        else if (key == "alpha0") c.alpha0 = parse_value<double>(v, key);
        else if (key == "theta") c.theta = parse_value<double>(v, key);
        else fail(ErrorKind::ConfigError, "config: unknown key '" + key + "'");
    }
    return c;
}

bool suite_uses_mc(const std::string& suite) {
    return suite == "wick" || suite == "representation" || suite == "localtime" || suite == "all";
}

void validate(const RunConfig& c) {
    require(kSuites.count(c.suite) == 1, ErrorKind::ConfigError, "config: unknown suite '" + c.suite + "'");
    require(!suite_uses_mc(c.suite) || c.seed.has_value(), ErrorKind::ConfigError,
            "config: suite '" + c.suite + "' draws random samples and needs --seed");
    require(c.mc >= 0, ErrorKind::ConfigError, "config: mc >= 0");
    require(c.tol >= 0.0, ErrorKind::ConfigError, "config: tol >= 0");
    require(c.d >= 1 && c.d <= 3, ErrorKind::ConfigError, "config: d in {1,2,3}");
    require(c.alpha > 0.0 && c.alpha < 1.0, ErrorKind::ConfigError, "config: alpha in (0,1) for d = 1 Riesz kernels");
    require(c.alpha0 > 0.0 && c.alpha0 < 1.0, ErrorKind::ConfigError, "config: alpha0 in (0,1)");
    require(c.theta > 0.0, ErrorKind::ConfigError, "config: theta > 0");
}

std::string canonical(const RunConfig& c) {
    std::array<char, 512> buf{};
    std::snprintf(buf.data(), buf.size(), "alpha=%.17g\nalpha0=%.17g\nd=%d\nmc=%lld\nseed=%s\nsuite=%s\ntheta=%.17g\ntol=%.17g\n",
                  c.alpha, c.alpha0, c.d, static_cast<long long>(c.mc),
                  c.seed ? std::to_string(*c.seed).c_str() : "none", c.suite.c_str(), c.theta, c.tol);
    return buf.data();
}

std::string config_hash(const RunConfig& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canonical(c)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

} // namespace stratlab
