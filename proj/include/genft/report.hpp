#pragma once

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "genft/errors.hpp"

namespace genft {

inline constexpr const char* genft_version = "1.0.0";

/// How `actual` is compared with `expected`.
enum class Relation { near, le, ge, holds };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::near: return "near";
        case Relation::le: return "le";
        case Relation::ge: return "ge";
        case Relation::holds: return "holds";
    }
    return "?";
}

inline Relation relation_from_string(const std::string& s) {
    if (s == "near") return Relation::near;
    if (s == "le") return Relation::le;
    if (s == "ge") return Relation::ge;
    if (s == "holds") return Relation::holds;
    throw DomainError("unknown relation: " + s);
}

/// near: |actual - expected| <= tol; le: actual <= expected + tol; ge: actual >= expected - tol;
/// holds: actual == expected (boolean checks, 1 = true).
inline bool compare(Relation r, double expected, double actual, double tol) {
    if (std::isnan(actual)) return false;
    switch (r) {
        case Relation::near: return std::abs(actual - expected) <= tol;
        case Relation::le: return actual <= expected + tol;
        case Relation::ge: return actual >= expected - tol;
        case Relation::holds: return actual == expected;
    }
    return false;
}

enum class ErrorKind { none, domain, divergence, numerical, unsupported, degenerate, other };

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::none: return "none";
        case ErrorKind::domain: return "domain";
        case ErrorKind::divergence: return "divergence";
        case ErrorKind::numerical: return "numerical";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::degenerate: return "degenerate";
        case ErrorKind::other: return "other";
    }
    return "?";
}

inline ErrorKind error_kind_from_string(const std::string& s) {
    for (ErrorKind k : {ErrorKind::none, ErrorKind::domain, ErrorKind::divergence, ErrorKind::numerical,
                        ErrorKind::unsupported, ErrorKind::degenerate, ErrorKind::other})
        if (s == to_string(k)) return k;
    throw DomainError("unknown error kind: " + s);
}

/// Classifies the exception currently being handled.
inline ErrorKind classify_current_exception(std::string& message) {
    try {
        throw;
    } catch (const DomainError& e) {
        message = e.what();
        return ErrorKind::domain;
    } catch (const DivergenceError& e) {
        message = e.what();
        return ErrorKind::divergence;
    } catch (const NumericalError& e) {
        message = e.what();
        return ErrorKind::numerical;
    } catch (const UnsupportedParameter& e) {
        message = e.what();
        return ErrorKind::unsupported;
    } catch (const DegenerateInput& e) {
        message = e.what();
        return ErrorKind::degenerate;
    } catch (const std::exception& e) {
        message = e.what();
        return ErrorKind::other;
    }
}

struct CaseRecord {
    std::string id;
    int criterion = 0;
    nlohmann::json params = nlohmann::json::object();
    Relation relation = Relation::le;
    double expected = 0.0;
    double actual = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.0;
    bool pass = false;
    /// Where the expected value comes from: closed-form, oracle, property, reference-value.
    std::string provenance;
    ErrorKind error_kind = ErrorKind::none;
    std::optional<std::string> error;

    bool errored() const { return error_kind != ErrorKind::none; }
};

struct ReportSummary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t error = 0;
};

struct VerificationReport {
    std::string suite;
    std::vector<CaseRecord> cases;
    nlohmann::json meta = nlohmann::json::object();

    ReportSummary summary() const {
        ReportSummary s;
        for (const CaseRecord& c : cases) {
            if (c.errored()) ++s.error;
            else if (c.pass) ++s.pass;
            else ++s.fail;
        }
        return s;
    }
};

namespace detail {

/// Non-finite doubles are written as strings so that reports re-parse losslessly.
inline nlohmann::json number_to_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline double number_from_json(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw DomainError("bad number in report: " + s);
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const CaseRecord& c) {
    j = nlohmann::json{{"id", c.id},
                       {"criterion", c.criterion},
                       {"params", c.params},
                       {"relation", to_string(c.relation)},
                       {"expected", detail::number_to_json(c.expected)},
                       {"actual", detail::number_to_json(c.actual)},
                       {"tolerance", detail::number_to_json(c.tolerance)},
                       {"pass", c.pass},
                       {"provenance", c.provenance},
                       {"error_kind", to_string(c.error_kind)},
                       {"error", c.error ? nlohmann::json(*c.error) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, CaseRecord& c) {
    c.id = j.at("id").get<std::string>();
    c.criterion = j.at("criterion").get<int>();
    c.params = j.at("params");
    c.relation = relation_from_string(j.at("relation").get<std::string>());
    c.expected = detail::number_from_json(j.at("expected"));
    c.actual = detail::number_from_json(j.at("actual"));
    c.tolerance = detail::number_from_json(j.at("tolerance"));
    c.pass = j.at("pass").get<bool>();
    c.provenance = j.at("provenance").get<std::string>();
    c.error_kind = error_kind_from_string(j.at("error_kind").get<std::string>());
    if (j.at("error").is_null()) c.error.reset();
    else c.error = j.at("error").get<std::string>();
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    const ReportSummary s = r.summary();
    j = nlohmann::json{{"suite", r.suite},
                       {"cases", r.cases},
                       {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"error", s.error}, {"total", r.cases.size()}}},
                       {"meta", r.meta}};
}

inline void from_json(const nlohmann::json& j, VerificationReport& r) {
    r.suite = j.at("suite").get<std::string>();
    r.cases = j.at("cases").get<std::vector<CaseRecord>>();
    r.meta = j.at("meta");
    const ReportSummary s = r.summary();
    const auto& js = j.at("summary");
    if (js.at("pass").get<std::size_t>() != s.pass || js.at("fail").get<std::size_t>() != s.fail ||
        js.at("error").get<std::size_t>() != s.error || js.at("total").get<std::size_t>() != r.cases.size())
        throw DomainError("report summary does not match its case records");
}

/// Toolchain metadata; `timestamp` is the only field that varies between identical runs.
inline nlohmann::json toolchain_meta(bool with_timestamp = true) {
    nlohmann::json meta{{"version", genft_version},
                        {"compiler", __VERSION__},
                        {"cxx_standard", __cplusplus},
                        {"determinism", "no randomness; fixed grids and refinement schedules"}};
    if (with_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["timestamp"] = buf;
    }
    return meta;
}

}  // namespace genft
