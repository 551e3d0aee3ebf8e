#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "chaoskit/rational.hpp"

namespace chaoskit {

enum class Status { holds, equality, violated };
enum class Arithmetic { exact, floating };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::equality: return "equality";
        case Status::violated: return "violated";
    }
    return "?";
}

inline const char* arithmetic_name(Arithmetic a) {
    return a == Arithmetic::exact ? "exact" : "float";
}

// Either an exact rational or a double, depending on the arithmetic mode of
// the producing verifier.
struct ReportValue {
    std::variant<Rational, double> value;

    ReportValue() : value(Rational(0)) {}
    ReportValue(Rational r) : value(std::move(r)) {}
    ReportValue(double d) : value(d) {}

    bool is_exact() const { return std::holds_alternative<Rational>(value); }

    double as_double() const {
        return is_exact() ? to_double(std::get<Rational>(value)) : std::get<double>(value);
    }

    std::string to_string() const {
        if (is_exact()) return to_fraction_string(std::get<Rational>(value));
        std::ostringstream os;
        os.precision(17);
        os << std::get<double>(value);
        return os.str();
    }

    nlohmann::json to_json() const {
        if (is_exact()) return to_fraction_string(std::get<Rational>(value));
        return std::get<double>(value);
    }
};

// One inequality check: lhs >= rhs with margin = lhs - rhs. Status "equality"
// means the margin is exactly zero, which is only decidable in exact mode.
struct VerificationReport {
    std::string inequality_id;
    ReportValue lhs;
    ReportValue rhs;
    ReportValue margin;
    Status status = Status::holds;
    Arithmetic arithmetic = Arithmetic::exact;
    std::string inputs_digest;
    std::optional<std::uint64_t> seed;
};

inline VerificationReport make_exact_report(std::string id, Rational lhs, Rational rhs,
                                            std::string digest,
                                            std::optional<std::uint64_t> seed = std::nullopt) {
    Rational margin = lhs - rhs;
    Status st = margin > 0 ? Status::holds : (margin == 0 ? Status::equality : Status::violated);
    return {std::move(id), ReportValue(std::move(lhs)), ReportValue(std::move(rhs)),
            ReportValue(std::move(margin)), st, Arithmetic::exact, std::move(digest), seed};
}

inline VerificationReport make_float_report(std::string id, double lhs, double rhs, std::string digest,
                                            std::optional<std::uint64_t> seed = std::nullopt) {
    const double margin = lhs - rhs;
    Status st = margin > 0 ? Status::holds : (margin == 0.0 ? Status::equality : Status::violated);
    return {std::move(id), ReportValue(lhs), ReportValue(rhs), ReportValue(margin),
            st, Arithmetic::floating, std::move(digest), seed};
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j{{"inequality_id", r.inequality_id},
                     {"lhs", r.lhs.to_json()},
                     {"rhs", r.rhs.to_json()},
                     {"margin", r.margin.to_json()},
                     {"status", status_name(r.status)},
                     {"arithmetic", arithmetic_name(r.arithmetic)},
                     {"inputs_digest", r.inputs_digest}};
    if (r.seed)
        j["seed"] = *r.seed;
    else
        j["seed"] = nullptr;
    return j;
}

inline std::string csv_header() {
    return "inequality_id,status,arithmetic,lhs,rhs,margin,seed,inputs_digest";
}

inline std::string csv_row(const VerificationReport& r) {
    std::ostringstream os;
    os << r.inequality_id << ',' << status_name(r.status) << ',' << arithmetic_name(r.arithmetic) << ','
       << r.lhs.to_string() << ',' << r.rhs.to_string() << ',' << r.margin.to_string() << ',';
    if (r.seed) os << *r.seed;
    os << ",\"" << r.inputs_digest << '"';
    return os.str();
}

}  // namespace chaoskit
