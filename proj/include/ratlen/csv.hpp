#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ratlen/bounds.hpp"
#include "ratlen/crofton.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/experiments.hpp"
#include "ratlen/univalence.hpp"

namespace ratlen {

/// Shortest locale-independent decimal form that parses back to the same
/// double, so repeated runs emit bit-identical files.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

inline constexpr std::string_view growth_csv_header =
    "n,length,sup_norm,normalized_length,certified,dolzhenko_ratio,prop1_ratio,upper_ratio";
inline constexpr std::string_view bounds_csv_header =
    "degree,length,sup_norm,energy,dolzhenko_ratio,prop1_ratio,upper_ratio,univalent";
inline constexpr std::string_view fit_csv_header = "slope,intercept,rms,count";
inline constexpr std::string_view certify_csv_header = "method,passed,winding,min_re,resolution";
inline constexpr std::string_view crofton_csv_header =
    "raw_length,normalized_length,max_crossings,lines_sampled";

inline std::string growth_records_csv(const std::vector<GrowthRecord>& records) {
    std::string out{growth_csv_header};
    out += '\n';
    for (const GrowthRecord& r : records) {
        out += std::to_string(r.degree);
        out += ',';
        out += format_double(r.length);
        out += ',';
        out += format_double(r.sup_norm);
        out += ',';
        out += format_double(r.normalized_length);
        out += ',';
        out += r.certified ? "true" : "false";
        out += ',';
        out += format_double(r.bounds.dolzhenko_ratio);
        out += ',';
        out += format_optional(r.bounds.prop1_ratio);
        out += ',';
        out += format_optional(r.bounds.univalent_upper_ratio);
        out += '\n';
    }
    return out;
}

/// Full measurement row for the `bounds` subcommand.
inline std::string bounds_report_csv(const BoundReport& report) {
    std::string out{bounds_csv_header};
    out += '\n';
    out += std::to_string(report.degree);
    out += ',';
    out += format_double(report.boundary_length);
    out += ',';
    out += format_double(report.sup_norm);
    out += ',';
    out += format_optional(report.disk_energy);
    out += ',';
    out += format_double(report.dolzhenko_ratio);
    out += ',';
    out += format_optional(report.prop1_ratio);
    out += ',';
    out += format_optional(report.univalent_upper_ratio);
    out += ',';
    out += report.univalence_certified ? "true" : "false";
    out += '\n';
    return out;
}

/// Measurement-only row for the `length` subcommand: the same schema with
/// every bound column left empty.
inline std::string length_report_csv(int degree, double length, double sup_norm) {
    std::string out{bounds_csv_header};
    out += '\n';
    out += std::to_string(degree);
    out += ',';
    out += format_double(length);
    out += ',';
    out += format_double(sup_norm);
    out += ",,,,,\n";
    return out;
}

inline std::string gamma_fit_csv(const GammaFit& fit) {
    std::string out{fit_csv_header};
    out += '\n';
    out += format_double(fit.slope);
    out += ',';
    out += format_double(fit.intercept);
    out += ',';
    out += format_double(fit.rms);
    out += ',';
    out += std::to_string(fit.count);
    out += '\n';
    return out;
}

inline std::string certificate_csv(const UnivalenceCertificate& cert) {
    std::string out{certify_csv_header};
    out += '\n';
    out += cert.method == CertMethod::ReDerivative ? "re" : "boundary";
    out += ',';
    out += cert.passed ? "true" : "false";
    out += ',';
    if (cert.method == CertMethod::BoundarySimple) out += std::to_string(cert.winding);
    out += ',';
    if (cert.method == CertMethod::ReDerivative) out += format_double(cert.min_re_value);
    out += ',';
    out += std::to_string(cert.resolution);
    out += '\n';
    return out;
}

inline std::string crofton_csv(const CroftonEstimate& estimate) {
    std::string out{crofton_csv_header};
    out += '\n';
    out += format_double(estimate.raw_length);
    out += ',';
    out += format_double(estimate.normalized_length);
    out += ',';
    out += std::to_string(estimate.max_crossings);
    out += ',';
    out += std::to_string(estimate.lines_sampled);
    out += '\n';
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline double parse_csv_double(const std::string& field, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw MalformedFunction(std::string("growth CSV field '") + what + "' is not a number: '" +
                                field + "'");
    return v;
}

} // namespace detail

/// Reads back what growth_records_csv wrote; only the columns present in the
/// file are restored (certificates are not round-tripped).
inline std::vector<GrowthRecord> parse_growth_csv(const std::string& text) {
    std::vector<GrowthRecord> records;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != growth_csv_header)
                throw MalformedFunction("growth CSV must start with the header '" +
                                        std::string(growth_csv_header) + "'");
            saw_header = true;
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 8)
            throw MalformedFunction("growth CSV rows need 8 columns, got " +
                                    std::to_string(fields.size()));
        GrowthRecord rec;
        rec.degree = static_cast<int>(detail::parse_csv_double(fields[0], "n"));
        rec.length = detail::parse_csv_double(fields[1], "length");
        rec.sup_norm = detail::parse_csv_double(fields[2], "sup_norm");
        rec.normalized_length = detail::parse_csv_double(fields[3], "normalized_length");
        if (fields[4] == "true")
            rec.certified = true;
        else if (fields[4] == "false")
            rec.certified = false;
        else
            throw MalformedFunction("growth CSV 'certified' must be true or false, got '" +
                                    fields[4] + "'");
        rec.certificate.passed = rec.certified;
        rec.bounds.degree = rec.degree;
        rec.bounds.boundary_length = rec.normalized_length;
        rec.bounds.sup_norm = 1.0;
        rec.bounds.univalence_certified = rec.certified;
        rec.bounds.dolzhenko_ratio = detail::parse_csv_double(fields[5], "dolzhenko_ratio");
        if (!fields[6].empty())
            rec.bounds.prop1_ratio = detail::parse_csv_double(fields[6], "prop1_ratio");
        if (!fields[7].empty())
            rec.bounds.univalent_upper_ratio = detail::parse_csv_double(fields[7], "upper_ratio");
        records.push_back(rec);
    }
    if (!saw_header) throw MalformedFunction("growth CSV is empty");
    return records;
}

} // namespace ratlen
