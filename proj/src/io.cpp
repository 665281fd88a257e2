#include "zetalab/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab::io {

namespace {

std::string line_tag(std::size_t line_no) {
    return "line " + std::to_string(line_no) + ": ";
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

// whole-string double; rejects trailing garbage
double parse_double(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError(line_tag(line_no) + "expected a number, got '" +
                         text + "'");
    while (*end != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*end)))
            throw ParseError(line_tag(line_no) + "trailing characters in '" +
                             text + "'");
        ++end;
    }
    return v;
}

// value of "key=" inside a comment line, if present
bool scan_keyed(const std::string& text, const std::string& key,
                std::size_t line_no, double* out) {
    std::size_t pos = text.find(key + "=");
    if (pos == std::string::npos) return false;
    const char* begin = text.c_str() + pos + key.size() + 1;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError(line_tag(line_no) + "unreadable value for " + key);
    *out = v;
    return true;
}

// main-term count estimate; slack must absorb S(T)
double count_estimate(double t) {
    return (t / two_pi) * std::log(t / (two_pi * std::exp(1.0))) + 7.0 / 8.0;
}

long long parse_llong(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ParseError(line_tag(line_no) + "expected an integer, got '" +
                         text + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void serialize_zeros(const zeta_engine::ZeroTable& table, std::ostream& out) {
    out << "# source: "
        << (table.source == zeta_engine::ZeroSource::computed ? "computed"
                                                              : "ingested")
        << " t_max=" << format_double(table.t_max)
        << " accuracy=" << format_double(table.claimed_accuracy) << "\n";
    for (double g : table.ordinates) out << format_double(g) << "\n";
}

zeta_engine::ZeroTable parse_zeros(std::istream& in) {
    zeta_engine::ZeroTable table;
    table.source = zeta_engine::ZeroSource::ingested;
    bool have_t_max = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (line[0] == '#') {
            double v = 0.0;
            if (scan_keyed(line, "t_max", line_no, &v)) {
                table.t_max = v;
                have_t_max = true;
            }
            if (scan_keyed(line, "accuracy", line_no, &v))
                table.claimed_accuracy = v;
            continue;
        }
        double g = parse_double(line, line_no);
        if (!(g > 0.0))
            throw ValidationError(line_tag(line_no) +
                                  "ordinates must be positive");
        if (!table.ordinates.empty() && !(g > table.ordinates.back()))
            throw ValidationError(line_tag(line_no) +
                                  "ordinates must be strictly ascending");
        table.ordinates.push_back(g);
    }
    if (table.ordinates.empty())
        throw ValidationError("zero table holds no ordinates");
    if (!(table.ordinates.front() > 14.0 && table.ordinates.front() < 15.0))
        throw ValidationError("first ordinate must lie in (14, 15)");
    for (std::size_t i = 0; i < table.ordinates.size(); ++i) {
        double g = table.ordinates[i];
        double predicted = count_estimate(g);
        if (std::abs(static_cast<double>(i + 1) - predicted) >
            3.0 * std::log(g))
            throw ValidationError(
                "prefix count " + std::to_string(i + 1) + " at ordinate " +
                format_double(g) + " is inconsistent with the count estimate " +
                format_double(predicted));
    }
    if (have_t_max) {
        if (table.t_max < table.ordinates.back())
            throw ValidationError("declared t_max lies below the last ordinate");
    } else {
        table.t_max = table.ordinates.back();
    }
    return table;
}

void write_zeros(const zeta_engine::ZeroTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    serialize_zeros(table, out);
    if (!out) throw ValidationError("write failed: " + path);
}

zeta_engine::ZeroTable ingest_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open zero file: " + path);
    return parse_zeros(in);
}

std::string format_report_csv(const std::vector<harness::MomentReport>& rows) {
    std::ostringstream out;
    out << kReportHeader << "\n";
    for (const auto& r : rows) {
        out << format_double(r.t) << ',' << format_double(r.x) << ','
            << format_double(r.k) << ',' << r.quantity << ','
            << format_double(r.empirical) << ',' << format_double(r.predicted)
            << ',' << format_double(r.ratio) << ',' << r.n_zeros << "\n";
    }
    return out.str();
}

std::vector<harness::MomentReport> parse_report_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw ParseError("line 1: missing header");
    ++line_no;
    if (line != kReportHeader)
        throw ParseError(line_tag(line_no) + "header must be '" +
                         std::string(kReportHeader) + "'");
    std::vector<harness::MomentReport> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 8)
            throw ParseError(line_tag(line_no) + "expected 8 fields, got " +
                             std::to_string(fields.size()));
        harness::MomentReport r;
        r.t = parse_double(fields[0], line_no);
        r.x = parse_double(fields[1], line_no);
        r.k = parse_double(fields[2], line_no);
        r.quantity = fields[3];
        r.empirical = parse_double(fields[4], line_no);
        r.predicted = parse_double(fields[5], line_no);
        r.ratio = parse_double(fields[6], line_no);
        r.n_zeros = parse_llong(fields[7], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_report_csv(const std::vector<harness::MomentReport>& rows,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out << format_report_csv(rows);
    if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace zetalab::io
