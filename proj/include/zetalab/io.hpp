#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zetalab/harness.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab::io {

// Plain-text zero table: '#' comment header (a "t_max=" token there is
// honored, as is "accuracy="), then one ascending ordinate per line.  All
// numbers are written with 17 significant digits so parsing the output
// recovers the stored doubles exactly.
void serialize_zeros(const zeta_engine::ZeroTable& table, std::ostream& out);
zeta_engine::ZeroTable parse_zeros(std::istream& in);

void write_zeros(const zeta_engine::ZeroTable& table, const std::string& path);
zeta_engine::ZeroTable ingest_zeros(const std::string& path);

// Report table: fixed header and column order, 17 significant digits.
inline constexpr const char* kReportHeader =
    "T,X,k,quantity,empirical,predicted,ratio,n_zeros";

std::string format_report_csv(const std::vector<harness::MomentReport>& rows);
std::vector<harness::MomentReport> parse_report_csv(std::istream& in);
void write_report_csv(const std::vector<harness::MomentReport>& rows,
                      const std::string& path);

// shared decimal convention (17 significant digits, round-trip exact)
std::string format_double(double v);

}  // namespace zetalab::io
