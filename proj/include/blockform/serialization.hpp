#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "blockform/block_matrix.hpp"
#include "blockform/fuzz.hpp"
#include "blockform/report.hpp"

namespace blockform {

/// Malformed instance file; the message names the offending field.
class InstanceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * InstanceFile JSON:
 *
 *   {"n": 2, "k": 2, "entries": [[[re, im], ...], ...]}
 *
 * `entries` is an nk x nk nested array of [re, im] pairs.
 */
BlockMatrix parse_instance(const std::string& text);
BlockMatrix read_instance_file(const std::string& path);
std::string instance_to_json(const BlockMatrix& h);

/// Report objects carry exactly: degenerate, holds, id, imag_residual, lhs_log,
/// margin, r, rhs_log, tol (sorted keys, shortest round-trip floats,
/// non-finite values as null).
std::string reports_to_json(std::span<const InequalityReport> reports);
std::string records_to_json(std::span<const FuzzRecord> records);

inline constexpr const char* kCsvHeader = "id,r,n,k,lhs_log,rhs_log,margin,holds,degenerate,seed";

/// One CSV row per report; `seed` is blank for instances read from a file.
std::string report_csv_row(const InequalityReport& rep, std::size_t n, std::size_t k,
                           const std::string& seed = "");
std::string records_to_csv(std::span<const FuzzRecord> records);

std::string summary_to_json(const FuzzSummary& summary);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace blockform
