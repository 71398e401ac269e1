#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcoreset/metric.hpp"
#include "pcoreset/oracle.hpp"
#include "pcoreset/synth.hpp"
#include "pcoreset/weighted.hpp"

namespace pcoreset {

/// Thrown for unreadable or unwritable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that is guaranteed to round-trip: 17 significant digits.
std::string format_double(double v);

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Comma-separated numeric rows. A first row that does not parse as numbers
/// is treated as a header and skipped. Blank lines are ignored.
Dataset parse_points_csv(std::string_view text);
Dataset load_points_csv(const std::string& path);

std::string points_to_csv(const Dataset& data);
void save_points_csv(const Dataset& data, const std::string& path);

/// Square matrix of non-negative distances, validated as a metric.
Dataset parse_distance_matrix(std::string_view text);
Dataset load_distance_matrix(const std::string& path);

// ---------------------------------------------------------------------------
// Text documents
// ---------------------------------------------------------------------------
//
//   pcoreset-document 1
//   kind coreset
//   <key> <value> [<value> ...]
//   ...
//   entries <count>
//   <row>
//   ...
//
// Keys keep their insertion order, so writing a parsed document reproduces
// the original bytes.

inline constexpr int kDocumentVersion = 1;

struct Document {
    std::string kind;
    std::vector<std::pair<std::string, std::vector<std::string>>> fields;
    std::vector<std::vector<std::string>> rows;

    void set(std::string key, std::vector<std::string> values);
    void set(std::string key, std::string value) { set(std::move(key), std::vector{std::move(value)}); }
    void set(std::string key, double value) { set(std::move(key), format_double(value)); }
    void set(std::string key, const std::vector<double>& values);

    bool has(std::string_view key) const;
    const std::vector<std::string>& values(std::string_view key) const;
    std::string text(std::string_view key) const;
    double number(std::string_view key) const;
    std::vector<double> numbers(std::string_view key) const;
    std::size_t count(std::string_view key) const;
    std::uint64_t u64(std::string_view key) const;
};

std::string write_document(const Document& doc);
/// Throws ValidationError on malformed input or a version mismatch.
Document parse_document(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

double parse_number(std::string_view token);
std::uint64_t parse_u64(std::string_view token);

// Coresets ------------------------------------------------------------------

Document coreset_to_document(const WeightedCoreset& c);
/// Rechecks m >= 1, positive weights, coordinate dimensions and the weight
/// identity w n m q = 1.
WeightedCoreset coreset_from_document(const Document& doc);

std::string write_coreset(const WeightedCoreset& c);
WeightedCoreset read_coreset(std::string_view text);
void save_coreset(const WeightedCoreset& c, const std::string& path);
WeightedCoreset load_coreset(const std::string& path);

// Error reports ---------------------------------------------------------------

Document report_to_document(const ErrorReport& r);
ErrorReport report_from_document(const Document& doc);

std::string write_report(const ErrorReport& r);
ErrorReport read_report(std::string_view text);

// Synthetic data specs ------------------------------------------------------------

Document synth_spec_to_document(const SynthSpec& spec);
SynthSpec synth_spec_from_document(const Document& doc);

std::string write_synth_spec(const SynthSpec& spec);
SynthSpec read_synth_spec(std::string_view text);

}  // namespace pcoreset
