#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace tracecluster {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using AttributeValue = std::variant<std::string, double, bool>;
using ActivityId = std::uint32_t;

struct Event {
  std::string trace_id;
  Timestamp timestamp{};
  std::string activity;
  std::map<std::string, AttributeValue> attributes;
};

struct Trace {
  std::string trace_id;
  std::vector<Event> events;
};

/// Traces in first-appearance order of their identifier in the source file.
class EventLog {
 public:
  EventLog() = default;

  /// Takes ownership of `traces`; throws kInvalidInput if an invariant of
  /// Trace/EventLog does not hold (empty trace, duplicate id, unsorted events).
  explicit EventLog(std::vector<Trace> traces);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }

  /// Index of the trace with the given id, or npos.
  std::size_t find(std::string_view trace_id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Trace> traces_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Variant {
  std::vector<ActivityId> activities;
  /// Indices into the source EventLog, ascending.
  std::vector<std::size_t> member_traces;
  std::size_t multiplicity() const noexcept { return member_traces.size(); }
};

/// Distinct activity sequences of a log with their multiplicities. Variants
/// are numbered by the first occurrence of their sequence in the log and
/// activity ids by the first occurrence of their label.
class GroupedEventLog {
 public:
  explicit GroupedEventLog(const EventLog& log);

  const EventLog& source() const noexcept { return *source_; }
  const std::vector<Variant>& variants() const noexcept { return variants_; }
  const Variant& variant(std::size_t i) const { return variants_.at(i); }

  /// supp(G)
  std::size_t support() const noexcept { return variants_.size(); }
  /// |G| = |L|
  std::size_t trace_count() const noexcept { return source_->size(); }

  const std::vector<std::string>& activity_names() const noexcept { return activity_names_; }
  std::vector<std::string> labels(std::size_t variant) const;

  std::size_t variant_of_trace(std::size_t trace_index) const { return trace_variant_.at(trace_index); }
  /// Variant index of a trace id, or EventLog::npos.
  std::size_t variant_of(std::string_view trace_id) const;

 private:
  const EventLog* source_;
  std::vector<Variant> variants_;
  std::vector<std::string> activity_names_;
  std::vector<std::size_t> trace_variant_;
};

GroupedEventLog group(const EventLog& log);

struct LogStatistics {
  std::size_t trace_count = 0;
  std::size_t variant_count = 0;
  std::size_t activity_type_count = 0;
  double average_trace_length = 0.0;
  std::size_t min_trace_length = 0;
  std::size_t max_trace_length = 0;
  double average_activity_types_per_trace = 0.0;
};

LogStatistics log_statistics(const GroupedEventLog& g);

// ----------------------------------------------------------------- parsing

struct CsvMapping {
  std::string trace_id = "case_id";
  std::string timestamp = "timestamp";
  std::string activity = "activity";
};

struct ParseOptions {
  /// Strip leading/trailing whitespace from activity labels and trace ids.
  bool trim_labels = true;
};

/// Parses a timestamp with a strftime-like pattern. Supported directives:
///   %Y year, %m month, %d day, %H hour, %M minute, %S second,
///   %f fractional seconds (1-9 digits, truncated to milliseconds),
///   %z UTC offset ("Z", "+HH:MM", "+HHMM", "+HH"), %% literal percent.
/// Every other character must match literally. Without %z the value is
/// taken as UTC. Throws kUnparseableTimestamp.
Timestamp parse_timestamp(std::string_view text, std::string_view pattern);

/// ISO-8601 as written in XES files: date, optional time, optional fraction,
/// optional offset.
Timestamp parse_iso8601(std::string_view text);

std::string format_iso8601(Timestamp t);

/// An empty `timestamp_format` reads ISO-8601 (see parse_iso8601).
EventLog parse_csv(const std::filesystem::path& path, const CsvMapping& mapping,
                   std::string_view timestamp_format, const ParseOptions& options = {});
EventLog parse_csv_text(std::string_view text, const CsvMapping& mapping,
                        std::string_view timestamp_format, const ParseOptions& options = {});

/// "case_id,activity,timestamp" rows with ISO-8601 UTC timestamps, in log
/// order; other attributes are dropped.
std::string format_csv(const EventLog& log);

EventLog parse_xes(const std::filesystem::path& path, const ParseOptions& options = {});
EventLog parse_xes_text(const std::string& xml, const ParseOptions& options = {});

}  // namespace tracecluster
