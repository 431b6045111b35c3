#include "tracecluster/log_model.hpp"

#include <algorithm>
#include <optional>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

#include "tracecluster/csv.hpp"
#include "tracecluster/error.hpp"

namespace tracecluster {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string clean(std::string_view s, const ParseOptions& options) {
  return std::string(options.trim_labels ? trim(s) : s);
}

void sort_events(std::vector<Trace>& traces) {
  for (auto& trace : traces) {
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
  }
}

}  // namespace

// ------------------------------------------------------------------ EventLog

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    const Trace& trace = traces_[i];
    if (trace.trace_id.empty()) throw Error(ErrorKind::kInvalidInput, "empty trace id");
    if (trace.events.empty()) {
      throw Error(ErrorKind::kInvalidInput, "trace '" + trace.trace_id + "' has no events");
    }
    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      const Event& event = trace.events[e];
      if (event.trace_id != trace.trace_id) {
        throw Error(ErrorKind::kInvalidInput, "event trace id mismatch in '" + trace.trace_id + "'");
      }
      if (event.activity.empty()) {
        throw Error(ErrorKind::kInvalidInput, "empty activity in trace '" + trace.trace_id + "'");
      }
      if (e > 0 && event.timestamp < trace.events[e - 1].timestamp) {
        throw Error(ErrorKind::kInvalidInput, "events out of order in trace '" + trace.trace_id + "'");
      }
    }
    if (!index_.emplace(trace.trace_id, i).second) {
      throw Error(ErrorKind::kInvalidInput, "duplicate trace id '" + trace.trace_id + "'");
    }
  }
}

std::size_t EventLog::find(std::string_view trace_id) const {
  const auto it = index_.find(std::string(trace_id));
  return it == index_.end() ? npos : it->second;
}

// ----------------------------------------------------------- GroupedEventLog

GroupedEventLog::GroupedEventLog(const EventLog& log) : source_(&log) {
  std::unordered_map<std::string, ActivityId> activity_ids;
  std::map<std::vector<ActivityId>, std::size_t> variant_ids;
  trace_variant_.reserve(log.size());
  for (std::size_t t = 0; t < log.size(); ++t) {
    std::vector<ActivityId> sequence;
    sequence.reserve(log.traces()[t].events.size());
    for (const Event& event : log.traces()[t].events) {
      auto [it, inserted] =
          activity_ids.emplace(event.activity, static_cast<ActivityId>(activity_names_.size()));
      if (inserted) activity_names_.push_back(event.activity);
      sequence.push_back(it->second);
    }
    auto [it, inserted] = variant_ids.emplace(sequence, variants_.size());
    if (inserted) variants_.push_back(Variant{std::move(sequence), {}});
    variants_[it->second].member_traces.push_back(t);
    trace_variant_.push_back(it->second);
  }
}

std::vector<std::string> GroupedEventLog::labels(std::size_t variant) const {
  std::vector<std::string> out;
  for (ActivityId a : variants_.at(variant).activities) out.push_back(activity_names_[a]);
  return out;
}

std::size_t GroupedEventLog::variant_of(std::string_view trace_id) const {
  const std::size_t t = source_->find(trace_id);
  return t == EventLog::npos ? EventLog::npos : trace_variant_[t];
}

GroupedEventLog group(const EventLog& log) { return GroupedEventLog(log); }

LogStatistics log_statistics(const GroupedEventLog& g) {
  LogStatistics s;
  s.trace_count = g.trace_count();
  s.variant_count = g.support();
  s.activity_type_count = g.activity_names().size();
  if (g.support() == 0) return s;
  s.min_trace_length = static_cast<std::size_t>(-1);
  double length_sum = 0.0;
  double types_sum = 0.0;
  for (const Variant& v : g.variants()) {
    const std::size_t len = v.activities.size();
    const std::size_t types = std::set<ActivityId>(v.activities.begin(), v.activities.end()).size();
    const double m = static_cast<double>(v.multiplicity());
    length_sum += m * static_cast<double>(len);
    types_sum += m * static_cast<double>(types);
    s.min_trace_length = std::min(s.min_trace_length, len);
    s.max_trace_length = std::max(s.max_trace_length, len);
  }
  s.average_trace_length = length_sum / static_cast<double>(s.trace_count);
  s.average_activity_types_per_trace = types_sum / static_cast<double>(s.trace_count);
  return s;
}

// ---------------------------------------------------------------- timestamps

namespace {

struct TimestampParts {
  int year = 1970;
  unsigned month = 1, day = 1;
  int hour = 0, minute = 0, second = 0, millis = 0;
  int offset_minutes = 0;
};

class Cursor {
 public:
  Cursor(std::string_view text, std::string_view pattern) : text_(text), pattern_(pattern) {}

  [[noreturn]] void fail() const {
    throw Error(ErrorKind::kUnparseableTimestamp,
                "'" + std::string(text_) + "' does not match '" + std::string(pattern_) + "'");
  }

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail();
    ++pos_;
  }

  int digits(std::size_t min_count, std::size_t max_count) {
    std::size_t n = 0;
    int value = 0;
    while (n < max_count && pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      ++n;
    }
    if (n < min_count) fail();
    return value;
  }

  int fraction_millis() {
    std::size_t n = 0;
    int millis = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      if (n < 3) millis = millis * 10 + (text_[pos_] - '0');
      ++pos_;
      ++n;
    }
    if (n == 0 || n > 9) fail();
    for (std::size_t k = n; k < 3; ++k) millis *= 10;
    return millis;
  }

  int offset() {
    if (peek() == 'Z' || peek() == 'z') {
      ++pos_;
      return 0;
    }
    int sign = 0;
    if (peek() == '+') sign = 1;
    if (peek() == '-') sign = -1;
    if (sign == 0) fail();
    ++pos_;
    const int hours = digits(2, 2);
    int minutes = 0;
    if (peek() == ':') {
      ++pos_;
      minutes = digits(2, 2);
    } else if (peek() >= '0' && peek() <= '9') {
      minutes = digits(2, 2);
    }
    if (hours > 23 || minutes > 59) fail();
    return sign * (hours * 60 + minutes);
  }

 private:
  std::string_view text_;
  std::string_view pattern_;
  std::size_t pos_ = 0;
};

Timestamp assemble(const TimestampParts& p, const Cursor& cursor) {
  const std::chrono::year_month_day date{std::chrono::year{p.year}, std::chrono::month{p.month},
                                         std::chrono::day{p.day}};
  if (!date.ok() || p.hour > 23 || p.minute > 59 || p.second > 60) cursor.fail();
  return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::sys_days{date}) +
         std::chrono::hours{p.hour} + std::chrono::minutes{p.minute} +
         std::chrono::seconds{p.second} + std::chrono::milliseconds{p.millis} -
         std::chrono::minutes{p.offset_minutes};
}

}  // namespace

Timestamp parse_timestamp(std::string_view text, std::string_view pattern) {
  Cursor in(text, pattern);
  TimestampParts parts;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '%') {
      in.expect(pattern[i]);
      continue;
    }
    if (++i == pattern.size()) in.fail();
    switch (pattern[i]) {
      case 'Y': parts.year = in.digits(4, 4); break;
      case 'm': parts.month = static_cast<unsigned>(in.digits(1, 2)); break;
      case 'd': parts.day = static_cast<unsigned>(in.digits(1, 2)); break;
      case 'H': parts.hour = in.digits(1, 2); break;
      case 'M': parts.minute = in.digits(1, 2); break;
      case 'S': parts.second = in.digits(1, 2); break;
      case 'f': parts.millis = in.fraction_millis(); break;
      case 'z': parts.offset_minutes = in.offset(); break;
      case '%': in.expect('%'); break;
      default:
        throw Error(ErrorKind::kUnparseableTimestamp,
                    "unsupported directive %" + std::string(1, pattern[i]));
    }
  }
  if (!in.done()) in.fail();
  return assemble(parts, in);
}

Timestamp parse_iso8601(std::string_view text) {
  Cursor in(text, "ISO-8601");
  TimestampParts parts;
  parts.year = in.digits(4, 4);
  in.expect('-');
  parts.month = static_cast<unsigned>(in.digits(2, 2));
  in.expect('-');
  parts.day = static_cast<unsigned>(in.digits(2, 2));
  if (in.peek() == 'T' || in.peek() == ' ') {
    in.expect(in.peek());
    parts.hour = in.digits(2, 2);
    in.expect(':');
    parts.minute = in.digits(2, 2);
    if (in.peek() == ':') {
      in.expect(':');
      parts.second = in.digits(2, 2);
      if (in.peek() == '.' || in.peek() == ',') {
        in.expect(in.peek());
        parts.millis = in.fraction_millis();
      }
    }
    if (!in.done()) parts.offset_minutes = in.offset();
  }
  if (!in.done()) in.fail();
  return assemble(parts, in);
}

std::string format_iso8601(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day date{day};
  const std::chrono::hh_mm_ss time{t - day};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}.{:03}Z", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                     time.hours().count(), time.minutes().count(), time.seconds().count(),
                     time.subseconds().count());
}

// ----------------------------------------------------------------------- CSV

EventLog parse_csv_text(std::string_view text, const CsvMapping& mapping,
                        std::string_view timestamp_format, const ParseOptions& options) {
  const std::vector<csv::Record> records = csv::parse(text);
  if (records.empty()) throw Error(ErrorKind::kEmptyLog, "no header row");
  const csv::Record& header = records.front();

  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw Error(ErrorKind::kMissingColumn, "column '" + name + "' not in header");
  };
  const std::size_t id_col = column(mapping.trace_id);
  const std::size_t time_col = column(mapping.timestamp);
  const std::size_t activity_col = column(mapping.activity);

  std::vector<Trace> traces;
  std::unordered_map<std::string, std::size_t> trace_index;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const csv::Record& row = records[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) {
      throw Error(ErrorKind::kMalformedCsv, fmt::format("row {} has {} fields, header has {}", r,
                                                        row.size(), header.size()));
    }
    Event event;
    event.trace_id = clean(row[id_col], options);
    event.activity = clean(row[activity_col], options);
    if (event.trace_id.empty() || event.activity.empty()) {
      throw Error(ErrorKind::kInvalidInput, fmt::format("row {} has an empty id or activity", r));
    }
    try {
      event.timestamp = timestamp_format.empty() ? parse_iso8601(trim(row[time_col]))
                                                 : parse_timestamp(trim(row[time_col]), timestamp_format);
    } catch (const Error& e) {
      throw Error(ErrorKind::kUnparseableTimestamp, fmt::format("row {}: {}", r, e.what()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != id_col && c != time_col && c != activity_col) {
        event.attributes.emplace(std::string(trim(header[c])), row[c]);
      }
    }
    auto [it, inserted] = trace_index.emplace(event.trace_id, traces.size());
    if (inserted) traces.push_back(Trace{event.trace_id, {}});
    traces[it->second].events.push_back(std::move(event));
  }
  if (traces.empty()) throw Error(ErrorKind::kEmptyLog, "log has no events");
  sort_events(traces);
  return EventLog(std::move(traces));
}

EventLog parse_csv(const std::filesystem::path& path, const CsvMapping& mapping,
                   std::string_view timestamp_format, const ParseOptions& options) {
  return parse_csv_text(csv::read_file(path), mapping, timestamp_format, options);
}

std::string format_csv(const EventLog& log) {
  std::string out = "case_id,activity,timestamp\n";
  for (const Trace& trace : log.traces()) {
    for (const Event& e : trace.events) {
      out += csv::join({e.trace_id, e.activity, format_iso8601(e.timestamp)});
      out += '\n';
    }
  }
  return out;
}

// ----------------------------------------------------------------------- XES

namespace {

namespace pt = boost::property_tree;

bool is_attribute_tag(const std::string& tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" || tag == "boolean" ||
         tag == "id";
}

AttributeValue attribute_value(const std::string& tag, const std::string& raw) {
  if (tag == "int" || tag == "float") {
    try {
      return std::stod(raw);
    } catch (const std::exception&) {
      return raw;
    }
  }
  if (tag == "boolean") return raw == "true";
  return raw;
}

}  // namespace

EventLog parse_xes_text(const std::string& xml, const ParseOptions& options) {
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorKind::kMalformedXml, e.what());
  }
  const auto log_node = tree.get_child_optional("log");
  if (!log_node) throw Error(ErrorKind::kMalformedXml, "missing <log> root element");

  std::vector<Trace> traces;
  std::size_t trace_number = 0;
  for (const auto& [tag, trace_node] : *log_node) {
    if (tag != "trace") continue;
    std::optional<std::string> name;
    for (const auto& [attr_tag, attr] : trace_node) {
      if (attr_tag == "string" && attr.get<std::string>("<xmlattr>.key", "") == "concept:name") {
        name = clean(attr.get<std::string>("<xmlattr>.value", ""), options);
      }
    }
    if (!name || name->empty()) {
      throw Error(ErrorKind::kMissingConceptName, fmt::format("trace {}", trace_number));
    }
    Trace trace{*name, {}};
    std::size_t event_number = 0;
    for (const auto& [event_tag, event_node] : trace_node) {
      if (event_tag != "event") continue;
      Event event;
      event.trace_id = trace.trace_id;
      bool has_time = false;
      for (const auto& [attr_tag, attr] : event_node) {
        if (!is_attribute_tag(attr_tag)) continue;
        const auto key = attr.get<std::string>("<xmlattr>.key", "");
        const auto value = attr.get<std::string>("<xmlattr>.value", "");
        if (key == "concept:name") {
          event.activity = clean(value, options);
        } else if (key == "time:timestamp") {
          try {
            event.timestamp = parse_iso8601(trim(value));
          } catch (const Error&) {
            throw Error(ErrorKind::kUnparseableTimestamp,
                        fmt::format("trace {} event {}: '{}'", trace_number, event_number, value));
          }
          has_time = true;
        } else if (key != "lifecycle:transition") {
          event.attributes.emplace(key, attribute_value(attr_tag, value));
        }
      }
      if (event.activity.empty()) {
        throw Error(ErrorKind::kMissingConceptName,
                    fmt::format("trace {} event {}", trace_number, event_number));
      }
      if (!has_time) {
        throw Error(ErrorKind::kMissingTimestamp,
                    fmt::format("trace {} event {}", trace_number, event_number));
      }
      trace.events.push_back(std::move(event));
      ++event_number;
    }
    if (!trace.events.empty()) traces.push_back(std::move(trace));
    ++trace_number;
  }
  if (traces.empty()) throw Error(ErrorKind::kEmptyLog, "log has no traces with events");
  sort_events(traces);
  return EventLog(std::move(traces));
}

EventLog parse_xes(const std::filesystem::path& path, const ParseOptions& options) {
  return parse_xes_text(csv::read_file(path), options);
}

}  // namespace tracecluster
