#include "cecsp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "cecsp/error.hpp"

namespace cecsp {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw FormatError(std::string("field '") + key + "' is not a number");
  }
  return v.get<double>();
}

int int_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) ||
      !obj.at(key).is_number_integer()) {
    throw FormatError(std::string("missing integer field '") + key + "'");
  }
  return obj.at(key).get<int>();
}

void check_version(const json& doc) {
  if (!doc.is_object()) throw FormatError("document is not a JSON object");
  if (doc.contains("version") && int_field(doc, "version") != kFormatVersion) {
    throw FormatError("unsupported format version");
  }
}

json keyed_amounts(const std::map<IntervalKey, double>& values) {
  json arr = json::array();
  for (const auto& [key, amount] : values) {
    arr.push_back({{"job", key.job},
                   {"event", key.opening.value},
                   {"amount", amount}});
  }
  return arr;
}

std::map<IntervalKey, double> read_keyed(const json& doc, const char* key) {
  std::map<IntervalKey, double> out;
  if (!doc.contains(key)) return out;
  if (!doc.at(key).is_array()) {
    throw FormatError(std::string("field '") + key + "' is not an array");
  }
  for (const json& entry : doc.at(key)) {
    const IntervalKey k{int_field(entry, "job"),
                        EventId{int_field(entry, "event")}};
    if (!out.emplace(k, number_field(entry, "amount")).second) {
      throw FormatError(std::string("duplicate entry in '") + key + "'");
    }
  }
  return out;
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json jobs = json::array();
  for (const Job& job : inst.jobs()) {
    jobs.push_back({{"E", job.e_total},
                    {"r", job.release},
                    {"deadline", job.deadline},
                    {"p_min", job.p_min},
                    {"p_max", job.p_max},
                    {"w", job.weight},
                    {"B", job.offset}});
  }
  return {{"version", kFormatVersion},
          {"capacity", inst.capacity()},
          {"jobs", jobs}};
}

Instance instance_from_json(const json& doc) {
  check_version(doc);
  const double capacity = number_field(doc, "capacity");
  if (!doc.contains("jobs") || !doc.at("jobs").is_array()) {
    throw FormatError("missing 'jobs' array");
  }
  std::vector<Job> jobs;
  for (const json& entry : doc.at("jobs")) {
    Job job;
    job.e_total = number_field(entry, "E");
    job.release = number_field(entry, "r");
    job.deadline = number_field(entry, "deadline");
    job.p_min = number_field(entry, "p_min");
    job.p_max = number_field(entry, "p_max");
    job.weight = number_field(entry, "w");
    job.offset = entry.contains("B") ? number_field(entry, "B") : 0.0;
    jobs.push_back(job);
  }
  try {
    return Instance(capacity, std::move(jobs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json schedule_to_json(const Schedule& sched) {
  json slack_capacity = json::array();
  for (const auto& [event, amount] : sched.slack_capacity) {
    slack_capacity.push_back({{"event", event.value}, {"amount", amount}});
  }
  return {{"version", kFormatVersion},
          {"order", sched.order.ids()},
          {"times", sched.times},
          {"consumption", keyed_amounts(sched.consumption)},
          {"slack_lower", keyed_amounts(sched.slack_lower)},
          {"slack_upper", keyed_amounts(sched.slack_upper)},
          {"slack_capacity", slack_capacity},
          {"score", sched.score}};
}

Schedule schedule_from_json(const json& doc) {
  check_version(doc);
  Schedule sched;
  try {
    sched.order = EventOrder::from_ids(doc.at("order").get<std::vector<int>>());
    sched.times = doc.at("times").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad order/times: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (static_cast<int>(sched.times.size()) != sched.order.size()) {
    throw FormatError("times and order differ in length");
  }
  sched.consumption = read_keyed(doc, "consumption");
  sched.slack_lower = read_keyed(doc, "slack_lower");
  sched.slack_upper = read_keyed(doc, "slack_upper");
  if (doc.contains("slack_capacity")) {
    for (const json& entry : doc.at("slack_capacity")) {
      sched.slack_capacity[EventId{int_field(entry, "event")}] =
          number_field(entry, "amount");
    }
  }
  sched.score = doc.contains("score") ? number_field(doc, "score") : 0.0;
  return sched;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path.string());
  out << text;
  if (!out) throw FileError("write failed for " + path.string());
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  write_text_file(path, instance_to_json(inst).dump(2) + "\n");
}

Schedule read_schedule(const std::filesystem::path& path) {
  return schedule_from_json(read_json_file(path));
}

void write_schedule(const std::filesystem::path& path, const Schedule& sched) {
  write_text_file(path, schedule_to_json(sched).dump(2) + "\n");
}

}  // namespace cecsp
