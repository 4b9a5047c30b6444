// JSON documents for instances and schedules.
//
// Instance: { "version": 1, "capacity": P,
//             "jobs": [ { "E", "r", "deadline", "p_min", "p_max", "w", "B" } ] }
// Schedule: { "version": 1, "order": [event ids], "times": [t_1 .. t_2n],
//             "consumption": [ { "job", "event", "amount" } ],
//             "slack_lower", "slack_upper": same shape as consumption,
//             "slack_capacity": [ { "event", "amount" } ], "score" }

#ifndef CECSP_INSTANCE_IO_HPP
#define CECSP_INSTANCE_IO_HPP

#include <filesystem>
#include <string>

#include "cecsp/core.hpp"
#include "json.hpp"

namespace cecsp {

inline constexpr int kFormatVersion = 1;

nlohmann::json instance_to_json(const Instance& inst);
// Throws FormatError.
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const nlohmann::json& doc);

// Throw FileError on I/O problems and FormatError on malformed content.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Schedule read_schedule(const std::filesystem::path& path);
void write_schedule(const std::filesystem::path& path, const Schedule& sched);

}  // namespace cecsp

#endif  // CECSP_INSTANCE_IO_HPP
