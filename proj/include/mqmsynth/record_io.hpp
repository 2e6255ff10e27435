#ifndef MQMSYNTH_RECORD_IO_HPP
#define MQMSYNTH_RECORD_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mqmsynth/core.hpp"

namespace mqmsynth {

// JSONL record format, one object per line:
//   {"src": "...", "mt": "...", "ref": "...",
//    "spans": [{"start": 0, "end": 2, "severity": "MAJOR"}],
//    "labels": ["BAD", "BAD", "BAD", "OK"], "score": -0.250000}
// `ref` is optional. `spans`/`labels`/`score` are present only on labeled
// records. Stage outputs may add `probs`, `coarse_labels`, `severities` and
// `provenance`.

/// One line without the trailing newline. Scores use 6 decimal places.
std::string to_json_line(const MqmRecord& record);

/// Parses and validates one line.
MqmRecord from_json_line(std::string_view line);

std::vector<MqmRecord> read_jsonl(std::istream& in);
std::vector<MqmRecord> read_jsonl_file(const std::string& path);

void write_jsonl(std::ostream& out, const std::vector<MqmRecord>& records);
void write_jsonl_file(const std::string& path, const std::vector<MqmRecord>& records);

}  // namespace mqmsynth

#endif  // MQMSYNTH_RECORD_IO_HPP
