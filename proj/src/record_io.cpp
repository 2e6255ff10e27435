#include "mqmsynth/record_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace mqmsynth {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string out(buf);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

template <typename T, typename F>
std::string array(const std::vector<T>& values, F&& render) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += render(values[i]);
  }
  out += ']';
  return out;
}

std::string name_quoted(std::string_view name) { return "\"" + std::string(name) + "\""; }

std::vector<std::string> string_array(const json& j, const char* key) {
  std::vector<std::string> out;
  for (const json& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

std::string to_json_line(const MqmRecord& r) {
  std::string out = "{\"src\":" + quoted(join(r.src)) + ",\"mt\":" + quoted(join(r.mt));
  if (r.ref) out += ",\"ref\":" + quoted(join(*r.ref));
  if (r.labeled) {
    out += ",\"spans\":" + array(r.spans, [](const ErrorSpan& s) {
      return "{\"start\":" + std::to_string(s.start) + ",\"end\":" + std::to_string(s.end) +
             ",\"severity\":" + name_quoted(to_string(s.severity)) + "}";
    });
    out += ",\"labels\":" + array(r.word_labels, [](WordLabel l) { return name_quoted(to_string(l)); });
    out += ",\"score\":" + fixed6(r.score);
  }
  if (r.probs) out += ",\"probs\":" + json(*r.probs).dump();
  if (r.coarse_labels)
    out += ",\"coarse_labels\":" +
           array(*r.coarse_labels, [](WordLabel l) { return name_quoted(to_string(l)); });
  if (r.severities)
    out += ",\"severities\":" +
           array(*r.severities, [](Severity s) { return name_quoted(to_string(s)); });
  if (r.provenance) out += ",\"provenance\":" + quoted(*r.provenance);
  out += '}';
  return out;
}

MqmRecord from_json_line(std::string_view line) {
  MqmRecord r;
  try {
    const json j = json::parse(line);
    r.src = tokenize(j.at("src").get<std::string>());
    r.mt = tokenize(j.at("mt").get<std::string>());
    if (j.contains("ref") && !j["ref"].is_null()) r.ref = tokenize(j["ref"].get<std::string>());
    if (j.contains("labels") || j.contains("spans") || j.contains("score")) {
      r.labeled = true;
      for (const json& s : j.at("spans"))
        r.spans.push_back({s.at("start").get<int>(), s.at("end").get<int>(),
                           severity_from_string(s.at("severity").get<std::string>())});
      for (const std::string& l : string_array(j, "labels")) r.word_labels.push_back(word_label_from_string(l));
      r.score = j.at("score").get<double>();
    }
    if (j.contains("probs")) r.probs = j["probs"].get<std::vector<double>>();
    if (j.contains("coarse_labels")) {
      WordLabels labels;
      for (const std::string& l : string_array(j, "coarse_labels")) labels.push_back(word_label_from_string(l));
      r.coarse_labels = std::move(labels);
    }
    if (j.contains("severities")) {
      std::vector<Severity> sev;
      for (const std::string& s : string_array(j, "severities")) sev.push_back(severity_from_string(s));
      r.severities = std::move(sev);
    }
    if (j.contains("provenance")) r.provenance = j["provenance"].get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
  try {
    validate(r);
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("invalid record: ") + e.what());
  }
  return r;
}

std::vector<MqmRecord> read_jsonl(std::istream& in) {
  std::vector<MqmRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(from_json_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<MqmRecord> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_jsonl(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_jsonl(std::ostream& out, const std::vector<MqmRecord>& records) {
  for (const MqmRecord& r : records) {
    validate(r);
    out << to_json_line(r) << '\n';
  }
}

void write_jsonl_file(const std::string& path, const std::vector<MqmRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_jsonl(out, records);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace mqmsynth
