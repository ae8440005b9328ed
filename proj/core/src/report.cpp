#include <cmath>

#include "amalgam/errors.hpp"
#include "amalgam/harness.hpp"
#include "json.hpp"

namespace amalgam {

namespace {

using nlohmann::json;

// JSON has no infinities; keep them readable as strings.
json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw DomainError("malformed report: expected a number");
}

}  // namespace

void SuiteReport::add(Record record) {
  if (record.anchor.empty()) throw DomainError("record '" + record.id + "' has no anchor");
  if (record.id.empty()) throw DomainError("record without an id");
  records_.push_back(std::move(record));
}

void SuiteReport::add(const std::string& id, const std::string& anchor, double lhs, double rhs,
                      bool pass) {
  Record r;
  r.id = id;
  r.anchor = anchor;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs != 0.0) {
    r.ratio = lhs / rhs;
  } else {
    r.ratio = lhs == 0.0 ? 0.0 : kInf;
  }
  r.pass = pass;
  add(std::move(r));
}

bool SuiteReport::pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const Record& r : records_) n += r.pass ? 0 : 1;
  return n;
}

const Record* SuiteReport::find(const std::string& id) const {
  for (const Record& r : records_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string SuiteReport::to_json(bool include_timing) const {
  json doc = json::object();
  doc["suite"] = suite_;
  json echo = json::object();
  for (const auto& [k, v] : echo_) echo[k] = v;
  doc["config_echo"] = echo;
  json records = json::array();
  for (const Record& r : records_) {
    records.push_back({{"id", r.id},
                       {"anchor", r.anchor},
                       {"lhs", number_to_json(r.lhs)},
                       {"rhs", number_to_json(r.rhs)},
                       {"ratio", number_to_json(r.ratio)},
                       {"pass", r.pass}});
  }
  doc["records"] = records;
  json constants = json::object();
  for (const auto& [k, v] : constants_) constants[k] = number_to_json(v);
  doc["constants"] = constants;
  if (include_timing) doc["wall_ms"] = wall_ms_;
  return doc.dump(2);
}

SuiteReport SuiteReport::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
    SuiteReport rep(doc.at("suite").get<std::string>());
    if (doc.contains("config_echo")) {
      for (auto it = doc.at("config_echo").begin(); it != doc.at("config_echo").end(); ++it) {
        rep.echo(it.key(), it.value().is_string() ? it.value().get<std::string>()
                                                  : it.value().dump());
      }
    }
    for (const json& r : doc.at("records")) {
      Record rec;
      rec.id = r.at("id").get<std::string>();
      rec.anchor = r.at("anchor").get<std::string>();
      rec.lhs = number_from_json(r.at("lhs"));
      rec.rhs = number_from_json(r.at("rhs"));
      rec.ratio = number_from_json(r.at("ratio"));
      rec.pass = r.at("pass").get<bool>();
      rep.add(std::move(rec));
    }
    if (doc.contains("constants")) {
      for (auto it = doc.at("constants").begin(); it != doc.at("constants").end(); ++it) {
        rep.constant(it.key(), number_from_json(it.value()));
      }
    }
    if (doc.contains("wall_ms")) rep.set_wall_ms(number_from_json(doc.at("wall_ms")));
    return rep;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace amalgam
