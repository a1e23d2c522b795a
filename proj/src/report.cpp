#include "weylns/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace weylns {

void Report::check(std::string id, nlohmann::json params, bool pass, std::optional<std::vector<Int>> counterexample) {
  CheckRecord r;
  r.id = std::move(id);
  r.params = std::move(params);
  r.pass = pass;
  if (!pass) r.counterexample = std::move(counterexample);
  records.push_back(std::move(r));
}

void Report::merge(const Report& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::size_t Report::failed() const { return records.size() - passed(); }

nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j{{"id", r.id}, {"params", r.params}, {"status", r.pass ? "pass" : "fail"}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return {{"summary", {{"total", r.records.size()}, {"passed", r.passed()}, {"failed", r.failed()}}},
          {"records", std::move(records)}};
}

std::string to_line(const CheckRecord& r) {
  std::ostringstream os;
  os << std::left << std::setw(5) << (r.pass ? "PASS" : "FAIL") << ' ' << std::setw(28) << r.id << ' '
     << r.params.dump();
  if (r.counterexample) {
    os << "  counterexample=[";
    for (std::size_t i = 0; i < r.counterexample->size(); ++i) os << (i ? "," : "") << (*r.counterexample)[i];
    os << ']';
  }
  if (!r.note.empty()) os << "  " << r.note;
  return os.str();
}

std::string to_table(const Report& r) {
  std::ostringstream os;
  for (const auto& rec : r.records) os << to_line(rec) << '\n';
  os << r.passed() << " passed, " << r.failed() << " failed, " << r.records.size() << " total\n";
  return os.str();
}

} // namespace weylns
