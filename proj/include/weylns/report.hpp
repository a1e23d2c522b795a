#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylns/checked.hpp"

namespace weylns {

/// One checked identity instance.
struct CheckRecord {
  std::string id;
  nlohmann::json params;
  bool pass = true;
  std::optional<std::vector<Int>> counterexample;
  std::string note;
};

struct Report {
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void check(std::string id, nlohmann::json params, bool pass,
             std::optional<std::vector<Int>> counterexample = std::nullopt);
  void merge(const Report& other);

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

nlohmann::json to_json(const CheckRecord& r);
nlohmann::json to_json(const Report& r);
/// Fixed-width table, one line per record.
std::string to_table(const Report& r);
std::string to_line(const CheckRecord& r);

} // namespace weylns
