#include <atomic>
#include <charconv>
#include <future>
#include <thread>

#include "weylns/base_change.hpp"
#include "weylns/error.hpp"
#include "weylns/lift.hpp"
#include "weylns/sweep.hpp"
#include "weylns/weyl.hpp"

namespace weylns {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::InvalidParameters, "bad range '" + std::string(whole) + "'");
  return value;
}

std::uint64_t cell_seed(std::uint64_t seed, int n, int e, int f) {
  std::uint64_t h = seed;
  for (int v : {n, e, f}) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL;
  return h;
}

LiftTable table(int n, int e, const std::optional<int>& sabotage) {
  LiftTable t(n, e);
  if (sabotage) t.sabotage(*sabotage);
  return t;
}

} // namespace

Range Range::parse(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text, text);
    return {v, v};
  }
  return {parse_int(text.substr(0, dots), text), parse_int(text.substr(dots + 2), text)};
}

std::string Range::to_string() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Presentation: return "presentation";
    case Family::Intertwining: return "intertwining";
    case Family::Homomorphism: return "homomorphism";
    case Family::Composition: return "composition";
    case Family::ClosedForms: return "closed-forms";
    case Family::Permutation: return "permutation";
    case Family::Scaling: return "scaling";
  }
  return "?";
}

std::vector<Family> all_families() {
  return {Family::Presentation, Family::Intertwining, Family::Homomorphism, Family::Composition,
          Family::ClosedForms,       Family::Permutation,  Family::Scaling};
}

Family parse_family(std::string_view name) {
  for (Family f : all_families())
    if (to_string(f) == name) return f;
  throw Error(ErrorCode::InvalidParameters, "unknown family '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidParameters, what); };
  for (const auto& [name, r] : {std::pair{"n", n}, std::pair{"e", e}, std::pair{"f", f}})
    if (r.lo > r.hi) fail(std::string("empty range for --") + name + ": " + r.to_string());
  if (n.lo < 3) fail("n must be >= 3");
  if (e.lo < 1 || f.lo < 1) fail("degrees must be >= 1");
  if (!unbounded) {
    if (n.hi > kMaxN) fail("n > " + std::to_string(kMaxN) + " needs --unbounded");
    if (e.hi > kMaxDegree || f.hi > kMaxDegree) fail("degrees > " + std::to_string(kMaxDegree) + " need --unbounded");
  }
  if (families.empty()) fail("no families selected");
  if (words < 0 || word_length < 0 || trials < 0) fail("counts must be non-negative");
  if (jobs < 1) fail("jobs must be >= 1");
}

nlohmann::json SweepSpec::to_json() const {
  nlohmann::json fams = nlohmann::json::array();
  for (Family fam : families) fams.push_back(std::string(weylns::to_string(fam)));
  return {{"n", n.to_string()},
          {"e", e.to_string()},
          {"f", f.to_string()},
          {"families", fams},
          {"seed", seed},
          {"words", words},
          {"word_length", word_length},
          {"trials", trials},
          {"sabotage", sabotage ? nlohmann::json(*sabotage) : nlohmann::json(nullptr)},
          {"unbounded", unbounded}};
}

Report run_sweep(const SweepSpec& spec, const std::function<void(const CheckRecord&)>& on_record) {
  spec.validate();
  std::vector<std::function<Report()>> cells;
  const auto sab = spec.sabotage;
  for (Family fam : spec.families)
    for (int n = spec.n.lo; n <= spec.n.hi; ++n) {
      if (fam == Family::Presentation) {
        cells.emplace_back([n] { return check_presentation(n); });
        continue;
      }
      for (int e = spec.e.lo; e <= spec.e.hi; ++e) {
        switch (fam) {
          case Family::Intertwining:
            cells.emplace_back([=] { return verify_intertwining(table(n, e, sab)); });
            break;
          case Family::Homomorphism:
            cells.emplace_back([=] { return verify_homomorphism(table(n, e, sab)); });
            break;
          case Family::ClosedForms:
            cells.emplace_back([=] { return verify_closed_forms(table(n, e, sab)); });
            break;
          case Family::Permutation:
            cells.emplace_back([=] { return verify_permutation_forms(table(n, e, sab)); });
            break;
          case Family::Composition:
            for (int f = spec.f.lo; f <= spec.f.hi; ++f)
              cells.emplace_back([=, &spec] {
                return verify_composition(table(n, e, sab), LiftTable(n * e, f), LiftTable(n, e * f), spec.words,
                                          spec.word_length, cell_seed(spec.seed, n, e, f));
              });
            break;
          case Family::Scaling:
            cells.emplace_back([=, &spec] { return verify_pullback_scaling(n, e, spec.trials, spec.seed); });
            for (int f = spec.f.lo; f <= spec.f.hi; ++f)
              cells.emplace_back([=] { return verify_pullback_composition(n, e, f); });
            break;
          case Family::Presentation:
            break;
        }
      }
    }

  std::vector<std::promise<Report>> promises(cells.size());
  std::vector<std::future<Report>> results;
  for (auto& p : promises) results.push_back(p.get_future());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        promises[i].set_value(cells[i]());
      } catch (...) {
        promises[i].set_exception(std::current_exception());
      }
    }
  };
  std::vector<std::jthread> threads;
  if (spec.jobs > 1)
    for (unsigned j = 0; j < spec.jobs; ++j) threads.emplace_back(worker);
  else
    worker();

  Report report;
  std::exception_ptr error;
  for (auto& r : results) {
    Report cell;
    try {
      cell = r.get();
    } catch (...) {
      if (!error) error = std::current_exception();
      continue;
    }
    if (error) continue;
    if (on_record)
      for (const auto& rec : cell.records) on_record(rec);
    report.merge(cell);
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
  return report;
}

nlohmann::json report_document(const SweepSpec& spec, const Report& report) {
  auto doc = to_json(report);
  nlohmann::json out = {{"schema", "weylns/1"}, {"spec", spec.to_json()}};
  out["summary"] = doc["summary"];
  out["records"] = doc["records"];
  return out;
}

} // namespace weylns
