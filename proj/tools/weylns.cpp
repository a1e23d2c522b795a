// Command-line driver for the weylns verification harness.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "weylns/base_change.hpp"
#include "weylns/config_io.hpp"
#include "weylns/error.hpp"
#include "weylns/lattice.hpp"
#include "weylns/lift.hpp"
#include "weylns/ns_model.hpp"
#include "weylns/sweep.hpp"
#include "weylns/weyl.hpp"

using namespace weylns;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<Int> parse_ints(std::string_view text) {
  std::vector<Int> out;
  std::string cleaned;
  for (char c : text) cleaned += (c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  Int v = 0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw Error(ErrorCode::ParseError, "bad integer list '" + std::string(text) + "'");
  return out;
}

// Reads a JSON value from a literal or, when prefixed with '@', from a file.
json read_json(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
    std::vector<Int> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "matrix entries must be integers");
      row.push_back(x.get<Int>());
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorCode::ShapeError, "matrix rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ShapeError, "empty matrix");
  return IntMatrix::from_rows(rows);
}

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw Error(ErrorCode::InvalidParameters, "cannot write " + path);
    }
    return file;
  }
};

void check_bounds(int n, int e, bool unbounded) {
  if (n < 3) throw Error(ErrorCode::InvalidParameters, "n must be >= 3");
  if (e < 1) throw Error(ErrorCode::InvalidParameters, "e must be >= 1");
  if (!unbounded && (n > kMaxN || e > kMaxDegree))
    throw Error(ErrorCode::InvalidParameters, "parameters past n <= " + std::to_string(kMaxN) +
                                                  ", e <= " + std::to_string(kMaxDegree) + " need --unbounded");
}

json lift_json(const LiftedGenerator& g) {
  json arcs = json::array();
  for (const auto& a : index_set(g.n, g.e, g.k).arcs) arcs.push_back({{"start", a.start()}, {"length", a.length()}});
  return {{"n", g.n},          {"e", g.e},
          {"k", g.k},          {"arcs", arcs},
          {"word", g.word.letters()}, {"permutation", g.to_cycles()},
          {"matrix", g.matrix.to_rows()}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifts of affine Weyl group actions under base change, and a Neron-Severi lattice model."};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  Output out;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "jsonl"}));
  app.add_option("--out", out.path, "Write output to this file instead of stdout");

  // verify
  SweepSpec spec;
  std::string n_text = spec.n.to_string(), e_text = spec.e.to_string(), f_text = spec.f.to_string();
  std::vector<std::string> families;
  int sabotage = -1;
  auto* verify = app.add_subcommand("verify", "Run the identity sweeps over a parameter grid");
  verify->add_option("--n", n_text, "Fiber size, value or range lo..hi")->capture_default_str();
  verify->add_option("--e", e_text, "Inner degree, value or range")->capture_default_str();
  verify->add_option("--f", f_text, "Outer degree for compositions, value or range")->capture_default_str();
  verify->add_option("--families", families, "Families to run (default: all)")->delimiter(',');
  verify->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  verify->add_option("--words", spec.words, "Random words per composition cell")->capture_default_str();
  verify->add_option("--word-length", spec.word_length, "Length of random words")->capture_default_str();
  verify->add_option("--trials", spec.trials, "Random pairs per scaling cell")->capture_default_str();
  verify->add_option("--sabotage", sabotage, "Corrupt the lift of generator k (self-test)");
  verify->add_option("--jobs", spec.jobs, "Worker threads")->capture_default_str();
  verify->add_flag("--unbounded", spec.unbounded, "Allow parameters past the default bounds");

  // realize
  int n = 3;
  int e = 1;
  int k = 0;
  bool unbounded = false;
  std::string word_text;
  std::string vector_text;
  auto* realize = app.add_subcommand("realize", "Matrix and permutation images of a Weyl word");
  realize->add_option("--n", n, "Fiber size")->required();
  realize->add_option("--word", word_text, "Letters, e.g. 0,1,2,1 (leftmost acts last)")->required();
  realize->add_option("--vector", vector_text, "Coefficients of a vector to act on");
  realize->add_flag("--unbounded", unbounded, "Allow n past the default bound");

  // pullback
  std::string config_path;
  std::string profile_text;
  std::string divisor_text;
  auto* pullback = app.add_subcommand("pullback", "Local pullback V_n -> V_ne, or a base change of a surface");
  pullback->add_option("--n", n, "Fiber size (local mode)");
  pullback->add_option("--e", e, "Local degree (local mode)");
  pullback->add_option("--vector", vector_text, "Vector in V_n to pull back");
  pullback->add_option("--config", config_path, "Surface config JSON (surface mode)");
  pullback->add_option("--profile", profile_text, "Ramification profile, e.g. t0:[2,1];t1:[3]");
  pullback->add_option("--divisor", divisor_text, "Divisor to pull back");
  pullback->add_flag("--unbounded", unbounded, "Allow parameters past the default bounds");

  // lift
  auto* lift = app.add_subcommand("lift", "Lift generators or words along R^e_n");
  lift->add_option("--n", n, "Fiber size")->required();
  lift->add_option("--e", e, "Local degree");
  lift->add_option("--k", k, "Generator index");
  lift->add_option("--word", word_text, "Lift this word instead of one generator");
  lift->add_option("--profile", profile_text, "Local degrees over one point, e.g. 2,1 (Picard-Lefschetz lift)");
  lift->add_flag("--unbounded", unbounded, "Allow parameters past the default bounds");

  // act
  std::string iso_text;
  std::string after_text;
  auto* act_cmd = app.add_subcommand("act", "Apply a universal isometry to a divisor");
  act_cmd->add_option("--config", config_path, "Surface config JSON")->required();
  act_cmd->add_option("--iso", iso_text, "Isometry JSON, or @file")->required();
  act_cmd->add_option("--divisor", divisor_text, "Divisor, e.g. 'O + 2F + v[t0,1]'")->required();
  act_cmd->add_option("--after", after_text, "Act on the pulled-back surface for this profile");

  // classify
  std::string matrix_text;
  auto* classify = app.add_subcommand("classify", "Canonical form of an isometry matrix");
  classify->add_option("--config", config_path, "Surface config JSON")->required();
  auto* matrix_opt = classify->add_option("--matrix", matrix_text, "Matrix rows as JSON, or @file");
  classify->add_option("--iso", iso_text, "Build the matrix from this isometry first")->excludes(matrix_opt);

  // ns-build
  auto* ns_build = app.add_subcommand("ns-build", "Gram matrix of the lattice model of a surface");
  ns_build->add_option("--config", config_path, "Surface config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    std::ostream& os = out.stream();

    if (*verify) {
      spec.n = Range::parse(n_text);
      spec.e = Range::parse(e_text);
      spec.f = Range::parse(f_text);
      if (!families.empty()) {
        spec.families.clear();
        for (const auto& name : families) spec.families.push_back(parse_family(name));
      }
      if (sabotage >= 0) spec.sabotage = sabotage;
      spec.validate();
      std::function<void(const CheckRecord&)> stream;
      if (format == "text")
        stream = [&](const CheckRecord& r) { os << to_line(r) << '\n' << std::flush; };
      else if (format == "jsonl")
        stream = [&](const CheckRecord& r) { os << to_json(r).dump() << '\n' << std::flush; };
      const Report report = run_sweep(spec, stream);
      if (format == "json")
        os << report_document(spec, report).dump(2) << '\n';
      else if (format == "text")
        os << report.passed() << " passed, " << report.failed() << " failed, " << report.records.size() << " total\n";
      return report.ok() ? 0 : kExitFail;
    }

    if (*realize) {
      check_bounds(n, 1, unbounded);
      const FibralSpace space(n);
      const auto w = WeylWord::parse(space, word_text);
      const auto m = matrix_of(w);
      const auto p = to_permutation(w);
      json doc = {{"n", n}, {"word", w.letters()}, {"matrix", m.to_rows()}, {"permutation", p.to_cycles()}};
      if (!vector_text.empty()) {
        const FibralVector v(space, parse_ints(vector_text));
        doc["vector"] = v.coeffs();
        doc["image"] = act(w, v).coeffs();
      }
      if (format == "text") {
        os << "word " << w.to_string() << " in W_" << n << "\n" << to_string(m) << "permutation " << p.to_cycles()
           << '\n';
        if (!vector_text.empty()) {
          const FibralVector v(space, parse_ints(vector_text));
          os << render(v) << "  ->  " << render(act(w, v)) << '\n';
        }
      } else {
        os << doc.dump(2) << '\n';
      }
      return 0;
    }

    if (*pullback) {
      if (config_path.empty()) {
        check_bounds(n, e, unbounded);
        const FibralSpace space(n);
        const auto m = pullback_matrix(n, e);
        json doc = {{"n", n}, {"e", e}, {"matrix", m.to_rows()}};
        std::optional<FibralVector> v, image;
        if (!vector_text.empty()) {
          v = FibralVector(space, parse_ints(vector_text));
          image = pullback_local(e, *v);
          doc["vector"] = v->coeffs();
          doc["image"] = image->coeffs();
          doc["square"] = inner_product(*v, *v);
          doc["image_square"] = inner_product(*image, *image);
        }
        if (format == "text") {
          os << "p* : V_" << n << " -> V_" << n * e << "\n" << to_string(m);
          if (v)
            os << render(*v) << "  ->  " << render(*image, 'w') << "\n"
               << "squares " << doc["square"] << " -> " << doc["image_square"] << '\n';
        } else {
          os << doc.dump(2) << '\n';
        }
        return 0;
      }
      if (profile_text.empty()) throw Error(ErrorCode::InvalidParameters, "--config needs --profile");
      const auto config = load_config(config_path);
      const auto profile = RamificationProfile::parse(profile_text);
      const auto pb = pullback_ns(config, profile);
      const NSLattice base(config);
      const NSLattice target(pb.config);
      json doc = {{"degree", pb.degree}, {"config", to_json(pb.config)}, {"chi", pb.config.chi()},
                  {"map", pb.map.to_rows()}};
      std::string image;
      if (!divisor_text.empty()) {
        const auto d = base.parse(divisor_text);
        image = target.render({pb.map.apply(d.coeffs)});
        doc["divisor"] = base.render(d);
        doc["image"] = image;
      }
      if (format == "text") {
        os << "degree " << pb.degree << ", chi " << config.chi() << " -> " << pb.config.chi() << "\nfibers:";
        for (const auto& f : pb.config.fibers()) os << ' ' << f.name << "=I_" << f.n;
        os << '\n';
        if (!divisor_text.empty()) os << doc["divisor"].get<std::string>() << "  ->  " << image << '\n';
      } else {
        os << doc.dump(2) << '\n';
      }
      return 0;
    }

    if (*lift) {
      if (!profile_text.empty()) {
        std::vector<int> degrees;
        for (Int d : parse_ints(profile_text)) degrees.push_back(static_cast<int>(d));
        for (int d : degrees) check_bounds(n, d, unbounded);
        const auto pl = pl_lift(degrees, n, k);
        json factors = json::array();
        for (std::size_t y = 0; y < pl.factors.size(); ++y)
          factors.push_back({{"e", degrees[y]}, {"fiber", n * degrees[y]}, {"word", pl.factors[y].letters()}});
        if (format == "text") {
          for (std::size_t y = 0; y < pl.factors.size(); ++y)
            os << "y" << y << " (I_" << n * degrees[y] << "): " << pl.factors[y].to_string() << '\n';
        } else {
          os << json{{"n", n}, {"k", pl.k}, {"factors", factors}}.dump(2) << '\n';
        }
        return 0;
      }
      check_bounds(n, e, unbounded);
      if (!word_text.empty()) {
        const auto w = WeylWord::parse(FibralSpace(n), word_text);
        const auto lifted = lift_word(n, e, w);
        const auto p = to_permutation(lifted);
        if (format == "text")
          os << w.to_string() << "  ->  " << lifted.to_string() << "\npermutation " << p.to_cycles() << '\n';
        else
          os << json{{"n", n}, {"e", e}, {"word", w.letters()}, {"lift", lifted.letters()}, {"permutation", p.to_cycles()}}
                    .dump(2)
             << '\n';
        return 0;
      }
      const auto g = lift_generator(n, e, k);
      if (format == "text") {
        os << "R^" << e << "_" << n << "(s_" << g.k << ") = " << g.word.to_string() << "\npermutation " << g.to_cycles()
           << '\n'
           << to_string(g.matrix);
      } else {
        os << lift_json(g).dump(2) << '\n';
      }
      return 0;
    }

    if (*act_cmd) {
      const auto config = load_config(config_path);
      const auto iso = isometry_from_json(config, read_json(iso_text));
      std::optional<RamificationProfile> after;
      if (!after_text.empty()) after = RamificationProfile::parse(after_text);
      const NSLattice lattice(after ? pullback_ns(config, *after).config : config);
      const auto d = lattice.parse(divisor_text);
      const auto image = act_isometry(config, iso, d, after);
      if (format == "text")
        os << lattice.render(d) << "  ->  " << lattice.render(image) << '\n';
      else
        os << json{{"isometry", to_json(iso)}, {"divisor", lattice.render(d)}, {"image", lattice.render(image)},
                   {"coeffs", image.coeffs}}
                  .dump(2)
           << '\n';
      return 0;
    }

    if (*classify) {
      const auto config = load_config(config_path);
      const NSLattice lattice(config);
      IntMatrix m;
      if (!iso_text.empty())
        m = isometry_matrix(lattice, isometry_from_json(config, read_json(iso_text)));
      else if (!matrix_text.empty())
        m = matrix_from_json(read_json(matrix_text));
      else
        throw Error(ErrorCode::InvalidParameters, "classify needs --matrix or --iso");
      const auto c = classify_isometry(lattice, m);
      json doc;
      switch (c.kind) {
        case Classification::Kind::Universal:
          doc = {{"kind", "universal"}, {"isometry", to_json(*c.isometry)}, {"effective", c.effective}};
          break;
        case Classification::Kind::NotUniversal: doc = {{"kind", "not-universal"}, {"reason", c.reason}}; break;
        case Classification::Kind::NotIsometry: doc = {{"kind", "not-isometry"}, {"reason", c.reason}}; break;
      }
      if (c.kind != Classification::Kind::NotIsometry) {
        const auto t = check_torelli_hypotheses(lattice, m);
        doc["torelli"] = {{"fiber_preserved", t.fiber_preserved},
                          {"zero_section_preserved", t.zero_section_preserved},
                          {"components_to_components", t.components_to_components},
                          {"sections_to_sections", t.sections_to_sections}};
      }
      if (format == "text") {
        os << doc["kind"].get<std::string>();
        if (c.isometry) os << ' ' << to_json(*c.isometry).dump() << (c.effective ? " effective" : " non-effective");
        if (!c.reason.empty()) os << ": " << c.reason;
        os << '\n';
        if (doc.contains("torelli")) os << "torelli " << doc["torelli"].dump() << '\n';
      } else {
        os << doc.dump(2) << '\n';
      }
      return 0;
    }

    if (*ns_build) {
      const auto config = load_config(config_path);
      const NSLattice lattice(config);
      const auto block = of_block(config.chi());
      json doc = {{"chi", config.chi()},
                  {"rank", lattice.dim()},
                  {"trivial_rank", lattice.trivial_rank()},
                  {"labels", lattice.labels()},
                  {"gram", lattice.gram().to_rows()},
                  {"of_block", {{"odd", block.odd}, {"basis_change", block.basis_change.to_rows()},
                                {"reduced", block.reduced.to_rows()}}}};
      if (format == "text") {
        os << "chi " << config.chi() << ", rank " << lattice.dim() << ", trivial rank " << lattice.trivial_rank()
           << "\nbasis:";
        for (const auto& l : lattice.labels()) os << ' ' << l;
        os << "\n" << to_string(lattice.gram()) << "[O,F] block reduces to " << (block.odd ? "diag(1,-1)" : "U")
           << '\n';
      } else {
        os << doc.dump(2) << '\n';
      }
      return 0;
    }
  } catch (const Error& err) {
    std::cerr << "weylns: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
