#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sumset/corpus.hpp"
#include "sumset/hull.hpp"
#include "sumset/io.hpp"
#include "sumset/minkowski.hpp"
#include "sumset/positioning.hpp"
#include "sumset/theorems.hpp"
#include "sumset/transport.hpp"

namespace sumsetlab {

using namespace sumset;

namespace {

struct Options {
  std::string output;
  std::int64_t max_resolution = kDefaultMaxResolution;
  std::vector<std::string> files;
  std::string t;
  std::optional<int> k;
  std::optional<int> m;
  std::string l;
  int axis = 1;
  std::optional<std::uint64_t> count;
  std::string seed;
  std::string checker;
  std::string family;
  int d = 2;
  std::string v;
  std::string grid_q = "2,4,8";
  std::string format = "csv";
  bool equalize = false;
  bool check_steps = false;
};

std::size_t max_cells_from_env() {
  const char* text = std::getenv("SUMSETLAB_MAX_CELLS");
  if (text == nullptr || *text == '\0') return kDefaultMaxCells;
  std::size_t value = 0;
  const char* end = text + std::char_traits<char>::length(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw InputError(std::string("SUMSETLAB_MAX_CELLS must be a positive integer, got '") + text + "'");
  }
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) return kDefaultSeed;
  try {
    std::size_t used = 0;
    auto value = std::stoull(text, &used, 0);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw InputError("--seed expects an unsigned 64-bit integer, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

RationalScalar scalar_or(const std::string& text, const RationalScalar& fallback) {
  return text.empty() ? fallback : RationalScalar::parse(text);
}

void require_files(const Options& o, std::size_t n, const std::string& what) {
  if (o.files.size() != n) {
    throw InputError(what + " expects " + std::to_string(n) + " input file(s), got " + std::to_string(o.files.size()));
  }
}

GridSet load_grid(const std::string& path, const Limits& limits, const std::string& what) {
  try {
    return set_from_json(read_json(path), limits).require_grid(what);
  } catch (const CapacityError& e) {
    throw CapacityError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

IntervalSet load_intervals(const std::string& path) {
  try {
    return intervals_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Polytope from a polytope file, a set file (hull of cells and points) or an
// interval file (its hull segment).
Polytope load_polytope(const std::string& path, const Limits& limits) {
  Json j = read_json(path);
  try {
    if (is_polytope_json(j)) return polytope_from_json(j);
    if (is_interval_json(j)) {
      IntervalSet s = intervals_from_json(j);
      if (s.empty()) throw InputError("empty interval set");
      return hull_of(1, {{s.min()}, {s.max()}});
    }
    SetDefinition def = set_from_json(j, limits);
    std::vector<RationalVector> pts = hull_candidates(def.grid);
    pts.insert(pts.end(), def.points.begin(), def.points.end());
    if (pts.empty()) throw InputError("empty set");
    return hull_of(def.grid.dim(), pts);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json corpus_summary(const SweepConfig& config, const std::vector<SweepRecord>& records) {
  std::uint64_t holds = 0, tight = 0;
  Json failures = Json::array();
  for (const auto& r : records) {
    if (r.holds) {
      ++holds;
    } else {
      failures.push_back({{"instance", r.instance}, {"report", to_json(r.report)}});
    }
    if (r.tight) ++tight;
  }
  return {{"checker", config.checker},
          {"seed", config.seed},
          {"count", records.size()},
          {"holds", holds},
          {"counterexamples", records.size() - holds},
          {"tight", tight},
          {"failures", failures}};
}

struct Outcome {
  std::string text;
  int code = kExitOk;
};

Outcome json_outcome(const Json& j, bool ok) { return {j.dump(2) + "\n", ok ? kExitOk : kExitCounterexample}; }

Outcome run_check(const Options& o, const Limits& limits) {
  const std::string& name = o.checker;
  if (o.files.empty()) {
    SweepConfig config;
    config.checker = name;
    config.count = o.count.value_or(100);
    config.seed = parse_seed(o.seed);
    if (!o.t.empty()) config.t = RationalScalar::parse(o.t);
    config.k = o.k;
    config.m = o.m;
    config.limits = limits;
    Json summary = corpus_summary(config, sweep(config));
    return json_outcome(summary, summary["counterexamples"] == 0);
  }
  if (o.count) throw InputError("--count only applies when no input files are given");
  VerdictReport r;
  if (name == "lemma-distinct") {
    require_files(o, 3, name);
    r = check_lemma_distinct(load_intervals(o.files[0]), load_intervals(o.files[1]), load_intervals(o.files[2]));
  } else if (name == "lemma-iterated") {
    std::vector<IntervalSet> ys;
    for (const auto& f : o.files) ys.push_back(load_intervals(f));
    r = check_lemma_iterated(ys);
  } else if (name == "freiman") {
    require_files(o, 1, name);
    r = freiman_iterated_bound(load_intervals(o.files[0]), o.k.value_or(2));
  } else if (name == "cauchy-davenport") {
    require_files(o, 2, name);
    r = check_cauchy_davenport(load_intervals(o.files[0]), load_intervals(o.files[1]));
  } else if (name == "plunnecke") {
    require_files(o, 2, name);
    Json x = read_json(o.files[0]), y = read_json(o.files[1]);
    if (is_interval_json(x) && is_interval_json(y)) {
      r = check_plunnecke(intervals_from_json(x), intervals_from_json(y), o.m.value_or(2));
    } else {
      r = check_plunnecke(load_grid(o.files[0], limits, name), load_grid(o.files[1], limits, name), o.m.value_or(2),
                          limits);
    }
  } else if (name == "thm-distinct") {
    require_files(o, 2, name);
    r = check_thm_distinct(load_grid(o.files[0], limits, name), load_grid(o.files[1], limits, name),
                           scalar_or(o.t, RationalScalar(1, 2)), limits);
  } else if (name == "thm-iterated") {
    require_files(o, 1, name);
    Json a = read_json(o.files[0]);
    if (is_interval_json(a)) {
      r = check_thm_iterated(intervals_from_json(a), o.k.value_or(2));
    } else {
      r = check_thm_iterated(load_grid(o.files[0], limits, name), o.k.value_or(2), std::nullopt, limits);
    }
  } else if (name == "long-fibre") {
    require_files(o, 2, name);
    GridSet a = load_grid(o.files[0], limits, name), b = load_grid(o.files[1], limits, name);
    RationalScalar t = scalar_or(o.t, RationalScalar(1, 2));
    Rational l = o.l.empty() ? constant_l(a.dim(), t) : parse_rational(o.l);
    r = check_long_fibre_claim(a, b, t, l, limits);
  } else {
    throw InputError("checker '" + name + "' takes no input files; use --count and --seed");
  }
  return json_outcome(to_json(r), r.holds);
}

Outcome run_sweep(const Options& o, const Limits& limits) {
  SweepConfig config;
  config.checker = o.checker;
  config.count = o.count.value_or(o.checker == "sharp-family" ? 9 : 100);
  config.seed = parse_seed(o.seed);
  if (!o.t.empty()) config.t = RationalScalar::parse(o.t);
  config.k = o.k;
  config.m = o.m;
  config.limits = limits;
  std::vector<SweepRecord> records = sweep(config);
  bool ok = true;
  for (const auto& r : records) ok = ok && r.holds;
  if (o.format == "json") {
    Json rows = Json::array();
    for (const auto& r : records) {
      rows.push_back({{"seed", r.seed},
                      {"instance", r.instance},
                      {"d", r.d},
                      {"q", r.q ? Json(*r.q) : Json()},
                      {"t_or_k", r.t_or_k},
                      {"primary_measure", to_string(r.primary)},
                      {"threshold", to_string(r.threshold)},
                      {"hull_ratio", r.hull_ratio ? Json(to_string(*r.hull_ratio)) : Json()},
                      {"holds", r.holds},
                      {"tight", r.tight},
                      {"report", to_json(r.report)}});
    }
    return json_outcome(rows, ok);
  }
  std::ostringstream csv;
  write_csv_header(csv);
  for (const auto& r : records) write_csv_row(csv, r);
  return {csv.str(), ok ? kExitOk : kExitCounterexample};
}

Outcome run_sharp_family(const Options& o, const Limits& limits) {
  SharpFamily fam;
  fam.dim = o.d;
  if (o.family == "two-set") {
    if (o.t.empty()) throw InputError("sharp-family two-set needs -t P/R");
    if (o.k) throw InputError("sharp-family two-set does not take -k");
    fam.t = RationalScalar::parse(o.t);
  } else {
    if (!o.k) throw InputError("sharp-family iterated needs -k K");
    if (!o.t.empty()) throw InputError("sharp-family iterated does not take -t");
    fam.k = *o.k;
  }
  for (const auto& part : split(o.v, ',')) fam.v.push_back(parse_rational(part));
  std::vector<std::int64_t> qs;
  for (const auto& part : split(o.grid_q, ',')) {
    Rational q = parse_rational(part);
    if (q.get_den() != 1 || q < 1) throw InputError("--grid-q expects positive integers");
    qs.push_back(to_int64(q.get_num()));
  }
  VerdictReport r = sharp_family_exact(fam, qs, limits);
  return json_outcome(to_json(r), r.holds);
}

Outcome run_position(const Options& o, const Limits& limits) {
  require_files(o, 2, "position");
  Polytope x = load_polytope(o.files[0], limits), y = load_polytope(o.files[1], limits);
  PositioningResult res = position(x, y, {o.check_steps});
  VerdictReport check = verify_certificate(res.certificate);
  Json out = {{"map", to_json(res.map)},
              {"translation", to_json(res.translation)},
              {"certificate", to_json(res.certificate)},
              {"verdict", to_json(check)}};
  bool ok = check.holds;
  if (o.equalize) {
    EqualizedCertificate eq = equalize_lambdas(res.certificate);
    VerdictReport eq_check = verify_certificate(eq.certificate);
    out["equalized"] = {{"scaling", to_json(eq.scaling)},
                        {"certificate", to_json(eq.certificate)},
                        {"verdict", to_json(eq_check)}};
    ok = ok && eq_check.holds;
  }
  return json_outcome(out, ok);
}

Outcome run_hull(const Options& o, const Limits& limits) {
  require_files(o, 1, "hull");
  Json j = read_json(o.files[0]);
  Json out;
  if (is_interval_json(j)) {
    IntervalSet s = intervals_from_json(j);
    if (s.empty()) throw InputError(o.files[0] + ": empty interval set");
    out["polytope"] = to_json(hull_of(1, {{s.min()}, {s.max()}}));
    out["volume"] = to_string(s.hull_length());
    if (s.measure() > 0) out["hull_ratio"] = to_string(hull_ratio(s));
    return json_outcome(out, true);
  }
  Polytope p = load_polytope(o.files[0], limits);
  out["polytope"] = to_json(p);
  out["volume"] = to_string(hull_volume(p));
  if (!is_polytope_json(j)) {
    SetDefinition def = set_from_json(j, limits);
    if (volume(def.grid) > 0) out["hull_ratio"] = to_string(hull_ratio(def.grid, def.points));
  }
  return json_outcome(out, true);
}

Outcome dispatch(CLI::App& app, const Options& o, const Limits& limits) {
  if (app.got_subcommand("sum")) {
    require_files(o, 2, "sum");
    GridSet s = sum(load_grid(o.files[0], limits, "sum"), load_grid(o.files[1], limits, "sum"), limits);
    return json_outcome(to_json(s), true);
  }
  if (app.got_subcommand("isum")) {
    require_files(o, 1, "isum");
    if (!o.k) throw InputError("isum needs -k K");
    GridSet s = iterated_sum(load_grid(o.files[0], limits, "isum"), *o.k, limits);
    return json_outcome(to_json(s), true);
  }
  if (app.got_subcommand("delta")) {
    require_files(o, 2, "delta");
    GridSet a = load_grid(o.files[0], limits, "delta"), b = load_grid(o.files[1], limits, "delta");
    RationalScalar t = scalar_or(o.t, RationalScalar(1, 2));
    t.require_open_unit();
    Rational delta = delta_t(a, b, t, limits);
    VerdictReport r;
    r.kind = "delta";
    r.inputs_digest = digest(to_json(a).dump() + to_json(b).dump() + to_string(t));
    r.set("delta", delta);
    r.set("sum_volume", (delta + 1) * volume(a));
    r.set("A", volume(a));
    r.set("threshold", distinct_threshold(a.dim(), t));
    r.bound = 0;
    r.holds = delta >= 0;
    r.tight = delta == 0;
    return json_outcome(to_json(r), r.holds);
  }
  if (app.got_subcommand("hull")) return run_hull(o, limits);
  if (app.got_subcommand("position")) return run_position(o, limits);
  if (app.got_subcommand("transport")) {
    require_files(o, 2, "transport");
    GridSet a = load_grid(o.files[0], limits, "transport"), b = load_grid(o.files[1], limits, "transport");
    RationalScalar t = scalar_or(o.t, RationalScalar(1, 2));
    TransportRun run = run_transport(a, b, t, o.axis - 1, limits);
    Json out = {{"axis", o.axis},
                {"t", to_string(t)},
                {"plan", to_json(run.plan)},
                {"rho", to_json(run.rho)},
                {"s1",
                 {{"measure", to_string(run.s1.measure)},
                  {"per_pair_identity", run.s1.per_pair_identity},
                  {"contained_in_sum", run.s1_contained}}}};
    return json_outcome(out, run.rho.holds && run.s1.per_pair_identity);
  }
  if (app.got_subcommand("check")) return run_check(o, limits);
  if (app.got_subcommand("sharp-family")) return run_sharp_family(o, limits);
  return run_sweep(o, limits);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Minkowski sums, sumset thresholds and Brunn-Minkowski stability checks", "sumsetlab"};
  app.require_subcommand(1, 1);
  Options o;
  app.fallthrough();  // global options may follow the subcommand
  app.add_option("-o,--output", o.output, "Write the report to this file instead of stdout");
  app.add_option("--max-resolution", o.max_resolution, "Cap on the working grid resolution")
      ->check(CLI::PositiveNumber);

  auto files = [&](CLI::App* sub, const char* what) { sub->add_option("files", o.files, what)->required(); };
  auto t_opt = [&](CLI::App* sub) { sub->add_option("-t", o.t, "Interpolation parameter P/R"); };

  auto* sum_cmd = app.add_subcommand("sum", "Minkowski sum A + B");
  files(sum_cmd, "A.json B.json");
  auto* isum_cmd = app.add_subcommand("isum", "Iterated sum k.A");
  files(isum_cmd, "A.json");
  isum_cmd->add_option("-k", o.k, "Number of summands")->required()->check(CLI::PositiveNumber);
  auto* delta_cmd = app.add_subcommand("delta", "Brunn-Minkowski deficit |tA+(1-t)B|/|A| - 1");
  files(delta_cmd, "A.json B.json");
  t_opt(delta_cmd);
  auto* hull_cmd = app.add_subcommand("hull", "Convex hull, hull volume and hull ratio");
  files(hull_cmd, "A.json");
  auto* pos_cmd = app.add_subcommand("position", "Affine positioning with certificate");
  files(pos_cmd, "X.json Y.json");
  pos_cmd->add_flag("--equalize", o.equalize, "Also rescale so all lambda_i are equal");
  pos_cmd->add_flag("--check-steps", o.check_steps, "Re-verify the properties after every shear");
  auto* tr_cmd = app.add_subcommand("transport", "Fibre transport, rho_t and the S^1 construction");
  files(tr_cmd, "A.json B.json");
  t_opt(tr_cmd);
  tr_cmd->add_option("--axis", o.axis, "Fibre axis (1-based)")->check(CLI::PositiveNumber);
  auto* check_cmd = app.add_subcommand("check", "Run a checker on input files or a seeded corpus");
  check_cmd->add_option("checker", o.checker, "Checker name")
      ->required()
      ->check(CLI::IsMember({"lemma-distinct", "lemma-iterated", "freiman", "cauchy-davenport", "plunnecke",
                             "thm-distinct", "thm-iterated", "long-fibre"}));
  check_cmd->add_option("files", o.files, "Input files; omit to run a seeded corpus");
  t_opt(check_cmd);
  check_cmd->add_option("-k", o.k, "k for freiman / thm-iterated / lemma-iterated corpora")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("-m", o.m, "Exponent for plunnecke")->check(CLI::PositiveNumber);
  check_cmd->add_option("-L", o.l, "Fibre threshold L for long-fibre (default L_{d,t})");
  check_cmd->add_option("--count", o.count, "Corpus size");
  check_cmd->add_option("--seed", o.seed, "Corpus seed (default 0xB4A11)");
  auto* sharp_cmd = app.add_subcommand("sharp-family", "Exact evaluation of the sharp families");
  sharp_cmd->add_option("family", o.family, "two-set or iterated")
      ->required()
      ->check(CLI::IsMember({"two-set", "iterated"}));
  sharp_cmd->add_option("-d", o.d, "Dimension")->required()->check(CLI::PositiveNumber);
  t_opt(sharp_cmd);
  sharp_cmd->add_option("-k", o.k, "Number of summands")->check(CLI::PositiveNumber);
  sharp_cmd->add_option("-v", o.v, "Far point, comma separated")->required();
  sharp_cmd->add_option("--grid-q", o.grid_q, "Grid cross-check resolutions, comma separated");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a checker over a seeded corpus, one record per instance");
  sweep_cmd->add_option("--checker", o.checker, "Checker name")->required();
  sweep_cmd->add_option("--count", o.count, "Number of instances");
  sweep_cmd->add_option("--seed", o.seed, "Corpus seed (default 0xB4A11)");
  sweep_cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  t_opt(sweep_cmd);
  sweep_cmd->add_option("-k", o.k, "Fixed k")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("-m", o.m, "Fixed m")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    Limits limits;
    limits.max_cells = max_cells_from_env();
    limits.max_resolution = o.max_resolution;
    Outcome result = dispatch(app, o, limits);
    if (o.output.empty()) {
      out << result.text;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + o.output + "'");
      file << result.text;
    }
    return result.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace sumsetlab
