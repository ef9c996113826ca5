// Command-line front end: designs, tables, toy, verify, analyze, fixture,
// replay.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ancillary/ancillary.hpp"

namespace {

using nlohmann::json;
using namespace ancillary;

// Signals an argument that parsed but cannot be used; exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("ANCILLARY_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid ANCILLARY_THREADS='" << env << "'\n";
  }
  return default_thread_count();
}

std::string num(double v, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

struct Manifest {
  std::vector<std::string> args;
  std::string subcommand;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  json extra = json::object();
};

void write_manifest(const Manifest& m, const std::string& out_path, double wall_seconds) {
  if (out_path.empty() || out_path == "-") return;
  json j;
  j["subcommand"] = m.subcommand;
  j["args"] = m.args;
  j["root_seed"] = m.seed;
  j["library_version"] = ancillary::version;
  j["wall_time_seconds"] = wall_seconds;
  j["outputs"] = m.outputs;
  for (auto it = m.extra.begin(); it != m.extra.end(); ++it) j[it.key()] = it.value();
  std::ofstream f(out_path + ".manifest.json");
  if (!f) throw std::runtime_error("cannot write manifest for " + out_path);
  f << j.dump(2) << '\n';
}

std::vector<std::size_t> parse_study(const std::string& spec) {
  std::string body = spec;
  if (body.rfind("nb=", 0) == 0) body = body.substr(3);
  std::vector<std::size_t> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 10) throw std::invalid_argument("bad");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("--study expects nb=N1,N2,... with integers >= 10, got '" + spec + "'");
    }
  }
  if (out.empty()) throw UsageError("--study lists no sample sizes");
  return out;
}

json estimate_json(const PowerEstimate& e) {
  json j;
  j["powa"] = e.powa;
  j["pow"] = e.pow;
  j["reps"] = e.reps;
  j["degenerate_count"] = e.degenerate_count;
  j["mc_se_powa"] = e.mc_se_powa;
  j["mc_se_pow"] = e.mc_se_pow;
  j["null_quantile_used"] = e.null_quantile_used;
  json reasons = json::object();
  for (std::size_t k = 1; k < e.degenerate_by_reason.size(); ++k)
    if (e.degenerate_by_reason[k])
      reasons[std::string(to_string(static_cast<Degeneracy>(k)))] = e.degenerate_by_reason[k];
  j["degenerate_by_reason"] = reasons;
  return j;
}

int run(const std::vector<std::string>& args);

int dispatch(const std::vector<std::string>& args) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Ancillary-statistic location tests: power studies, checks and residual analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ancillary::version));

  Manifest manifest;
  manifest.args = args;

  // designs
  auto* designs = app.add_subcommand("designs", "List the registered data-generating designs");
  std::string designs_out, designs_format = "csv";
  designs->add_option("--out", designs_out, "Output path (default: standard output)");
  designs->add_option("--format", designs_format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));

  // tables
  auto* tables = app.add_subcommand("tables", "Reproduce a PowA/Pow table by Monte Carlo");
  int table = 1;
  std::size_t reps = 55000, boot = 1000, threads = default_threads();
  std::uint64_t seed = 20240601;
  double alpha = 0.05;
  std::string variant = "paper", format = "csv", tables_out;
  tables->add_option("--table", table, "Table number")->required()->check(CLI::IsMember({1, 2, 3}));
  tables->add_option("--reps", reps, "Replications per cell")->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));
  tables->add_option("--seed", seed, "Root seed");
  tables->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(1e-6, 0.5));
  tables->add_option("--moment-variant", variant, "paper or corrected")
      ->check(CLI::IsMember({"paper", "corrected"}));
  tables->add_option("--format", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
  tables->add_option("--bootstrap", boot, "Bootstrap resamples for T_B")->check(CLI::Range(std::size_t{100}, std::size_t{1000000}));
  tables->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  tables->add_option("--out", tables_out, "Output path (default: standard output)");

  // toy
  auto* toy = app.add_subcommand("toy", "Closed-form toy power curves as CSV");
  std::string figure, toy_out;
  double toy_alpha = 0.05;
  toy->add_option("--figure", figure, "1a or 1b")->required()->check(CLI::IsMember({"1a", "1b"}));
  toy->add_option("--alpha", toy_alpha, "Significance level")->check(CLI::Range(1e-6, 0.5));
  toy->add_option("--out", toy_out, "Output path (default: standard output)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the discrete most-powerful characterization checks");
  std::uint64_t verify_seed = 1;
  std::string verify_out;
  verify->add_option("--seed", verify_seed, "Seed for the random models");
  verify->add_option("--out", verify_out, "Output path (default: standard output)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Regression residual median analysis");
  std::string csv_path, ycol, zcol, study = "nb=70,80,90", analyze_out;
  bool log_transform = false;
  double analyze_alpha = 0.05;
  std::size_t analyze_reps = 10000;
  std::uint64_t analyze_seed = 1;
  analyze->add_option("--csv", csv_path, "Input CSV with a header row")->required();
  analyze->add_option("--ycol", ycol, "Response column (residuals if --zcol is omitted)")->required();
  analyze->add_option("--zcol", zcol, "Regressor column");
  analyze->add_flag("--log", log_transform, "Log-transform the columns");
  analyze->add_option("--alpha", analyze_alpha, "Significance level")->check(CLI::Range(1e-6, 0.5));
  analyze->add_option("--study", study, "Resample sizes, e.g. nb=70,80,90 (empty string to skip)");
  analyze->add_option("--reps", analyze_reps, "Resamples per size")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", analyze_seed, "Root seed");
  analyze->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_option("--out", analyze_out, "JSON output path (default: standard output)");

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Write a synthetic residual sample as one-column CSV");
  std::size_t fixture_n = 100;
  std::uint64_t fixture_seed = 1;
  std::string fixture_out;
  fixture->add_option("--n", fixture_n, "Sample size")->check(CLI::Range(std::size_t{10}, std::size_t{100000000}));
  fixture->add_option("--seed", fixture_seed, "Seed");
  fixture->add_option("--out", fixture_out, "Output path (default: standard output)");

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay->add_option("--manifest", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);

  std::vector<std::string> argv_store{"ancillary"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string out_path;
  if (*designs) {
    manifest.subcommand = "designs";
    const auto fmt = parse_report_format(designs_format);
    std::string text;
    const std::vector<std::string> header{"Design", "Description", "Mean", "SD", "Median"};
    auto line = [&](const std::vector<std::string>& cells) {
      if (fmt == ReportFormat::csv) {
        for (std::size_t i = 0; i < cells.size(); ++i) text += (i ? "," : "") + cells[i];
      } else {
        text += "|";
        for (const auto& c : cells) text += " " + c + " |";
      }
      text += "\n";
    };
    line(header);
    if (fmt == ReportFormat::markdown) line({"---", "---", "---", "---", "---"});
    for (const auto& d : list_designs()) {
      const auto p = design_params(d.id);
      std::string desc = d.description;
      if (fmt == ReportFormat::csv && desc.find(',') != std::string::npos) desc = "\"" + desc + "\"";
      line({d.id.label(), desc, num(p.mean, "%.6f"), num(p.sigma, "%.6f"), num(p.median, "%.6f")});
    }
    write_text(designs_out, text);
    out_path = designs_out;
  } else if (*tables) {
    manifest.subcommand = "tables";
    manifest.seed = seed;
    TableRequest req;
    req.table = table;
    req.reps = reps;
    req.root_seed = seed;
    req.variant = parse_moment_variant(variant);
    req.alpha = alpha;
    req.bootstrap_resamples = boot;
    req.threads = threads;
    const auto report = reproduce_table(req);
    write_text(tables_out, render_table(report, parse_report_format(format)));
    json cells = json::array();
    for (const auto& row : report.rows)
      for (std::size_t j = 0; j < row.cells.size(); ++j) {
        json c = estimate_json(row.cells[j]);
        c["design"] = row.design.label();
        c["test"] = test_label(row.test);
        c["n"] = report.sample_sizes[j];
        cells.push_back(c);
      }
    manifest.extra["cells"] = cells;
    manifest.extra["moment_variant"] = variant;
    out_path = tables_out;
  } else if (*toy) {
    manifest.subcommand = "toy";
    std::string text;
    if (figure == "1a") {
      const auto grid = linear_grid(-0.01, 0.9, 0.01);
      text = "a,power,power_gain,cov\n";
      for (const auto& p : toy_power_curve(grid, 5.0, 1.0, 4.0, toy_alpha))
        text += num(p.a) + "," + num(p.power) + "," + num(p.power_gain) + "," + num(p.cov) + "\n";
    } else {
      const auto grid = linear_grid(0.0, 5.0, 0.05);
      text = "mu,p_t,p_tn,p_to\n";
      for (const auto& p : toy_three_obs_powers(grid, 1.0, 4.0, 3.0, toy_alpha))
        text += num(p.mu) + "," + num(p.p_t) + "," + num(p.p_tn) + "," + num(p.p_to) + "\n";
    }
    write_text(toy_out, text);
    out_path = toy_out;
  } else if (*verify) {
    manifest.subcommand = "verify";
    manifest.seed = verify_seed;
    mp::VerificationConfig cfg;
    cfg.seed = verify_seed;
    const auto lines = mp::run_verification(cfg);
    std::string text = "| Check | Result | Detail |\n| --- | --- | --- |\n";
    for (const auto& l : lines) text += "| " + l.name + " | " + (l.passed ? "PASS" : "FAIL") + " | " + l.detail + " |\n";
    write_text(verify_out, text);
    out_path = verify_out;
    if (!mp::all_passed(lines)) {
      write_manifest(manifest, out_path, 0.0);
      return 1;
    }
  } else if (*analyze) {
    manifest.subcommand = "analyze";
    manifest.seed = analyze_seed;
    const std::optional<std::string> z = zcol.empty() ? std::nullopt : std::optional(zcol);
    const auto study_sizes = study.empty() ? std::vector<std::size_t>{} : parse_study(study);
    const auto data = load_xy_csv(csv_path, ycol, z, log_transform);
    json j;
    Sample eps;
    if (z) {
      const auto fit = ols_fit(data.y, data.z);
      eps = residuals(fit, data.y, data.z);
      j["fit"] = {{"intercept", fit.a},
                  {"slope", fit.b},
                  {"residual_se", fit.residual_se},
                  {"r_squared", fit.r_squared},
                  {"std_errors", fit.std_errors},
                  {"t_values", fit.t_values},
                  {"df", fit.df}};
    } else {
      eps = data.y;
    }
    const auto rep = residual_median_analysis(eps, analyze_alpha);
    j["n"] = rep.n;
    j["mean"] = rep.mean;
    j["variance"] = rep.variance;
    j["median"] = rep.median;
    json tests = json::array();
    for (const auto& t : rep.tests) {
      json tj{{"test", t.name}};
      tj["statistic"] = t.statistic ? json(*t.statistic) : json(nullptr);
      tj["p_value"] = t.p_value ? json(*t.p_value) : json(nullptr);
      if (t.degeneracy != Degeneracy::none) tj["degenerate"] = to_string(t.degeneracy);
      tests.push_back(tj);
    }
    j["tests"] = tests;
    json bins = json::array();
    for (const auto& b : rep.bins) bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
    j["histogram"] = bins;
    if (!study_sizes.empty()) {
      json st = json::array();
      for (std::size_t nb : study_sizes) {
        if (nb >= eps.size())
          throw UsageError("study size " + std::to_string(nb) + " must be below the sample size " +
                           std::to_string(eps.size()));
        const auto p = resample_power_study(eps, nb, analyze_reps, analyze_alpha, analyze_seed, threads);
        st.push_back({{"n_b", nb}, {"reps", p.reps}, {"T_o^2", p.t_o_sq}, {"W", p.w}, {"T_N^2", p.t_n_sq}});
      }
      j["resample_power"] = st;
    }
    write_text(analyze_out, j.dump(2) + "\n");
    out_path = analyze_out;
  } else if (*fixture) {
    manifest.subcommand = "fixture";
    manifest.seed = fixture_seed;
    const auto x = make_fixture(fixture_n, fixture_seed);
    std::string text = "eps\n";
    for (double v : x) text += num(v, "%.17g") + "\n";
    write_text(fixture_out, text);
    out_path = fixture_out;
  } else if (*replay) {
    std::ifstream f(manifest_path);
    json j;
    try {
      f >> j;
    } catch (const json::exception& e) {
      throw std::runtime_error("cannot parse manifest " + manifest_path + ": " + e.what());
    }
    if (!j.contains("args") || !j["args"].is_array()) throw std::runtime_error("manifest has no args array");
    const auto replay_args = j["args"].get<std::vector<std::string>>();
    if (!replay_args.empty() && replay_args.front() == "replay") throw std::runtime_error("manifest replays itself");
    return run(replay_args);
  }

  if (!out_path.empty() && out_path != "-") {
    manifest.outputs = {out_path};
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(manifest, out_path, wall);
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}
