// bfnl: command-line front end for Boolean-function nonlinearity analysis.
//
// Subcommands: wht, anf, nonlin, census, sep-set, bounds, mc-converge,
// mc-joint, mc-concentration, oracle-exact. Exit codes: 0 success, 1 domain
// error (one-line diagnostic on stderr), 2 usage error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bfnl/bfnl.hpp"

namespace {

using KvList = std::vector<std::pair<std::string, std::string>>;

struct Options {
  int n = 0;
  std::vector<int> n_list;
  int r = 1;
  std::string tt, tt2, in, in2;
  uint64_t seed = bfnl::kDefaultMasterSeed;
  uint64_t samples = 1000;
  double alpha = 0.5;
  int jobs = 0;  // 0 = all hardware threads
  std::string out, summary_out, format, config;
  double theta = -1.0;  // bounds: defaults to lambda_n when unset
  double t1 = 0.5, t2 = -0.25;
  double size_s = 0.0;  // bounds: defaults to 2^{(1-alpha) C(n,r)}
  std::string exponent_delta;
};

// ---------------------------------------------------------------------------
// config file: UTF-8 lines "key=value", '#' starts a comment
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

KvList load_config_file(const std::string& path) {
  std::ifstream f(path);
  bfnl::require(f.good(), "cannot open config file: " + path);
  KvList kv;
  std::string line;
  while (std::getline(f, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    bfnl::require(eq != std::string::npos && eq > 0, "malformed config line: " + line);
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

bool user_passed(const std::vector<std::string>& tokens, const std::string& flag) {
  for (const auto& t : tokens)
    if (t == flag || t.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Merge config-file values under explicit flags: config-derived tokens are
// injected only for options the user did not pass on the command line.
std::vector<std::string> assemble_args(int argc, char** argv, CLI::App& app) {
  std::vector<std::string> tokens(argv + 1, argv + argc);
  if (tokens.empty() || tokens[0].empty() || tokens[0][0] == '-') return tokens;
  std::string config_path;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "--config" && i + 1 < tokens.size())
      config_path = tokens[i + 1];
    else if (tokens[i].rfind("--config=", 0) == 0)
      config_path = tokens[i].substr(9);
  }
  if (config_path.empty()) return tokens;
  CLI::App* sub = nullptr;
  for (CLI::App* s : app.get_subcommands({}))
    if (s->get_name() == tokens[0]) sub = s;
  if (sub == nullptr) return tokens;

  std::vector<std::string> result;
  result.push_back(tokens[0]);
  for (const auto& [k, v] : load_config_file(config_path)) {
    if (k == "config") continue;
    const std::string flag = "--" + k;
    if (sub->get_option_no_throw(flag) != nullptr && !user_passed(tokens, flag))
      result.push_back(flag + "=" + v);
  }
  result.insert(result.end(), tokens.begin() + 1, tokens.end());
  return result;
}

// ---------------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------------

void write_text(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  bfnl::require(f.good(), "cannot open output file: " + out_path);
  f << content;
  f.flush();
  bfnl::require(f.good(), "write failed: " + out_path);
}

std::string csv_meta(const KvList& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += "# " + k + "=" + v + "\n";
  return out;
}

nlohmann::json json_meta(const KvList& kv) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string resolve_format(const Options& o, const char* fallback) {
  return o.format.empty() ? fallback : o.format;
}

bfnl::TruthTable load_table(const Options& o, bool second = false) {
  const std::string& hex = second ? o.tt2 : o.tt;
  const std::string& path = second ? o.in2 : o.in;
  const char* which = second ? "--tt2 or --in2" : "--tt or --in";
  bfnl::require(hex.empty() || path.empty(),
                std::string("give only one of ") + which);
  if (!hex.empty()) {
    bfnl::require(o.n >= 1, "--n is required with an inline hex table");
    return bfnl::TruthTable::from_hex(hex, o.n);
  }
  if (!path.empty()) {
    std::ifstream f(path, std::ios::binary);
    bfnl::require(f.good(), "cannot open input file: " + path);
    const bfnl::TruthTable t = bfnl::read_table(f);
    bfnl::require(o.n == 0 || o.n == t.vars(),
                  "--n disagrees with the n stored in " + path);
    return t;
  }
  throw bfnl::Error(std::string("missing input function: provide ") + which);
}

// ---------------------------------------------------------------------------
// subcommand runners
// ---------------------------------------------------------------------------

void run_wht(const Options& o) {
  const bfnl::TruthTable f = load_table(o);
  const bfnl::WalshSpectrum spectrum = bfnl::walsh_hadamard(f);
  const KvList meta{{"subcommand", "wht"}, {"n", std::to_string(f.vars())},
                    {"tt", f.to_hex()}};
  if (resolve_format(o, "csv") == "csv") {
    std::string body = csv_meta(meta) + "mask,value\n";
    for (size_t a = 0; a < spectrum.values.size(); ++a)
      body += std::to_string(a) + "," + std::to_string(spectrum.values[a]) + "\n";
    write_text(o.out, body);
  } else {
    nlohmann::json j{{"config", json_meta(meta)}, {"n", f.vars()}, {"spectrum", spectrum.values}};
    write_text(o.out, dump(j));
  }
}

void run_anf(const Options& o) {
  const bfnl::TruthTable f = load_table(o);
  const bfnl::AnfCoefficients anf = bfnl::mobius_transform(f);
  const int deg = bfnl::degree(anf);
  const KvList meta{{"subcommand", "anf"}, {"n", std::to_string(f.vars())},
                    {"tt", f.to_hex()}};
  if (resolve_format(o, "json") == "json") {
    nlohmann::json j{{"config", json_meta(meta)},
                     {"n", f.vars()},
                     {"degree", deg},
                     {"anf_hex", anf.to_hex()}};
    write_text(o.out, dump(j));
  } else {
    write_text(o.out, csv_meta(meta) + "n,degree,anf_hex\n" + std::to_string(f.vars()) + "," +
                          std::to_string(deg) + "," + anf.to_hex() + "\n");
  }
}

void run_nonlin(const Options& o) {
  const bfnl::TruthTable f = load_table(o);
  const bfnl::RMCodeSpec spec = bfnl::RMCodeSpec::make(f.vars(), o.r);
  const bfnl::NonlinearityResult res =
      o.r == 1 ? bfnl::nonlinearity_order1(f) : bfnl::nonlinearity_exhaustive(f, o.r, o.jobs);
  const KvList meta{{"subcommand", "nonlin"},
                    {"n", std::to_string(f.vars())},
                    {"r", std::to_string(o.r)},
                    {"tt", f.to_hex()}};
  const std::string message_hex = bfnl::detail::message_to_hex(res.best_message, spec.k);
  if (resolve_format(o, "json") == "json") {
    nlohmann::json j{{"config", json_meta(meta)}, {"n", res.n},
                     {"r", res.r},                {"nonlinearity", res.value},
                     {"y", res.y},                {"lambda", res.lambda},
                     {"ratio", res.ratio},        {"best_message_hex", message_hex}};
    write_text(o.out, dump(j));
  } else {
    write_text(o.out, csv_meta(meta) + "n,r,nonlinearity,y,lambda,ratio,best_message_hex\n" +
                          std::to_string(res.n) + "," + std::to_string(res.r) + "," +
                          std::to_string(res.value) + "," + std::to_string(res.y) + "," +
                          bfnl::detail::format_g9(res.lambda) + "," +
                          bfnl::detail::format_g9(res.ratio) + "," + message_hex + "\n");
  }
}

void run_census(const Options& o) {
  const bfnl::RMCodeSpec spec = bfnl::RMCodeSpec::make(o.n, o.r);
  const bfnl::WeightCensus census = bfnl::weight_census(bfnl::build_basis(spec), o.jobs);
  KvList meta{{"subcommand", "census"},
              {"n", std::to_string(o.n)},
              {"r", std::to_string(o.r)}};
  std::optional<double> exponent;
  if (!o.exponent_delta.empty()) {
    exponent = bfnl::census_small_weight_exponent(census, bfnl::Rational::parse(o.exponent_delta));
    meta.emplace_back("exponent_delta", o.exponent_delta);
  }
  if (resolve_format(o, "csv") == "csv") {
    std::string body = csv_meta(meta);
    if (exponent) body += "# small_weight_exponent=" + bfnl::detail::format_g9(*exponent) + "\n";
    write_text(o.out, body + bfnl::census_to_csv(census));
  } else {
    nlohmann::json j = bfnl::census_to_json(census);
    j["config"] = json_meta(meta);
    if (exponent) j["small_weight_exponent"] = *exponent;
    write_text(o.out, dump(j));
  }
}

void run_sep_set(const Options& o) {
  const bfnl::RMCodeSpec spec = bfnl::RMCodeSpec::make(o.n, o.r);
  const bfnl::MonomialBasis basis = bfnl::build_basis(spec);
  const bfnl::SeparatedSet set = bfnl::greedy_separated_set(basis, o.alpha);
  const KvList meta{{"subcommand", "sep-set"},
                    {"n", std::to_string(o.n)},
                    {"r", std::to_string(o.r)},
                    {"alpha", bfnl::detail::format_g9(o.alpha)}};
  nlohmann::json summary = bfnl::separated_set_summary_json(set);
  summary["config"] = json_meta(meta);
  if (resolve_format(o, "csv") == "csv") {
    write_text(o.out, csv_meta(meta) + bfnl::separated_set_to_csv(set));
    if (!o.out.empty()) write_text(o.out + ".summary.json", dump(summary));
  } else {
    nlohmann::json members = nlohmann::json::array();
    for (const uint64_t m : set.members)
      members.push_back(bfnl::detail::message_to_hex(m, spec.k));
    summary["members"] = members;
    write_text(o.out, dump(summary));
  }
}

void run_bounds(const Options& o) {
  const int n = o.n;
  const int r = o.r;
  const double lambda = bfnl::lambda_n(n, r);
  const double theta = o.theta >= 0.0 ? o.theta : lambda;
  const double size_s =
      o.size_s > 0.0 ? o.size_s : std::exp2((1.0 - o.alpha) * double(bfnl::binomial(n, r)));
  std::vector<bfnl::BoundReport> rows;

  const auto add = [&](bfnl::BoundReport row) { rows.push_back(std::move(row)); };
  {
    bfnl::BoundReport row{"lambda_n", n, r, "", lambda, {}, {}};
    add(row);
  }
  {
    bfnl::BoundReport row{"expectation_upper_bound", n, r,
                          "k=" + std::to_string(bfnl::rm_dimension(n, r)),
                          bfnl::expectation_upper_bound(n, r), {}, {}};
    add(row);
  }
  {
    bfnl::BoundReport row{"concentration_bound", n, r,
                          "theta=" + bfnl::detail::format_g9(theta),
                          bfnl::concentration_bound(n, theta), {}, {}};
    add(row);
  }
  {
    bfnl::BoundReport row{"joint_tail_bound", n, r, "", bfnl::joint_tail_bound(n, r).value,
                          {}, {}};
    add(row);
  }
  const bool tail_feasible = n <= 24;
  std::optional<double> exact_tail;
  if (tail_feasible) exact_tail = bfnl::binomial_tail(uint64_t(1) << n, lambda);
  {
    bfnl::BoundReport row{"pr_lb_bound", n, r, "threshold=lambda",
                          bfnl::pr_lb_bound(n, r).value, exact_tail, {}};
    if (exact_tail) row.satisfied = *exact_tail >= row.bound_value;
    add(row);
  }
  {
    bfnl::BoundReport row{"feller_tail_approx", n, r, "threshold=lambda",
                          bfnl::feller_tail_approx(n, r).value, exact_tail, {}};
    add(row);
  }
  {
    bfnl::BoundReport row{"feller_constant", n, r, "", bfnl::feller_constant(), 3.0,
                          bfnl::feller_constant() < 3.0};
    add(row);
  }
  if ((uint64_t(1) << n) <= 65536) {
    const double exact_big = bfnl::binomial_tail_exact(uint64_t(1) << n, lambda).value();
    bfnl::BoundReport row{"binomial_tail", n, r, "threshold=lambda;mode=log-domain",
                          *exact_tail, exact_big,
                          std::fabs(*exact_tail - exact_big) <= 1e-9 * exact_big};
    add(row);
  }
  {
    const bfnl::LbEventReport ev = bfnl::lb_event_bound(n, r, o.alpha, size_s);
    bfnl::BoundReport row{"lb_event_bound", n, r,
                          "alpha=" + bfnl::detail::format_g9(o.alpha) +
                              ";S=" + bfnl::detail::format_g9(size_s),
                          ev.bound.value, ev.term1.value - ev.term2.value,
                          ev.first_dominates};
    add(row);
  }
  if (!o.tt.empty() || !o.in.empty()) {
    const bfnl::TruthTable g = load_table(o, false);
    const bfnl::TruthTable h = load_table(o, true);
    const auto mgf = bfnl::mgf_pair(g, h, o.t1, o.t2);
    bfnl::BoundReport row{"mgf_pair", n, r,
                          "t1=" + bfnl::detail::format_g9(o.t1) +
                              ";t2=" + bfnl::detail::format_g9(o.t2),
                          mgf.bound, mgf.exact,
                          mgf.log_exact <= mgf.log_bound + 1e-9 * std::fabs(mgf.log_bound) + 1e-12};
    add(row);
  }

  const KvList meta{{"subcommand", "bounds"},
                    {"n", std::to_string(n)},
                    {"r", std::to_string(r)},
                    {"alpha", bfnl::detail::format_g9(o.alpha)},
                    {"theta", bfnl::detail::format_g9(theta)}};
  if (resolve_format(o, "csv") == "csv") {
    write_text(o.out, csv_meta(meta) + bfnl::bound_reports_to_csv(rows));
  } else {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json jr{{"name", row.name}, {"n", row.n},    {"r", row.r},
                        {"params", row.params}, {"bound", row.bound_value}};
      if (row.comparison) jr["comparison"] = *row.comparison;
      if (row.satisfied) jr["satisfied"] = *row.satisfied;
      jrows.push_back(std::move(jr));
    }
    write_text(o.out, dump(nlohmann::json{{"config", json_meta(meta)}, {"bounds", jrows}}));
  }
}

bfnl::ExperimentManifest manifest_from(const Options& o, bfnl::ExperimentManifest::Kind kind) {
  bfnl::ExperimentManifest mf;
  mf.kind = kind;
  mf.n_values = o.n_list.empty() ? std::vector<int>{o.n} : o.n_list;
  mf.r = o.r;
  mf.samples = o.samples;
  mf.master_seed = o.seed;
  mf.jobs = o.jobs;
  return mf;
}

KvList manifest_meta(const char* name, const bfnl::ExperimentManifest& mf) {
  return KvList{{"subcommand", name},
                {"n", join_ints(mf.n_values)},
                {"r", std::to_string(mf.r)},
                {"samples", std::to_string(mf.samples)},
                {"seed", std::to_string(mf.master_seed)}};
}

void run_mc_converge(const Options& o) {
  bfnl::ExperimentManifest mf = manifest_from(o, bfnl::ExperimentManifest::Kind::kConverge);
  mf.output_path = o.out;
  bfnl::validate(mf);
  const KvList meta = manifest_meta("mc-converge", mf);

  std::ofstream file;
  std::ostream* rows = &std::cout;
  if (!mf.output_path.empty()) {
    file.open(mf.output_path, std::ios::binary);
    bfnl::require(file.good(), "cannot open output file: " + mf.output_path);
    rows = &file;
  }
  *rows << csv_meta(meta) << bfnl::sample_record_csv_header() << "\n";
  const auto result = bfnl::run_convergence(mf, [&](const bfnl::SampleRecord& rec) {
    *rows << bfnl::sample_record_to_csv(rec) << "\n";
    rows->flush();  // rows hit the disk as they are produced
  });
  bfnl::require(rows->good(), "row output failed");

  nlohmann::json summaries = nlohmann::json::array();
  for (const auto& s : result.summaries) summaries.push_back(bfnl::summary_to_json(s));
  const nlohmann::json summary{{"config", json_meta(meta)}, {"summaries", summaries}};
  if (!o.summary_out.empty())
    write_text(o.summary_out, dump(summary));
  else if (!o.out.empty())
    std::cout << dump(summary);
}

void run_mc_joint(const Options& o) {
  bfnl::ExperimentManifest mf = manifest_from(o, bfnl::ExperimentManifest::Kind::kJoint);
  const bfnl::TruthTable g = load_table(o, false);
  const bfnl::TruthTable h = load_table(o, true);
  mf.n_values = {g.vars()};
  const bfnl::JointReport rep = bfnl::run_joint(mf, g, h);
  KvList meta = manifest_meta("mc-joint", mf);
  meta.emplace_back("g", g.to_hex());
  meta.emplace_back("h", h.to_hex());
  if (resolve_format(o, "json") == "json") {
    nlohmann::json j = bfnl::joint_report_to_json(rep);
    j["config"] = json_meta(meta);
    write_text(o.out, dump(j));
  } else {
    write_text(o.out, csv_meta(meta) +
                          bfnl::bound_reports_to_csv({bfnl::joint_report_to_bound_report(rep)}));
  }
}

void run_mc_concentration(const Options& o) {
  const bfnl::ExperimentManifest mf =
      manifest_from(o, bfnl::ExperimentManifest::Kind::kConcentration);
  const auto reports = bfnl::run_concentration(mf);
  const KvList meta = manifest_meta("mc-concentration", mf);
  if (resolve_format(o, "csv") == "csv") {
    std::vector<bfnl::BoundReport> rows;
    for (const auto& rep : reports) {
      const auto part = bfnl::concentration_to_bound_reports(rep);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    write_text(o.out, csv_meta(meta) + bfnl::bound_reports_to_csv(rows));
  } else {
    nlohmann::json jreports = nlohmann::json::array();
    for (const auto& rep : reports) jreports.push_back(bfnl::concentration_report_to_json(rep));
    write_text(o.out, dump(nlohmann::json{{"config", json_meta(meta)}, {"reports", jreports}}));
  }
}

void run_oracle_exact(const Options& o) {
  const bfnl::ExactDistribution dist = bfnl::exact_oracle(o.n, o.r, o.jobs);
  const KvList meta{{"subcommand", "oracle-exact"},
                    {"n", std::to_string(o.n)},
                    {"r", std::to_string(o.r)}};
  if (resolve_format(o, "json") == "json") {
    nlohmann::json j = bfnl::exact_distribution_to_json(dist);
    j["config"] = json_meta(meta);
    write_text(o.out, dump(j));
  } else {
    std::string body = csv_meta(meta) + "value,count\n";
    for (const auto& [v, c] : dist.counts)
      body += std::to_string(v) + "," + std::to_string(c) + "\n";
    write_text(o.out, body);
  }
}

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

void add_common_output(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", o.config,
                  "Flat key=value config file; explicit flags take precedence");
}

void add_table_input(CLI::App* sub, Options& o, bool pair = false) {
  sub->add_option("--tt", o.tt, "Input truth table as canonical hex (requires --n)");
  sub->add_option("--in", o.in, "Input truth table from a binary BFTT0001 file");
  if (pair) {
    sub->add_option("--tt2", o.tt2, "Second truth table as hex");
    sub->add_option("--in2", o.in2, "Second truth table from a binary file");
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"bfnl: exact and statistical analysis of the r-th order nonlinearity "
               "of Boolean functions"};
  app.name("bfnl");
  app.require_subcommand(1);

  CLI::App* wht = app.add_subcommand("wht", "Walsh-Hadamard spectrum of a function");
  wht->add_option("--n", o.n, "Variable count");
  add_table_input(wht, o);
  add_common_output(wht, o);
  wht->callback([&] { run_wht(o); });

  CLI::App* anf = app.add_subcommand("anf", "Algebraic normal form and degree");
  anf->add_option("--n", o.n, "Variable count");
  add_table_input(anf, o);
  add_common_output(anf, o);
  anf->callback([&] { run_anf(o); });

  CLI::App* nonlin = app.add_subcommand("nonlin", "r-th order nonlinearity N_r(f)");
  nonlin->add_option("--n", o.n, "Variable count");
  nonlin->add_option("--r", o.r, "Order r (r=1 uses the spectrum fast path)");
  nonlin->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  add_table_input(nonlin, o);
  add_common_output(nonlin, o);
  nonlin->callback([&] { run_nonlin(o); });

  CLI::App* census = app.add_subcommand("census", "Weight census of RM(r,n)");
  census->add_option("--n", o.n, "Variable count")->required();
  census->add_option("--r", o.r, "Order r");
  census->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  census->add_option("--exponent-delta", o.exponent_delta,
                     "Also report the small-weight census exponent at this delta (rational)");
  add_common_output(census, o);
  census->callback([&] { run_census(o); });

  CLI::App* sep = app.add_subcommand("sep-set", "Greedy separated subset of RM(r,n)");
  sep->add_option("--n", o.n, "Variable count")->required();
  sep->add_option("--r", o.r, "Order r");
  sep->add_option("--alpha", o.alpha, "Target exponent parameter in (0,1)");
  add_common_output(sep, o);
  sep->callback([&] { run_sep_set(o); });

  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the closed-form bounds");
  bounds->add_option("--n", o.n, "Variable count")->required();
  bounds->add_option("--r", o.r, "Order r");
  bounds->add_option("--alpha", o.alpha, "Alpha for the lower-bound event");
  bounds->add_option("--theta", o.theta, "Theta for the concentration bound");
  bounds->add_option("--size-s", o.size_s, "Separated-set size |S| for the Bonferroni terms");
  bounds->add_option("--t1", o.t1, "MGF parameter t1 (with --tt/--tt2)");
  bounds->add_option("--t2", o.t2, "MGF parameter t2 (with --tt/--tt2)");
  add_table_input(bounds, o, true);
  add_common_output(bounds, o);
  bounds->callback([&] { run_bounds(o); });

  CLI::App* conv = app.add_subcommand("mc-converge", "Monte Carlo convergence sweep");
  conv->add_option("--n", o.n_list, "n values (comma separated)")
      ->required()
      ->delimiter(',');
  conv->add_option("--r", o.r, "Order r");
  conv->add_option("--samples", o.samples, "Samples per n");
  conv->add_option("--seed", o.seed, "Master seed");
  conv->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  conv->add_option("--summary-out", o.summary_out, "Write the summary JSON to this file");
  add_common_output(conv, o);
  conv->callback([&] { run_mc_converge(o); });

  CLI::App* joint = app.add_subcommand("mc-joint", "Joint upper-tail estimate for two codewords");
  joint->add_option("--n", o.n, "Variable count");
  joint->add_option("--r", o.r, "Order r");
  joint->add_option("--samples", o.samples, "Monte Carlo samples (n > 4)");
  joint->add_option("--seed", o.seed, "Master seed");
  joint->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  add_table_input(joint, o, true);
  add_common_output(joint, o);
  joint->callback([&] { run_mc_joint(o); });

  CLI::App* conc = app.add_subcommand("mc-concentration", "Concentration-inequality sweep");
  conc->add_option("--n", o.n_list, "n values (comma separated)")
      ->required()
      ->delimiter(',');
  conc->add_option("--r", o.r, "Order r");
  conc->add_option("--samples", o.samples, "Samples per n");
  conc->add_option("--seed", o.seed, "Master seed");
  conc->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  add_common_output(conc, o);
  conc->callback([&] { run_mc_concentration(o); });

  CLI::App* oracle = app.add_subcommand("oracle-exact", "Exact N_r distribution by full enumeration");
  oracle->add_option("--n", o.n, "Variable count (at most 4)")->required();
  oracle->add_option("--r", o.r, "Order r");
  oracle->add_option("--jobs", o.jobs, "Worker threads (0 = all)");
  add_common_output(oracle, o);
  oracle->callback([&] { run_oracle_exact(o); });

  try {
    std::vector<std::string> args = assemble_args(argc, argv, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const bfnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
