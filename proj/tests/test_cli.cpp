#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "bfnl/anf.hpp"
#include "bfnl/experiments.hpp"
#include "bfnl/rng.hpp"
#include "bfnl/truth_table.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout (or stdout+stderr when merged)
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string(BFNL_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bfnl_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("cli: nonlin emits the pinned JSON object") {
  const RunResult res = run_cli("nonlin --n 4 --r 1 --tt 8ff0");
  REQUIRE(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.output);
  CHECK(j["n"] == 4);
  CHECK(j["r"] == 1);
  CHECK(j.contains("nonlinearity"));
  CHECK(j["y"] == 16 - 2 * j["nonlinearity"].get<int64_t>());
  CHECK(j.contains("lambda"));
  CHECK(j.contains("ratio"));
  CHECK(j.contains("best_message_hex"));
  CHECK(j["config"]["subcommand"] == "nonlin");

  // the emitted witness hex re-parses to a message of RM(1,4), k = 5 bits
  const std::string hex = j["best_message_hex"].get<std::string>();
  CHECK(hex.size() == 2);
  CHECK_NOTHROW(bfnl::detail::hex_to_message(hex, 5));
}

TEST_CASE("cli: precondition violations exit 1 with a named diagnostic") {
  const RunResult res = run_cli("nonlin --n 4 --r 5 --tt 8ff0", true);
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("r <= n") != std::string::npos);

  CHECK(run_cli("nonlin --n 4 --r 1").exit_code == 1);           // missing --tt/--in
  CHECK(run_cli("census --n 40 --r 1").exit_code == 1);          // n out of range
  CHECK(run_cli("oracle-exact --n 5 --r 1").exit_code == 1);     // oracle cap
  CHECK(run_cli("nonlin --n 4 --r 1 --tt zz").exit_code == 1);   // malformed hex
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("nonlin --no-such-flag").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("census --r 1").exit_code == 2);            // --n is required
  CHECK(run_cli("census --n 3 --format xml").exit_code == 2);
}

TEST_CASE("cli: --help lists every subcommand and matches the golden file") {
  const RunResult res = run_cli("--help");
  CHECK(res.exit_code == 0);
  for (const char* sub : {"wht", "anf", "nonlin", "census", "sep-set", "bounds", "mc-converge",
                          "mc-joint", "mc-concentration", "oracle-exact"})
    CHECK(res.output.find(sub) != std::string::npos);
  CHECK(res.output == slurp(fs::path(BFNL_TEST_DATA_DIR) / "help_golden.txt"));
}

TEST_CASE("cli: census output data matches the known RM(1,3) histogram") {
  const RunResult res = run_cli("census --n 3 --r 1");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("weight,count\n0,1\n4,14\n8,1\n") != std::string::npos);

  const RunResult json_res = run_cli("census --n 3 --r 1 --format json");
  const nlohmann::json j = nlohmann::json::parse(json_res.output);
  CHECK(j["k"] == 4);
  CHECK(j["entries"].size() == 3);
}

TEST_CASE("cli: wht and anf hex values round-trip") {
  const bfnl::TruthTable f = bfnl::sample_uniform({0xC11u, 4}, 4);
  const RunResult res = run_cli("anf --n 4 --tt " + f.to_hex());
  REQUIRE(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.output);
  const auto anf = bfnl::AnfCoefficients::from_hex(j["anf_hex"].get<std::string>(), 4);
  CHECK(bfnl::mobius_inverse(anf) == f);
  CHECK(j["degree"] == bfnl::degree(f));
  CHECK(j["config"]["tt"] == f.to_hex());  // emitted table hex re-parses equal

  const RunResult wres = run_cli("wht --n 2 --tt a --format json");
  const nlohmann::json wj = nlohmann::json::parse(wres.output);
  CHECK(wj["spectrum"] == nlohmann::json::array({0, 4, 0, 0}));
}

TEST_CASE("cli: binary table files work as input") {
  const bfnl::TruthTable f = bfnl::sample_uniform({0xF11Eu, 9}, 6);
  const fs::path path = temp_file("table_n6.bftt");
  {
    std::ofstream out(path, std::ios::binary);
    bfnl::write_table(out, f);
  }
  const RunResult res = run_cli("nonlin --r 1 --in " + path.string());
  REQUIRE(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.output);
  CHECK(j["n"] == 6);

  // --n mismatch is a domain error
  CHECK(run_cli("nonlin --n 5 --r 1 --in " + path.string()).exit_code == 1);
}

TEST_CASE("cli: config file values merge under explicit flags") {
  const fs::path cfg = temp_file("census.cfg");
  {
    std::ofstream out(cfg);
    out << "# census configuration\n";
    out << "n = 3\n";
    out << "r = 1\n";
  }
  const RunResult from_cfg = run_cli("census --config " + cfg.string());
  REQUIRE(from_cfg.exit_code == 0);
  CHECK(from_cfg.output.find("0,1\n4,14\n8,1\n") != std::string::npos);

  // explicit flag overrides the config value: r=0 census has two rows
  const RunResult overridden = run_cli("census --config " + cfg.string() + " --r 0");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.output.find("0,1\n8,1\n") != std::string::npos);

  CHECK(run_cli("census --n 3 --config /no/such/file.cfg").exit_code == 1);
}

TEST_CASE("cli: mc-converge writes rows and summary deterministically") {
  const fs::path rows_a = temp_file("rows_a.csv");
  const fs::path rows_b = temp_file("rows_b.csv");
  const fs::path sum_a = temp_file("sum_a.json");
  const fs::path sum_b = temp_file("sum_b.json");
  const std::string base = "mc-converge --n 6,8 --r 1 --samples 40 --seed 99 ";
  CHECK(run_cli(base + "--jobs 1 --out " + rows_a.string() + " --summary-out " +
                sum_a.string())
            .exit_code == 0);
  CHECK(run_cli(base + "--jobs 3 --out " + rows_b.string() + " --summary-out " +
                sum_b.string())
            .exit_code == 0);
  CHECK(slurp(rows_a) == slurp(rows_b));
  CHECK(slurp(sum_a) == slurp(sum_b));
  CHECK(slurp(rows_a).find(bfnl::sample_record_csv_header()) != std::string::npos);

  const nlohmann::json summary = nlohmann::json::parse(slurp(sum_a));
  CHECK(summary["summaries"].size() == 2);
  CHECK(summary["summaries"][0]["format_version"] == 1);
}

TEST_CASE("cli: sep-set with --out also writes the JSON summary") {
  const fs::path csv = temp_file("sepset.csv");
  CHECK(run_cli("sep-set --n 4 --r 1 --alpha 0.5 --out " + csv.string()).exit_code == 0);
  CHECK(slurp(csv).find("member_index,message_hex") != std::string::npos);
  const nlohmann::json summary = nlohmann::json::parse(slurp(fs::path(csv.string() + ".summary.json")));
  CHECK(summary["size"] == 16);
  CHECK(summary["tau_num"] == 2);
}

TEST_CASE("cli: config supplies list-valued keys to mc-converge") {
  const fs::path cfg = temp_file("converge.cfg");
  {
    std::ofstream out(cfg);
    out << "n = 6,8\nr = 1\nsamples = 20\nseed = 7\n";
  }
  const RunResult res = run_cli("mc-converge --config " + cfg.string());
  REQUIRE(res.exit_code == 0);
  size_t rows = 0;
  std::istringstream lines(res.output);
  for (std::string line; std::getline(lines, line);)
    rows += !line.empty() && line[0] != '#' && line.find("n,r,") != 0;
  CHECK(rows == 40);  // 20 samples at each of n = 6, 8
}

TEST_CASE("cli: bounds degrades gracefully when exact comparisons are infeasible") {
  const RunResult res = run_cli("bounds --n 25 --r 1");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("lambda_n,25,1") != std::string::npos);
  CHECK(res.output.find("binomial_tail") == std::string::npos);  // 2^25 > big-int cap
}

TEST_CASE("cli: mc-concentration rows carry the bound table header") {
  const RunResult res = run_cli("mc-concentration --n 7 --r 1 --samples 50");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("name,n,r,params,bound,comparison,satisfied") != std::string::npos);
  CHECK(res.output.find("concentration,7,1,theta=0") != std::string::npos);
}
