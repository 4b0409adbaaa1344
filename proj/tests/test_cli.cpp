#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "evstat_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  fs::path log = work_dir() / "cli_output.log";
  std::string cmd = std::string("cd ") + work_dir().string() + " && " + EVSTAT_CLI_PATH + " " +
                    args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream buf;
  buf << in.rdbuf();
  res.output = buf.str();
  return res;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("spacing subcommand writes a csv report") {
  auto res = run_cli("spacing --family pareto --alpha 2 --sizes 50,100 --replicates 50 "
                     "--seed 7 --out spacing_small.csv");
  CHECK(res.exit_code == 0);
  std::string text = read_file(work_dir() / "spacing_small.csv");
  CHECK(text.rfind("# evstat=", 0) == 0);
  CHECK(text.find("# experiment=spacing") != std::string::npos);
  CHECK(text.find("N,median_spacing,median_spacing_stderr") != std::string::npos);
  CHECK(text.find("# slope=") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("json reports are valid json") {
  auto res = run_cli("mda --family exp-powerlaw --alpha 2 --beta 1 --ln-x 10,20 "
                     "--format json --out mda_small.json");
  CHECK(res.exit_code == 0);
  auto j = nlohmann::json::parse(read_file(work_dir() / "mda_small.json"));
  CHECK(j["experiment"] == "mda");
  REQUIRE(j["rows"].size() == 2);
  double r10 = j["rows"][0][2].get<double>();
  CHECK(r10 == doctest::Approx(0.19900166).epsilon(1e-6));
}

TEST_CASE("unknown flags exit with code 2 and write nothing") {
  auto res = run_cli("spacing --nonsense 3 --out never_written.csv");
  CHECK(res.exit_code == 2);
  CHECK_FALSE(fs::exists(work_dir() / "never_written.csv"));
}

TEST_CASE("unknown subcommands exit with code 2") {
  auto res = run_cli("frobnicate");
  CHECK(res.exit_code == 2);
}

TEST_CASE("malformed distribution fragments exit with code 2") {
  auto res = run_cli("tree-contrast --leaf \"family=pareto alpha=oops\" --generations 4 "
                     "--replicates 10 --out never2.csv");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("config error") != std::string::npos);
  CHECK_FALSE(fs::exists(work_dir() / "never2.csv"));
}

TEST_CASE("tree size guard exits with code 3") {
  auto res = run_cli("tree-contrast --generations 28 --replicates 10 --out never3.csv");
  CHECK(res.exit_code == 3);
  CHECK_FALSE(fs::exists(work_dir() / "never3.csv"));
}

TEST_CASE("too few conditioning events exit with code 4 and report counts") {
  auto res = run_cli("bigjump --family pareto --alpha 1 --summands 5 --quantile 0.999 "
                     "--replicates 3000 --out never4.csv");
  CHECK(res.exit_code == 4);
  CHECK(res.output.find("events=") != std::string::npos);
  CHECK_FALSE(fs::exists(work_dir() / "never4.csv"));
}

TEST_CASE("identical commands produce byte-identical reports") {
  std::string cmd = "dominance --family pareto --alpha 1 --sizes 50,100 --replicates 200 "
                    "--seed 11 --out ";
  CHECK(run_cli(cmd + "det_a.csv").exit_code == 0);
  CHECK(run_cli(cmd + "det_b.csv").exit_code == 0);
  CHECK(read_file(work_dir() / "det_a.csv") == read_file(work_dir() / "det_b.csv"));
}

TEST_CASE("thread count does not change results") {
  std::string base = "timing --b 2 --g 8 --family pareto --alpha 1 --replicates 300 --seed 3 ";
  CHECK(run_cli(base + "--threads 1 --out thr1.csv").exit_code == 0);
  CHECK(run_cli(base + "--threads 2 --out thr2.csv").exit_code == 0);
  CHECK(read_file(work_dir() / "thr1.csv") == read_file(work_dir() / "thr2.csv"));
}

TEST_CASE("the echoed config reproduces the identical report") {
  CHECK(run_cli("spacing --family frechet --alpha 1.5 --sizes 50,100 --replicates 60 "
                "--seed 19 --out echo_a.csv")
            .exit_code == 0);
  std::string original = read_file(work_dir() / "echo_a.csv");

  // Rebuild the command line from the '# key=value' echo lines.
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream lines(original);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("# ", 0) != 0) continue;
    std::string body = line.substr(2);
    auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    std::string key = body.substr(0, eq);
    std::string value = body.substr(eq + 1);
    if (key == "evstat") continue;
    if (key == "experiment") {
      experiment = value;
      continue;
    }
    if (key == "slope" || key == "slope_stderr") continue;  // summary lines
    kv.emplace_back(key, value);
  }
  REQUIRE(experiment == "spacing");
  std::string cmd = experiment;
  for (const auto& [key, value] : kv) cmd += " --" + key + " \"" + value + "\"";
  cmd += " --out echo_b.csv";
  CHECK(run_cli(cmd).exit_code == 0);
  CHECK(read_file(work_dir() / "echo_b.csv") == original);
}

TEST_CASE("tree-contrast per-replicate dump lists every replicate") {
  auto res = run_cli("tree-contrast --b 2 --generations 3 --replicates 20 --per-replicate 1 "
                     "--seed 13 --out per_rep.csv");
  CHECK(res.exit_code == 0);
  std::string text = read_file(work_dir() / "per_rep.csv");
  CHECK(text.find("mode,b,G,replicate,rel_gap,log2:dominance_fraction") != std::string::npos);
  std::size_t data_lines = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line.rfind("mode,", 0) != 0) ++data_lines;
  CHECK(data_lines == 40);  // 2 modes x 1 G x 20 replicates
}

TEST_CASE("mechanism --dump-samples writes a single-column csv") {
  auto res = run_cli("mechanism --kind galton-watson --offspring-mean 1 --samples 500 "
                     "--seed 23 --out mech_dump.csv --dump-samples mech_values.csv");
  CHECK(res.exit_code == 0);
  std::string text = read_file(work_dir() / "mech_values.csv");
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "value");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(',') == std::string::npos);
    CHECK(std::stod(line) >= 1.0);
    ++rows;
  }
  CHECK(rows >= 490);  // all uncapped runs
  CHECK(rows <= 500);
}

TEST_CASE("amplitude subcommand states the comparison verdict") {
  auto res = run_cli("amplitude --out amp.csv");
  CHECK(res.exit_code == 0);
  std::string text = read_file(work_dir() / "amp.csv");
  CHECK(text.find("measurement amplitude >> tunnel amplitude") != std::string::npos);
  CHECK(text.find("log2:amplitude") != std::string::npos);
}

TEST_CASE("reports match the golden files") {
  struct Golden {
    const char* args;
    const char* file;
  };
  const Golden cases[] = {
      {"amplitude --rate 300 --lifetime-years 100 --branches 2 --out g_amplitude.csv",
       "amplitude.csv"},
      {"mda --family exp-powerlaw --alpha 2 --beta 1 --ln-x 10,20,40 --out g_mda.csv",
       "mda.csv"},
      {"dominance --family pareto --alpha 1 --sizes 50,100 --replicates 100 --seed 5 "
       "--out g_dominance.csv",
       "dominance.csv"},
      {"mechanism --kind chain-reaction --beta 1 --gamma 1 --samples 5000 --seed 5 "
       "--threads 1 --out g_mechanism.csv",
       "mechanism.csv"},
      {"spacing --family pareto --alpha 2 --sizes 50,100 --replicates 60 --seed 5 "
       "--out g_spacing.csv",
       "spacing.csv"},
      {"bigjump --family pareto --alpha 1 --summands 5 --quantile 0.9 --replicates 5000 "
       "--seed 5 --out g_bigjump.csv",
       "bigjump.csv"},
      {"timing --b 2 --g 6 --family pareto --alpha 1 --replicates 400 --before-end 1,2 "
       "--seed 5 --out g_timing.csv",
       "timing.csv"},
      {"tree-contrast --b 2 --generations 4,6 --replicates 80 --seed 5 --out g_tree-contrast.csv",
       "tree-contrast.csv"},
  };
  for (const auto& c : cases) {
    INFO("golden case: ", std::string(c.file));
    auto res = run_cli(c.args);
    CHECK(res.exit_code == 0);
    fs::path golden = fs::path(EVSTAT_GOLDEN_DIR) / c.file;
    if (!fs::exists(golden)) {
      FAIL_CHECK("missing golden file: ", golden.string());
      continue;
    }
    std::string produced =
        read_file(work_dir() / (std::string("g_") + c.file));
    CHECK(produced == read_file(golden));
  }
}
