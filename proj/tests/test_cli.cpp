#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = CLI_PATH;
const fs::path kFixtures = fs::path(FIXTURE_DIR);
const fs::path kConditions = fs::path(CONDITIONS_DIR);

int run_command(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("egrlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exit codes: success, invariant failure, configuration error") {
  const fs::path out = scratch("exit_codes");

  CHECK(run_command("simulate --chains 50 --seed 7 --out " + (out / "sim").string()) == 0);

  // Self-test negative control: inverted comparisons must fail loudly.
  CHECK(run_command("simulate --chains 20 --seed 7 --invert-checks --out " +
                    (out / "neg").string()) == 1);

  // http backend without its token environment variable: config error.
  ::unsetenv("EGRLAB_API_TOKEN");
  CHECK(run_command("run --condition C8 --backend http --corpus " +
                    (kFixtures / "claims_small.jsonl").string() + " --conditions-dir " +
                    kConditions.string() + " --out " + (out / "run").string()) == 2);

  // Unknown condition id: config error.
  CHECK(run_command("run --condition C99 --corpus " +
                    (kFixtures / "claims_small.jsonl").string() + " --conditions-dir " +
                    kConditions.string() + " --out " + (out / "run2").string()) == 2);

  fs::remove_all(out);
}

TEST_CASE("a declarative identity chain logs a constant trajectory") {
  const fs::path out = scratch("identity_chain");
  const fs::path spec = out / "spec.json";
  {
    std::ofstream f(spec);
    f << R"({
      "evidence_alphabet": 2, "state_alphabet": 2, "seed": 1,
      "init": {"kind": "table", "table": [[0.4, 0.1], [0.1, 0.4]]},
      "steps": [
        {"kind": "closed", "channel": "identity"},
        {"kind": "closed", "channel": "identity"},
        {"kind": "closed", "channel": "identity"}
      ]
    })";
  }
  CHECK(run_command("simulate --chains 1 --seed 1 --spec " + spec.string() + " --out " +
                    out.string()) == 0);
  const std::string csv = slurp(out / "trajectory.csv");
  REQUIRE(!csv.empty());
  // All four rounds carry the same MI value.
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = csv.find("0.27807190511263774", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 4);
  fs::remove_all(out);
}

TEST_CASE("score is deterministic and honors the empty policy") {
  const fs::path out = scratch("score_determinism");
  const std::string corpus = (kFixtures / "claims_small.jsonl").string();
  REQUIRE(run_command("run --condition C15 --corpus " + corpus + " --conditions-dir " +
                      kConditions.string() + " --seed 7 --out " +
                      (out / "run").string()) == 0);

  const std::string score_args = "score --run " + (out / "run").string() + " --corpus " +
                                 corpus + " --score-empty-as-zero --out ";
  REQUIRE(run_command(score_args + (out / "s1").string()) == 0);
  REQUIRE(run_command(score_args + (out / "s2").string()) == 0);
  CHECK(slurp(out / "s1" / "trial_scores.csv") == slurp(out / "s2" / "trial_scores.csv"));

  // Vote tallies decompose to nothing: condition SFS collapses to zero.
  const std::string summary = slurp(out / "s1" / "condition_summary.csv");
  CHECK(summary.find("C15,40,0,") != std::string::npos);
  const auto line_start = summary.find("C15,");
  const std::string line = summary.substr(line_start, summary.find('\n', line_start) - line_start);
  CHECK(line.find(",0,") != std::string::npos);  // sfs column reads exactly 0

  // Without the flag, empty decompositions surface as scoring failures.
  REQUIRE(run_command("score --run " + (out / "run").string() + " --corpus " + corpus +
                      " --out " + (out / "s3").string()) == 0);
  const std::string strict = slurp(out / "s3" / "condition_summary.csv");
  CHECK(strict.find("C15,40,40,") != std::string::npos);  // all trials flagged
  fs::remove_all(out);
}

TEST_CASE("analyze rejects the primary contrast and handles empty specs") {
  const fs::path out = scratch("analyze");
  const std::string corpus = (kFixtures / "claims_small.jsonl").string();
  for (const std::string id : {"C1", "C4"}) {
    REQUIRE(run_command("run --condition " + id + " --corpus " + corpus +
                        " --conditions-dir " + kConditions.string() + " --seed 7 --out " +
                        (out / ("run_" + id)).string()) == 0);
  }
  REQUIRE(run_command("score --run " + (out / "run_C1").string() + " --run " +
                      (out / "run_C4").string() + " --corpus " + corpus +
                      " --score-empty-as-zero --out " + (out / "scores").string()) == 0);

  const fs::path hyp = out / "h1.json";
  {
    std::ofstream f(hyp);
    f << R"([{"id": "H1", "type": "paired", "metric": "sfs",
              "a": "C4", "b": "C1", "direction": "less"}])";
  }
  REQUIRE(run_command("analyze --scores " + (out / "scores" / "trial_scores.csv").string() +
                      " --hypotheses " + hyp.string() + " --ratings " +
                      (kFixtures / "ratings_synthetic.csv").string() + " --out " +
                      (out / "analysis").string()) == 0);
  const std::string table = slurp(out / "analysis" / "hypothesis_table.csv");
  CHECK(table.find("H1,sfs,C4,C1,") != std::string::npos);
  CHECK(table.find(",reject") != std::string::npos);
  CHECK(fs::exists(out / "analysis" / "kappa_q2_matrix.csv"));
  CHECK(fs::exists(out / "analysis" / "agreement_summary.json"));

  // Empty hypothesis family: only the correlation and kappa sections appear.
  const fs::path empty = out / "empty.json";
  {
    std::ofstream f(empty);
    f << "[]";
  }
  REQUIRE(run_command("analyze --scores " + (out / "scores" / "trial_scores.csv").string() +
                      " --hypotheses " + empty.string() + " --ratings " +
                      (kFixtures / "ratings_synthetic.csv").string() + " --out " +
                      (out / "analysis_empty").string()) == 0);
  CHECK_FALSE(fs::exists(out / "analysis_empty" / "hypothesis_table.csv"));
  CHECK(fs::exists(out / "analysis_empty" / "correlation_table.csv"));
  CHECK(fs::exists(out / "analysis_empty" / "kappa_q2_matrix.csv"));
  fs::remove_all(out);
}

TEST_CASE("report emits parseable tables in all formats") {
  const fs::path out = scratch("report");
  const std::string corpus = (kFixtures / "claims_small.jsonl").string();
  REQUIRE(run_command("run --condition C1 --corpus " + corpus + " --conditions-dir " +
                      kConditions.string() + " --seed 7 --out " +
                      (out / "run").string()) == 0);
  REQUIRE(run_command("score --run " + (out / "run").string() + " --corpus " + corpus +
                      " --score-empty-as-zero --out " + (out / "scores").string()) == 0);
  REQUIRE(run_command("report --scores " +
                      (out / "scores" / "trial_scores.csv").string() + " --out " +
                      (out / "report").string()) == 0);
  for (const std::string ext : {".csv", ".json", ".md"}) {
    CHECK(fs::exists(out / "report" / ("condition_table" + ext)));
  }
  const std::string md = slurp(out / "report" / "condition_table.md");
  CHECK(md.find("| C1 |") != std::string::npos);
  fs::remove_all(out);
}
