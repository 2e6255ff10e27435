#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("mqmsynth_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int cli(const std::string& args) {
  const std::string cmd = std::string(MQMSYNTH_CLI) + " " + args + " >" + path("stdout.txt") + " 2>" + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void setup_models() {
  static bool done = false;
  if (done) return;
  REQUIRE(cli("synth-corpus --pairs 300 --seed 3 --output " + path("c.tsv")) == 0);
  REQUIRE(cli("train-toy --corpus " + path("c.tsv") + " --limit 100 --output " + path("m.model")) == 0);
  REQUIRE(cli("train-toy --corpus " + path("c.tsv") + " --output " + path("l.model")) == 0);
  done = true;
}

}  // namespace

TEST_CASE("pipeline runs and is reproducible") {
  setup_models();
  const std::string base = "pipeline --corpus " + path("c.tsv") + " --generator " + path("m.model") + " --annotator " +
                           path("l.model") + " --limit 40 --seed 5";
  REQUIRE(cli(base + " --output " + path("a.jsonl")) == 0);
  CHECK(slurp(path("stdout.txt")).find("records=40") != std::string::npos);
  REQUIRE(cli(base + " --output " + path("b.jsonl")) == 0);
  CHECK(slurp(path("a.jsonl")) == slurp(path("b.jsonl")));
  CHECK_FALSE(slurp(path("a.jsonl")).empty());

  REQUIRE(cli("evaluate --pred " + path("a.jsonl") + " --gold " + path("a.jsonl")) == 0);
  const std::string report = slurp(path("stdout.txt"));
  CHECK(report.find("span_f1=1.000000") != std::string::npos);
  CHECK(report.find("records=40") != std::string::npos);
}

TEST_CASE("staged commands match the pipeline") {
  setup_models();
  REQUIRE(cli("generate --corpus " + path("c.tsv") + " --generator " + path("m.model") + " --limit 40 --output " +
              path("g.jsonl")) == 0);
  REQUIRE(cli("annotate --input " + path("g.jsonl") + " --annotator " + path("l.model") + " --output " +
              path("s.jsonl")) == 0);
  REQUIRE(cli("pipeline --corpus " + path("c.tsv") + " --generator " + path("m.model") + " --annotator " +
              path("l.model") + " --limit 40 --output " + path("p.jsonl")) == 0);
  CHECK(slurp(path("s.jsonl")) == slurp(path("p.jsonl")));
}

TEST_CASE("config files fill in unspecified options") {
  setup_models();
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# limit only\nlimit = 7\nt-minor = 0.6\n";
  }
  REQUIRE(cli("pipeline --config " + path("run.cfg") + " --corpus " + path("c.tsv") + " --generator " +
              path("m.model") + " --annotator " + path("l.model") + " --output " + path("cfg.jsonl")) == 0);
  CHECK(slurp(path("stdout.txt")).find("records=7") != std::string::npos);
  REQUIRE(cli("pipeline --config " + path("run.cfg") + " --limit 3 --corpus " + path("c.tsv") + " --generator " +
              path("m.model") + " --annotator " + path("l.model") + " --output " + path("cfg.jsonl")) == 0);
  CHECK(slurp(path("stdout.txt")).find("records=3") != std::string::npos);
}

TEST_CASE("exit codes") {
  setup_models();
  const std::string models = " --generator " + path("m.model") + " --annotator " + path("l.model");
  CHECK(cli("pipeline --corpus " + path("missing.tsv") + models + " --output " + path("x.jsonl")) == 2);
  CHECK(cli("pipeline --corpus " + path("c.tsv") + " --generator " + path("m.model") + " --annotator " +
            path("m.model") + " --limit 5 --output " + path("x.jsonl")) == 1);
  CHECK(cli("pipeline --corpus " + path("c.tsv") + " --generator " + path("l.model") + " --annotator " +
            path("m.model") + " --offset 200 --limit 5 --output " + path("x.jsonl")) == 1);
  CHECK(slurp(path("stderr.txt")).find("--amateur") != std::string::npos);
  CHECK(cli("pipeline --corpus " + path("c.tsv") + " --generator " + path("l.model") + " --annotator " +
            path("m.model") + " --offset 200 --limit 5 --amateur --output " + path("x.jsonl")) == 0);
  CHECK(cli("pipeline --corpus " + path("c.tsv") + models + " --t-critical 0.5 --t-major 0.3 --output " +
            path("x.jsonl")) == 1);
  CHECK(cli("pipeline --corpus " + path("c.tsv") + models) == 1);
  CHECK(cli("no-such-command") == 1);
  {
    std::ofstream bad(path("bad.jsonl"));
    bad << "{\"src\":\"a\",\"mt\":\"x\",\"score\":0.3,\"spans\":[]}\n";
  }
  CHECK(cli("evaluate --pred " + path("bad.jsonl") + " --gold " + path("bad.jsonl")) == 1);
}

TEST_CASE("calibrate writes an ordered triple") {
  setup_models();
  REQUIRE(cli("pipeline --corpus " + path("c.tsv") + " --generator " + path("m.model") + " --annotator " +
              path("l.model") + " --limit 30 --output " + path("v.jsonl")) == 0);
  REQUIRE(cli("calibrate --input " + path("v.jsonl") + " --grid-step 0.1 --output " + path("th.txt")) == 0);
  std::istringstream th(slurp(path("th.txt")));
  double c = 0, j = 0, n = 0;
  th >> c >> j >> n;
  CHECK(c < j);
  CHECK(j < n);
}
