// End-to-end checks against the built binary. CTest points
// ENCOUNTER_NET_BIN at it; every command runs through std::system with
// stdout/stderr captured in a scratch directory.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string& bin() {
  static const std::string path = [] {
    const char* p = std::getenv("ENCOUNTER_NET_BIN");
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return path;
}

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "encounter-net-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string p(const std::string& name) { return (scratch() / name).string(); }

void put(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  const std::string cmd =
      bin() + " " + args + " > " + p("stdout.txt") + " 2> " + p("stderr.txt");
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("cli pipeline from sightings to diffusion") {
  put(p("raw.csv"),
      "alice,cafe,60\n"
      "alice,cafe,0\n"
      "alice,cafe,0\n"  // duplicate collapses on ingest
      "bob,cafe,30\n"
      "bob,cafe,90\n"
      "carol,gym,0\n"
      "alice,gym,400\n"
      "carol,gym,430\n");

  REQUIRE(run("ingest --input " + p("raw.csv") + " --output " + p("sightings.csv")) == 0);
  CHECK(slurp(p("sightings.csv")) ==
        "alice,cafe,0\nalice,cafe,60\nalice,gym,400\nbob,cafe,30\nbob,cafe,90\n"
        "carol,gym,0\ncarol,gym,430\n");
  CHECK(load_json(p("sightings.csv") + ".manifest.json")["command"] == "ingest");

  REQUIRE(run("sessions --input " + p("sightings.csv") + " --output " + p("sessions.csv")) == 0);
  CHECK(slurp(p("sessions.csv")) ==
        "device_id,scanner_id,start,end\n"
        "alice,cafe,0,120\nalice,gym,400,460\nbob,cafe,30,150\n"
        "carol,gym,0,60\ncarol,gym,430,490\n");

  REQUIRE(run("encounters --sessions " + p("sessions.csv") + " --output " + p("trace.enc")) == 0);
  CHECK(slurp(p("trace.enc")) == "alice,bob,cafe,30,120\nalice,carol,gym,430,460\n");
  CHECK(slurp(p("stdout.txt")) == "encounters: 2 encounters, 3 devices -> " + p("trace.enc") + "\n");

  // the same trace straight from sightings
  REQUIRE(run("encounters --sightings " + p("sightings.csv") + " --output " + p("trace2.enc")) == 0);
  CHECK(slurp(p("trace2.enc")) == slurp(p("trace.enc")));

  REQUIRE(run("metrics --trace " + p("trace.enc") + " --output " + p("summary.json") +
              " --degree-output " + p("degrees.csv")) == 0);
  const json summary = load_json(p("summary.json"));
  CHECK(summary["size"] == 3);
  CHECK(summary["edges"] == 2);
  CHECK(summary["core"] == 3);
  CHECK(summary["lambda_max"] == 2);
  CHECK(summary["C"] == 0.0);
  CHECK(slurp(p("degrees.csv")) == "k,count,C_k\n1,2,0\n2,1,0\n");
  const json manifest = load_json(p("summary.json") + ".manifest.json");
  CHECK(manifest["outputs"] == json::array({p("summary.json"), p("degrees.csv")}));
  CHECK_FALSE(manifest["parameters"].contains("threads"));

  REQUIRE(run("temporal --sessions " + p("sessions.csv") + " --nodes-output " + p("nodes.csv") +
              " --trace " + p("trace.enc") + " --links-output " + p("links.csv")) == 0);
  CHECK(slurp(p("nodes.csv")) ==
        "device_id,n_p,n_f\nalice,180,2\nbob,120,1\ncarol,120,2\n");
  CHECK(slurp(p("links.csv")) == "a,b,l_p,l_f\nalice,bob,90,1\nalice,carol,30,1\n");

  put(p("samples.csv"), "x,c\n1,12\n2,3\n4,1\n");
  REQUIRE(run("fit --input " + p("samples.csv") + " --column x --count-column c --output " +
              p("fit.json") + " --ccdf-output " + p("ccdf.csv")) == 0);
  const json fit = load_json(p("fit.json"));
  CHECK(fit["method"] == "ccdf_ls");
  CHECK(fit["n_tail"] == 16);
  CHECK(std::abs(fit["alpha_minus_1"].get<double>() - 2.0) < 1e-9);
  CHECK(slurp(p("ccdf.csv")) == "x,p\n1,1\n2,0.25\n4,0.0625\n");

  REQUIRE(run("emulate --trace " + p("trace.enc") + " --output " + p("sweep.json")) == 0);
  const json sweep = load_json(p("sweep.json"));
  CHECK(sweep["injections"] == 4);
  CHECK(sweep["mean_final_reach"] == 2.5);
  CHECK(sweep["model"] == "si");

  REQUIRE(run("emulate --trace " + p("trace.enc") + " --injection-device alice" +
              " --injection-time 30 --output " + p("one.json") + " --curves-output " +
              p("one_curve.csv")) == 0);
  const json one = load_json(p("one.json"));
  CHECK(one["total_infected"] == 3);
  CHECK_FALSE(one.contains("extinction_time"));
  CHECK(slurp(p("one_curve.csv")) ==
        "injection_device,injection_time,event_time,count\n"
        "alice,30,30,2\nalice,30,430,3\n");

  REQUIRE(run("remove --trace " + p("trace.enc") +
              " --fractions 0,0.5,1 --output " + p("removal.json")) == 0);
  const json removal = load_json(p("removal.json"));
  CHECK(removal["0"]["mean_final_reach"] == 2.5);
  // the injection universe shrinks with the filtered trace
  CHECK(removal["0.5"]["mean_final_reach"] == 2.0);
  CHECK(removal["0.5"]["injections"] == 2);
  CHECK(removal["1"]["mean_final_reach"] == 0.0);
  CHECK(removal["1"]["injections"] == 0);

  REQUIRE(run("remove --trace " + p("trace.enc") + " --fractions 0.5 --filtered-output " +
              p("filtered.enc")) == 0);
  CHECK(slurp(p("filtered.enc")) == "# device: carol\nalice,bob,cafe,30,120\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("--version") == 0);
  CHECK(run("--help") == 0);
  CHECK(run("metrics --trace " + p("does-not-exist.enc") + " --output " + p("x.json")) == 1);
  CHECK(run("encounters --output " + p("x.enc")) == 2);

  put(p("bad.csv"), "only-two,fields\n");
  CHECK(run("sessions --input " + p("bad.csv") + " --output " + p("x.csv")) == 1);
  CHECK(slurp(p("stderr.txt")).find("line 1") != std::string::npos);

  put(p("short.csv"), "x\n1\n2\n3\n");
  CHECK(run("fit --input " + p("short.csv") + " --column x --output " + p("x.json")) == 1);

  put(p("pair.enc"), "a,b,s,0,10\n");
  CHECK(run("emulate --trace " + p("pair.enc") + " --model sis --output " + p("x.json")) == 2);
  CHECK(run("emulate --trace " + p("pair.enc") + " --injection-device a --output " +
            p("x.json")) == 2);
  CHECK(run("remove --trace " + p("pair.enc") + " --fractions 0.1,0.2 --filtered-output " +
            p("x.enc")) == 2);
  CHECK(run("remove --trace " + p("pair.enc") + " --fractions 2.0 --output " + p("x.json")) == 2);
}

TEST_CASE("cli growth is reproducible") {
  const std::string common = " --population 30 --steps 100 --seed 7";
  REQUIRE(run("growth --trace-output " + p("g1.enc") + " --summary-output " + p("s1.json") +
              common + " --threads 1") == 0);
  REQUIRE(run("growth --trace-output " + p("g2.enc") + " --summary-output " + p("s2.json") +
              common + " --threads 3") == 0);
  CHECK(slurp(p("g1.enc")) == slurp(p("g2.enc")));
  CHECK(slurp(p("s1.json")) == slurp(p("s2.json")));
  CHECK_FALSE(slurp(p("g1.enc")).empty());

  REQUIRE(run("growth --trace-output " + p("g3.enc") + " --population 30 --steps 100 --seed 8") ==
          0);
  CHECK(slurp(p("g3.enc")) != slurp(p("g1.enc")));
}

TEST_CASE("cli growth config file with overrides") {
  put(p("growth.json"), R"({"population": 5, "steps": 10, "seed": 3})");
  REQUIRE(run("growth --config " + p("growth.json") + " --steps 20 --trace-output " +
              p("g4.enc")) == 0);
  const json manifest = load_json(p("g4.enc") + ".manifest.json");
  CHECK(manifest["parameters"]["population"] == 5);
  CHECK(manifest["parameters"]["steps"] == 20);
  CHECK(manifest["parameters"]["seed"] == 3);
  CHECK(manifest["inputs"] == json::array({p("growth.json")}));
}
