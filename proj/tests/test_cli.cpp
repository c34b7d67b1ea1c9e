#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mielab/cli.hpp"

using namespace mielab;

namespace {

struct RunResult {
  int code = 0;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("thresholds report") {
  RunResult r = run({"mielab", "thresholds"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"chi_crit\": 7") != std::string::npos);
  CHECK(r.out.find("419479") != std::string::npos);
  CHECK(r.out.find("\"advantage_m\": 6") != std::string::npos);
  RunResult csv = run({"mielab", "thresholds", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("key,value") == 0);
  CHECK(csv.out.find("chi_crit,7") != std::string::npos);
}

TEST_CASE("walk enumeration report") {
  RunResult r = run({"mielab", "saw-enum", "--lattice", "square", "--max-n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("n,walks,polygons") != std::string::npos);
  CHECK(r.out.find("10,44100,") != std::string::npos);
}

TEST_CASE("strip partition sum report") {
  RunResult r = run({"mielab", "zsaw", "--Lx", "4", "--Ly", "3", "--beta", "2.0", "--lmax",
                     "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"tail_certified\": true") != std::string::npos);
  CHECK(r.out.find("total_upper") != std::string::npos);
}

TEST_CASE("bound chain report") {
  RunResult r = run({"mielab", "bound", "--Z", "0.01"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"valid\": true") != std::string::npos);
  CHECK(r.out.find("mie_lower_nats") != std::string::npos);
  RunResult weak = run({"mielab", "bound", "--Z", "0.5"});
  CHECK(weak.code == 0);
  CHECK(weak.out.find("\"valid\": false") != std::string::npos);
}

TEST_CASE("invalid input is rejected") {
  CHECK(run({"mielab", "no-such-command"}).code != 0);
  CHECK(run({"mielab", "zsaw", "--Lx", "50"}).code != 0);
  CHECK(run({"mielab", "thresholds", "--format", "xml"}).code != 0);
  CHECK(run({"mielab", "thresholds", "--config", "/nonexistent/cfg.json"}).code != 0);
}

TEST_CASE("config file supplies defaults but flags win") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mielab_cli_test";
  fs::create_directories(dir);
  fs::path cfg = dir / "cfg.json";
  {
    std::ofstream f(cfg);
    f << "{\"Lx\": 4, \"Ly\": 3, \"beta\": 2.0, \"lmax\": 10}\n";
  }
  RunResult from_cfg = run({"mielab", "zsaw", "--config", cfg.string()});
  RunResult from_flags =
      run({"mielab", "zsaw", "--Lx", "4", "--Ly", "3", "--beta", "2.0", "--lmax", "10"});
  CHECK(from_cfg.code == 0);
  CHECK(from_cfg.out == from_flags.out);
  // explicit flag overrides the config value
  RunResult overridden = run({"mielab", "zsaw", "--config", cfg.string(), "--beta", "3.0"});
  RunResult direct =
      run({"mielab", "zsaw", "--Lx", "4", "--Ly", "3", "--beta", "3.0", "--lmax", "10"});
  CHECK(overridden.code == 0);
  CHECK(overridden.out == direct.out);
  {
    std::ofstream f(cfg);
    f << "[1,2,3]\n";
  }
  CHECK(run({"mielab", "zsaw", "--config", cfg.string()}).code != 0);
  fs::remove_all(dir);
}

TEST_CASE("output files mirror stdout") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mielab_cli_out";
  fs::remove_all(dir);
  RunResult r = run({"mielab", "thresholds", "--out", dir.string()});
  CHECK(r.code == 0);
  fs::path file = dir / "thresholds.json";
  REQUIRE(fs::exists(file));
  std::ifstream f(file);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == r.out);
  fs::remove_all(dir);
}

TEST_CASE("simulation subcommands run end to end") {
  RunResult mie = run({"mielab", "mie-sim", "--Lx", "1", "--Ly", "3", "--chi", "2",
                       "--n-circuits", "4", "--seed", "7"});
  CHECK(mie.code == 0);
  CHECK(mie.out.find("circuit,mie") != std::string::npos);
  CHECK(mie.out.find("# mean=") != std::string::npos);
  RunResult di = run({"mielab", "distill", "--Lx", "1", "--Ly", "3", "--chi", "2", "--d-prime",
                      "2", "--n-unitaries", "4", "--seed", "7"});
  CHECK(di.code == 0);
  CHECK(di.out.find("eps_mean") != std::string::npos);
  RunResult qu =
      run({"mielab", "quasi", "--Lx", "2", "--Ly", "2", "--chi", "2", "--n-circuits", "8"});
  CHECK(qu.code == 0);
  CHECK(qu.out.find("q2_predicted") != std::string::npos);
  RunResult sa = run({"mielab", "stab-advantage", "--n-samples", "20", "--seed", "3"});
  CHECK(sa.code == 0);
  CHECK(sa.out.find("sample,S_H,S_I,S_J,g,e_HI,e_HJ,e_IJ,pass") != std::string::npos);
  CHECK(sa.out.find("# p_hat=") != std::string::npos);
  RunResult sb = run({"mielab", "sebd", "--Lx", "4", "--Ly", "4", "--chi", "2", "--n-samples",
                      "2", "--seed", "5", "--chi-max", "8"});
  CHECK(sb.code == 0);
  CHECK(sb.out.find("sample,t,chi_used,discarded,half_chain_entropy,aborted") !=
        std::string::npos);
}

TEST_CASE("selfcheck single criterion") {
  RunResult r = run({"mielab", "selfcheck", "--only", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("criterion 1: PASS") != std::string::npos);
}
