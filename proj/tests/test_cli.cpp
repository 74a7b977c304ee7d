#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cli_harness.hpp"
#include "urllc/cli/kv_config.hpp"
#include "urllc/cli/output.hpp"

using namespace urllc;
using namespace urllc::testing;

TEST_CASE("kv parser") {
  std::istringstream ok("# comment\n\nn = 200   # trailing\nbeta-b=1e-6\n");
  const auto entries = cli::parse_kv(ok, "ok.cfg");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].key == "n");
  CHECK(entries[0].value == "200");
  CHECK(entries[0].line == 3);
  CHECK(cli::find_entry(entries, "beta-b")->value == "1e-6");
  CHECK(cli::find_entry(entries, "nope") == nullptr);

  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      cli::parse_kv(in, "bad.cfg");
    } catch (const cli::ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("a = 1\n\nthis line has no equals\n") == 3);
  CHECK(line_of("a = 1\na = 2\n") == 2);
  CHECK(line_of("a = \n") == 1);
  CHECK(line_of("a b = 1\n") == 1);
}

TEST_CASE("number formatting") {
  CHECK(cli::format_real(0.1) == "0.10000000000000001");
  CHECK(cli::format_real(2.0) == "2");
  CHECK(cli::format_real(INFINITY) == "inf");
  CHECK(cli::format_real(-INFINITY) == "-inf");
  CHECK(cli::format_prob(0.5) == "5.000000000000000e-01");
  CHECK(cli::format_bool(true) == "true");
}

TEST_CASE("fig2 writes one row per (n, rate)") {
  ScratchDir dir("fig2");
  const auto r = run_cli({"fig2", "--n-list", "100,200", "--steps", "50", "--out", dir.file("f.csv"), "--svg",
                          dir.file("f.svg")});
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(dir.file("f.csv")));
  CHECK(rows.front() == "n,rate,epsilon");
  CHECK(rows.size() == 1 + 2 * 50);
  CHECK(slurp(dir.file("f.svg")).find("<svg") != std::string::npos);
  CHECK(slurp(dir.file("f.csv.manifest")).find("command = fig2") != std::string::npos);
}

TEST_CASE("fig3 columns and row count") {
  ScratchDir dir("fig3");
  const auto r = run_cli({"fig3", "--n-min", "10", "--n-max", "100", "--n-step", "10", "--out", dir.file("f.csv")});
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(dir.file("f.csv")));
  CHECK(rows.front() == "n,r_b_eps,r_e_eps,delta_r,feasible");
  CHECK(rows.size() == 11);
}

TEST_CASE("gap and interval print tables") {
  const auto g = run_cli({"gap", "--n", "500", "--rate", "1"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("gap_db") != std::string::npos);
  CHECK(g.out.find("1.5456804395594") != std::string::npos);

  const auto i = run_cli({"interval", "--n", "200", "--snr-b-db", "5", "--snr-e-db", "5"});
  REQUIRE(i.code == 0);
  CHECK(i.out.find("feasible") != std::string::npos);
  CHECK(i.out.find("false") != std::string::npos);
}

TEST_CASE("minblock exit codes") {
  const auto ok = run_cli({"minblock", "--snr-b-db", "10", "--snr-e-db", "0"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("n_min") != std::string::npos);
  const auto none = run_cli({"minblock", "--snr-b-db", "0", "--snr-e-db", "10"});
  CHECK(none.code == cli::kExitUnsatisfiable);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run_cli({}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"bogus"}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"gap", "--n", "0"}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"gap", "--beta-b", "1.5"}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"fig2"}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"fig2", "--n-list", "10,x", "--out", "/tmp/x.csv"}).code == cli::kExitInvalidArguments);
  CHECK(run_cli({"gap", "--help"}).code == cli::kExitOk);
}

TEST_CASE("unsatisfiable gap exits with 3") {
  const auto r = run_cli({"gap", "--n", "10", "--rate", "40"});
  CHECK(r.code == cli::kExitUnsatisfiable);
  CHECK(r.err.find("reliability") != std::string::npos);
}

TEST_CASE("unwritable output exits with 4") {
  const auto r = run_cli({"fig2", "--out", "/nonexistent-dir/x/y.csv"});
  CHECK(r.code == cli::kExitIoFailure);
}

TEST_CASE("config files supply defaults and report bad lines") {
  ScratchDir dir("cfg");
  {
    std::ofstream cfg(dir.file("run.cfg"));
    cfg << "# lob settings\ntrials = 50\nan-fraction = 0.3\nseed = 5\n";
  }
  const auto r = run_cli({"lob", "--config", dir.file("run.cfg"), "--trials", "20", "--out", dir.file("l.csv")});
  REQUIRE(r.code == 0);
  CHECK(lines_of(slurp(dir.file("l.csv"))).size() == 21);
  CHECK(slurp(dir.file("l.csv.manifest")).find("an-fraction = 0.29999999999999999") != std::string::npos);

  {
    std::ofstream cfg(dir.file("bad.cfg"));
    cfg << "trials = 50\n\nwarp-speed = 9\n";
  }
  const auto bad = run_cli({"lob", "--config", dir.file("bad.cfg"), "--out", dir.file("l.csv")});
  CHECK(bad.code == cli::kExitInvalidArguments);
  CHECK(bad.err.find("bad.cfg:3") != std::string::npos);
  CHECK(bad.err.find("warp-speed") != std::string::npos);

  CHECK(run_cli({"lob", "--config", dir.file("missing.cfg"), "--out", dir.file("l.csv")}).code == cli::kExitIoFailure);
}

TEST_CASE("simulation commands and replay") {
  ScratchDir dir("sim");
  const auto c = run_cli({"cipc", "--trials", "300", "--seed", "11", "--out", dir.file("c.csv")});
  REQUIRE(c.code == 0);
  const auto rows = lines_of(slurp(dir.file("c.csv")));
  CHECK(rows.front() == "trial_id,p_t,gamma_b_db,gamma_e_db,r_sup,r_inf,delta_r,feasible");
  CHECK(rows.size() == 301);

  const auto replay = run_cli({"replay", dir.file("c.csv.manifest"), "--out", dir.file("c2.csv")});
  REQUIRE(replay.code == 0);
  CHECK(slurp(dir.file("c.csv")) == slurp(dir.file("c2.csv")));

  const auto l = run_cli({"lob", "--trials", "100", "--loc-err-deg", "3", "--an-fraction", "0.2", "--out",
                          dir.file("l.csv")});
  REQUIRE(l.code == 0);
  CHECK(lines_of(slurp(dir.file("l.csv"))).front() ==
        "trial_id,theta_hat_deg,sinr_b_db,sinr_e_db,r_sup,r_inf,delta_r,feasible");
  REQUIRE(run_cli({"replay", dir.file("l.csv.manifest"), "--out", dir.file("l2.csv")}).code == 0);
  CHECK(slurp(dir.file("l.csv")) == slurp(dir.file("l2.csv")));

  const auto q = run_cli({"optimize-q", "--q-grid", "0.5,1,2", "--trials", "200", "--out", dir.file("q.csv")});
  REQUIRE(q.code == 0);
  CHECK(lines_of(slurp(dir.file("q.csv"))).size() == 4);
  CHECK(q.out.find("q_star") != std::string::npos);

  const auto a = run_cli({"optimize-an", "--phi-grid", "0,0.5", "--trials", "200", "--out", dir.file("a.csv")});
  REQUIRE(a.code == 0);
  CHECK(lines_of(slurp(dir.file("a.csv"))).size() == 3);
  CHECK(run_cli({"optimize-an", "--phi-grid", "0,1", "--out", dir.file("a.csv")}).code == cli::kExitInvalidArguments);
}

TEST_CASE("cipc marks suspended trials") {
  ScratchDir dir("susp");
  REQUIRE(run_cli({"cipc", "--trials", "200", "--q", "10", "--p-max", "1", "--out", dir.file("c.csv")}).code == 0);
  const std::string csv = slurp(dir.file("c.csv"));
  CHECK(csv.find(",suspended,") != std::string::npos);
}
