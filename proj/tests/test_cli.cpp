#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string g_cli;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << text;
}

}  // namespace

TEST_CASE("fixed-point record") {
  auto r = run("fixed-point --Delta 3 --delta 0.75");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["command"] == "fixed-point");
  CHECK(rec["params"]["Delta"] == 3);
  CHECK(rec["seed"].is_null());
  CHECK(rec["version"].is_string());
  CHECK(rec.contains("duration_ms"));
  CHECK(rec["result"]["x_hat"].get<double>() == doctest::Approx(0.3176721961719807).epsilon(1e-12));
  CHECK(rec["result"]["si_exact"].get<double>() == doctest::Approx(3.6134702675).epsilon(1e-9));
  CHECK(rec["result"]["si_closed_form"] == 8.0);

  // serialize -> parse -> serialize is a fixpoint
  CHECK(json::parse(rec.dump(2)).dump(2) == rec.dump(2));

  auto crit = run("fixed-point --Delta 3 --delta 0");
  json c = json::parse(crit.out);
  CHECK(c["result"]["x_hat"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c["result"]["si_exact"].is_null());  // divergent at criticality
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("fixed-point --Delta 3 --delta 1.5").exit_code == 2);
  CHECK(run("fixed-point --Delta 2 --delta 0.5").exit_code == 2);
  CHECK(run("proof-check --d 2 --delta 0").exit_code == 2);
  CHECK(run("si-verify").exit_code == 2);
  CHECK(run("no-such-command").exit_code != 0);
}

TEST_CASE("si-verify on a graph file") {
  write_file("/tmp/cli_k2.txt", "2\n0 1\n");
  auto r = run("si-verify --graph /tmp/cli_k2.txt --lambda 1");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["worst_inf_norm"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rec["result"]["bound"].get<double>() == doctest::Approx(3.6134702675).epsilon(1e-9));
  CHECK(rec["result"]["pass"] == true);

  // --delta resolves the fugacity through lambda_c of the bound degree
  auto byslack = run("si-verify --graph /tmp/cli_k2.txt --delta 0.75");
  json rs = json::parse(byslack.out);
  CHECK(rs["params"]["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rs["params"]["degree_for_bounds"] == 3);

  auto byoverride = run("si-verify --graph /tmp/cli_k2.txt --delta 0.5 --degree 5");
  json ro = json::parse(byoverride.out);
  CHECK(ro["params"]["lambda"].get<double>() ==
        doctest::Approx(0.5 * 256.0 / 243.0).epsilon(1e-12));
}

TEST_CASE("tree sweep") {
  auto r = run("si-verify --tree-sweep --d 2 --max-n 8 --delta 0.5");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["children_family"]["pass"] == true);
  CHECK(rec["result"]["degree_family"]["pass"] == true);
  CHECK(rec["result"]["children_family"]["max_phi"].get<double>() <
        rec["result"]["children_family"]["bound"].get<double>());
}

TEST_CASE("lb-convergence JSON and CSV") {
  auto r = run("lb-convergence --Delta 3 --delta 0.75 --h-max 2");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["rows"][0]["phi"].get<double>() == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(rec["result"]["rows"][1]["phi"].get<double>() == doctest::Approx(2.2).epsilon(1e-12));

  auto csv = run("lb-convergence --Delta 3 --delta 0.75 --h-max 2 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("h,phi,phi_built_tree,gap_to_limit\n", 0) == 0);

  // csv is rejected where there is no tabular payload
  CHECK(run("fixed-point --Delta 3 --delta 0.5 --format csv").exit_code == 2);
}

TEST_CASE("saw-verify sweeps clean") {
  auto r = run("saw-verify --max-n 5 --max-degree 3 --lambda 1 --lambda 4");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["violations"].empty());
  CHECK(rec["result"]["pass"] == true);
}

TEST_CASE("mix --exact") {
  write_file("/tmp/cli_star3.txt", "4\n0 1\n0 2\n0 3\n");
  auto r = run("mix --graph /tmp/cli_star3.txt --lambda 4 --exact");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["states"] == 9);
  CHECK(rec["result"]["t_mix"].get<long long>() > 0);
  CHECK(rec["result"]["theoretical_exponent"].get<double>() == 8.0);
  auto tv = rec["result"]["worst_tv"];
  for (std::size_t t = 1; t < tv.size(); ++t)
    CHECK(tv[t].get<double>() <= tv[t - 1].get<double>() + 1e-12);

  // dense guard points at the simulate path
  std::string big = "16\n";
  for (int i = 1; i <= 15; ++i) big += "0 " + std::to_string(i) + "\n";
  write_file("/tmp/cli_star15.txt", big);
  CHECK(run("mix --graph /tmp/cli_star15.txt --lambda 1 --exact").exit_code == 2);
}

TEST_CASE("mix --simulate is labeled, seeded, and reproducible") {
  write_file("/tmp/cli_c5.txt", "5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
  CHECK(run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 50 --reps 16")
            .exit_code == 2);  // seed is mandatory

  auto a = run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 50 --reps 16 "
               "--seed 12345");
  CHECK(a.exit_code == 0);
  json ra = json::parse(a.out);
  CHECK(ra["result"]["heuristic"] == true);
  CHECK(ra["seed"] == 12345);
  CHECK(ra["result"]["curve"].size() == 51);

  auto b = run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 50 --reps 16 "
               "--seed 12345");
  json rb = json::parse(b.out);
  CHECK(ra["result"].dump() == rb["result"].dump());  // bit-for-bit payload

  // hex seeds name the same stream
  auto hex = run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 50 --reps 16 "
                 "--seed 0x3039");
  json rh = json::parse(hex.out);
  CHECK(rh["seed"] == 12345);
  CHECK(ra["result"].dump() == rh["result"].dump());

  // different seed, different payload
  auto c = run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 50 --reps 16 "
               "--seed 54321");
  json rc = json::parse(c.out);
  CHECK(ra["result"].dump() != rc["result"].dump());

  // trajectory dump
  auto t = run("mix --graph /tmp/cli_c5.txt --lambda 1 --simulate --horizon 20 --reps 4 "
               "--seed 7 --trajectory /tmp/cli_traj.csv");
  CHECK(t.exit_code == 0);
  std::ifstream traj("/tmp/cli_traj.csv");
  std::string header;
  std::getline(traj, header);
  CHECK(header == "step,vertex_picked,action,popcount");
}

TEST_CASE("proof-check passes on the stress slack") {
  auto r = run("proof-check --d 2 --delta 0.01 --grid 10000");
  CHECK(r.exit_code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["result"]["pass"] == true);
  CHECK(rec["result"]["max_validity_lhs"].get<double>() < 1.0);

  auto r2 = run("proof-check --d 2 --delta 0.75 --grid 2000");
  json rec2 = json::parse(r2.out);
  CHECK(rec2["result"]["argmax_f"].get<double>() ==
        doctest::Approx(0.3176721961719807).epsilon(1e-3));
}

TEST_CASE("results are independent of --threads") {
  auto one = run("si-verify --tree-sweep --d 2 --max-n 9 --delta 0.25 --threads 1");
  auto two = run("si-verify --tree-sweep --d 2 --max-n 9 --delta 0.25 --threads 2");
  CHECK(json::parse(one.out)["result"].dump() == json::parse(two.out)["result"].dump());

  auto s1 = run("saw-verify --max-n 5 --lambda 1 --threads 1");
  auto s2 = run("saw-verify --max-n 5 --lambda 1 --threads 2");
  CHECK(json::parse(s1.out)["result"].dump() == json::parse(s2.out)["result"].dump());

  write_file("/tmp/cli_c5b.txt", "5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
  auto m1 = run("mix --graph /tmp/cli_c5b.txt --lambda 1 --simulate --horizon 40 --reps 32 "
                "--seed 5 --threads 1");
  auto m2 = run("mix --graph /tmp/cli_c5b.txt --lambda 1 --simulate --horizon 40 --reps 32 "
                "--seed 5 --threads 2");
  CHECK(json::parse(m1.out)["result"].dump() == json::parse(m2.out)["result"].dump());
}

TEST_CASE("--out writes the record to a file") {
  auto r = run("fixed-point --Delta 4 --delta 0.5 --out /tmp/cli_out.json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f("/tmp/cli_out.json");
  json rec = json::parse(f);
  CHECK(rec["result"]["lambda"].get<double>() == doctest::Approx(0.84375).epsilon(1e-12));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
