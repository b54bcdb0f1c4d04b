#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef FFDIST_CLI
#error "FFDIST_CLI must name the ffdist executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FFDIST_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("ffdist_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("field subcommand") {
  const Run r = run("field --p 3 --n 1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "ffdist.field/1");
  CHECK(j.at("q") == 3);
  CHECK(j.at("hypothesis") == true);
  CHECK(j.at("orth_group_order") == 8);
  CHECK(j.at("sphere_sizes") == nlohmann::json::array({1, 4, 4}));
  CHECK(nlohmann::json::parse(run("field --q 27").out).at("modulus") == nlohmann::json::array({1, 0, 2, 1}));
  CHECK(nlohmann::json::parse(run("field --p 5").out).at("hypothesis") == false);
}

TEST_CASE("count and delta subcommands") {
  const std::string tri = temp_file("tri.pts", "0,0\n1,0\n0,1\n");
  const Run r = run("count --p 3 --n 1 --set " + tri + " --graph triangle --t 1,1,2");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("nu") == 2);

  const auto full = nlohmann::json::parse(run("count --q 3 --set " + tri + " --graph bowtie").out);
  CHECK(full.at("psi22") == 16816);
  CHECK(full.at("psi31") == 18648);
  CHECK(full.at("set_size") == 3);

  const std::string mask = (std::filesystem::temp_directory_path() / "ffdist_cli_mask.txt").string();
  const auto d = nlohmann::json::parse(run("delta --q 3 --set " + tri + " --graph edge --dump-mask " + mask).out);
  CHECK(d.at("delta_size") == 3);
  std::ifstream in(mask);
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all == "0\n1\n2\n");

  const std::string square = temp_file("square.graph", "vertices 4\n0 1\n1 2\n2 3\n0 3\n");
  CHECK(run("delta --q 3 --set " + tri + " --graph-file " + square).code == 0);
}

TEST_CASE("exit codes") {
  const std::string tri = temp_file("tri2.pts", "0,0\n1,0\n0,1\n");
  CHECK(run("field --p 3 --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("verify --p 3 --trials 2").code == 2);  // no seed
  CHECK(run("field --p 9").code == 2);
  CHECK(run("count --q 3 --set " + tri + " --graph triangle --t 1,1").code == 2);
  CHECK(run("count --q 3 --set /nonexistent/file.pts").code == 3);
  CHECK(run("count --q 3 --set " + temp_file("bad.pts", "0;0\n")).code == 3);
  CHECK(run("sweep --q-list 3 --trials 1").code == 2);  // no seed
  CHECK(run("sweep --config " + temp_file("bad.json", "{\"seed\": 1, \"oops\": 2}")).code == 3);
  CHECK(run("verify --p 3 --trials 5 --seed 1 --inject-fault").code == 1);
}

TEST_CASE("verify subcommand") {
  const Run r = run("verify --p 3 --n 1 --trials 100 --seed 42");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("passed") == true);
  CHECK(j.at("schema") == "ffdist.verify/1");
}

TEST_CASE("identical invocations give identical stdout, whatever the thread cap") {
  const std::string tri = temp_file("tri3.pts", "0,0\n1,0\n0,1\n2,2\n1,2\n");
  const Run a = run("--threads 1 count --q 7 --set " + tri + " --graph bowtie");
  const Run b = run("--threads 4 count --q 7 --set " + tri + " --graph bowtie");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify --q 7 --trials 3 --seed 9").out == run("--threads 3 verify --q 7 --trials 3 --seed 9").out);
}

TEST_CASE("sweep subcommand") {
  const Run r = run("sweep --q-list 3 --trials 2 --seed 4 --graph triangle --exponent 2");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("q,graph,kind,seed,set_size,delta_size,ratio,nu_sq_sum,psi22,psi31,", 0) == 0);
  CHECK(r.out.find("\n3,triangle,uniform,") != std::string::npos);

  const std::string cfg = temp_file("cfg.json", R"({"q_list": [3], "trials": 1, "seed": 8, "graph": "edge"})");
  const Run flags_win = run("sweep --config " + cfg + " --graph triangle --no-lemmas");
  CHECK(flags_win.code == 0);
  CHECK(flags_win.out.find(",triangle,") != std::string::npos);

  const Run empty = run("sweep --config " + temp_file("empty.json", R"({"q_list": [], "seed": 1})"));
  CHECK(empty.out == "q,graph,kind,seed,set_size,delta_size,ratio,nu_sq_sum,psi22,psi31,bound1_ratio,cubic_ratio,"
                     "alpha_linf_ratio,alpha_zero_ratio,kite_I_ratio,kite_II_ratio,kite_III_ratio,elapsed_ms\n");
}
