#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const char* exe = std::getenv("CARTAN_CLI");
  REQUIRE_MESSAGE(exe, "CARTAN_CLI must point at the cartan executable");
  std::string cmd = std::string(exe) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("dim") {
  auto r = cli("dim --family K --p 5 --n 3");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "125");
  CHECK(first_line(cli("dim --family H --p 5 --n 2").out) == "23");
  auto bad = cli("dim --family K --p 5 --n 4");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("parity") != std::string::npos);
  CHECK(cli("dim --family K --p 4 --n 3").code == 2);
  auto j = nlohmann::json::parse(cli("dim --family H --p 5 --n 2 --format json").out);
  CHECK(j.at("dim") == 23);
}

TEST_CASE("bracket") {
  CHECK(first_line(cli("bracket --family K --p 5 --n 3 --a 0,0,1 --b 1,0,0").out) == "4*x1");
  CHECK(first_line(cli("bracket --family K --p 5 --n 3 --a 1,0,1 --b 0,0,0").out) == "3*x1");
  CHECK(first_line(cli("bracket --family K --p 5 --n 3 --a 0,0,0 --b 0,0,0").out) == "0");
  CHECK(first_line(cli("bracket --family H --p 5 --n 2 --a x1^2 --b x2^2").out) == "4*x1*x2");
  CHECK(cli("bracket --family H --p 5 --n 2 --a 4,4 --b 1,0").code == 2);
}

TEST_CASE("cohomology subcommands") {
  auto adj = nlohmann::json::parse(cli("h2 --family H --p 5 --n 2 --coefficients adjoint --format json").out);
  CHECK(adj.at("dimH") == 3);
  CHECK(adj.at("schema") == 1);
  CHECK(adj.at("representatives").size() == 3);
  auto triv = nlohmann::json::parse(cli("h2 --family H --p 5 --n 2 --coefficients trivial --format json").out);
  CHECK(triv.at("dimH") == 3);
  auto h3 = nlohmann::json::parse(cli("h3 --family H --p 5 --n 2 --coefficients trivial --format json").out);
  CHECK(h3.at("k") == 3);
  MESSAGE("h3 trivial H(2) p=5: " << h3.at("dimH"));
  auto csv = cli("hk --k 1 --family K --p 5 --n 3 --coefficients trivial --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.find("model,k,module,filter,dimC,dimZ,dimB,dimH") == 0);
  CHECK(csv.out.find(",0\n") != std::string::npos);
  auto blocks = nlohmann::json::parse(
      cli("h2 --family H --p 5 --n 2 --coefficients adjoint --weight-zero --decompose degree --format json").out);
  CHECK(blocks.at("dimH") == 3);
  auto rel = nlohmann::json::parse(cli("hk --k 0 --family H --p 5 --n 2 --coefficients trivial --relative --format json").out);
  CHECK(rel.at("dimH") == 1);
  auto tight = cli("h2 --family H --p 5 --n 2 --memory-budget 4K");
  CHECK(tight.code == 3);
}

TEST_CASE("verify") {
  auto r = cli("verify --theorem H --family H --p 5 --n 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("pass") != std::string::npos);
  auto phi = cli("verify --cocycle Phi --family H --p 5 --n 2");
  CHECK(phi.code == 0);
  CHECK(phi.out.find("selected a+b-delta-conj(delta)") != std::string::npos);
  auto xi = cli("verify --cocycle Xi --family H --p 5 --n 2");
  CHECK(xi.code == 2);
  CHECK(xi.out.find("-4 mod p") != std::string::npos);
  auto fail = cli("verify --cocycle Delta --family H --p 5 --n 2 --format json");
  CHECK(fail.code == 1);
  auto j = nlohmann::json::parse(fail.out);
  CHECK(j.at("passed") == false);
  auto lem = cli("verify --lemmas --family K --p 5 --n 3");
  CHECK(lem.code == 0);
}

TEST_CASE("eval and export") {
  CHECK(first_line(cli("eval --family H --p 5 --n 4 --cochain Pi:1,2 --arg x1 --arg x2").out) == "x3^4*x4^4");
  CHECK(first_line(cli("eval --family H --p 5 --n 2 --cochain Sq:x1 --arg 0,2 --arg 0,3").out) == "0");
  CHECK(first_line(cli("eval --family H --p 5 --n 2 --cochain Sigma --arg x1 --arg x2").out) == "1");
  CHECK(cli("eval --family H --p 5 --n 2 --cochain Sigma --arg x1").code == 2);
  auto s = cli("export --family H --p 5 --n 2 --what structure --format csv");
  CHECK(s.code == 0);
  CHECK(first_line(s.out) == "left,right,result,coeff");
  auto d = cli("export --family H --p 5 --n 2 --what differential --k 1 --coefficients trivial --format json");
  CHECK(d.code == 0);
  CHECK_NOTHROW(nlohmann::json::parse(d.out));
}

TEST_CASE("usage errors") {
  CHECK(cli("").code != 0);
  CHECK(cli("dim --family Q --p 5 --n 3").code != 0);
  CHECK(cli("--help").code == 0);
}
