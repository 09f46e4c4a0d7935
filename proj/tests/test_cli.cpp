#include <doctest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "common.hpp"
#include "evlab/errors.hpp"

using namespace evlab;
using namespace evlab::cli;

namespace {

struct Args {
  std::vector<std::string> store;
  std::vector<const char*> ptrs;
  Args(std::initializer_list<std::string> a) : store(a) {
    store.insert(store.begin(), "evlab");
    for (auto& s : store) ptrs.push_back(s.c_str());
  }
  int argc() const { return static_cast<int>(ptrs.size()); }
  const char* const* argv() const { return ptrs.data(); }
};

RunConfig parse_args(std::initializer_list<std::string> a) {
  Args args(a);
  return parse(args.argc(), args.argv());
}

int call(std::initializer_list<std::string> a, std::string& out, std::string& log) {
  Args args(a);
  std::ostringstream o, l;
  const int code = main_entry(args.argc(), args.argv(), o, l);
  out = o.str();
  log = l.str();
  return code;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/evlab_cli_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("flags fill the run configuration") {
  RunConfig c = parse_args({"scan-mu", "--n", "4", "--tmin", "10", "--tmax", "12", "--an", "0.5,-2", "--threads", "3"});
  CHECK(c.command == Command::scan_mu);
  CHECK(c.n == 4);
  CHECK(c.t_min == 10.0);
  CHECK(c.t_max == 12.0);
  CHECK(c.a_n == cplx(0.5, -2.0));
  CHECK(c.threads == 3);
  REQUIRE(c.form_paths.size() == 1);
  CHECK(c.form_paths[0].find("maass_even_13.78.txt") != std::string::npos);
}

TEST_CASE("flags win over the config file") {
  const auto ini = write_temp("run.ini", "n = 5\ntmin = 30\ntmax = 90\ngrid-step = 0.01\n");
  RunConfig c = parse_args({"mean-value", "--config", ini, "--n", "3"});
  CHECK(c.n == 3);
  CHECK(c.t_min == 30.0);
  CHECK(c.grid_step == 0.01);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(parse_args({"cross", "--form", testing::data("maass_even_13.78.txt")}), ConfigError);
  CHECK_THROWS_AS(parse_args({"scan-mu", "--n", "2"}), ConfigError);
  CHECK_THROWS_AS(parse_args({"scan-mu", "--tmin", "50", "--tmax", "40"}), ConfigError);
  CHECK_THROWS_AS(parse_args({"scan-mu", "--an", "1;2"}), ConfigError);
  CHECK_THROWS_AS(parse_args({"mean-value", "--tmin", "50", "--tmax", "80"}), ConfigError);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), ConfigError);
  CHECK_THROWS_AS(parse_args({}), ConfigError);
  const auto bad = write_temp("bad.ini", "tmin = 30\nwibble = 2\n");
  CHECK_THROWS_AS(parse_args({"scan-mu", "--config", bad}), ConfigError);
}

TEST_CASE("dyadic windows") {
  CHECK(dyadic_windows(50, 800) == std::vector<double>{50, 100, 200, 400});
  CHECK(dyadic_windows(100, 1600).size() == 4);
  CHECK(dyadic_windows(50, 99).empty());
}

TEST_CASE("exit codes") {
  std::string out, log;
  CHECK(call({"--help"}, out, log) == ExitCode::ok);
  CHECK(out.find("scan-mu") != std::string::npos);
  CHECK(call({"cross", "--form", testing::data("maass_even_13.78.txt")}, out, log) == ExitCode::config_error);
  CHECK(log.find("exactly 2") != std::string::npos);
  CHECK(call({"scan-mu", "--form", "/nonexistent"}, out, log) == ExitCode::config_error);
  std::ostringstream primes;
  primes << "R 9.5\nparity even\npmax 50\n";
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) primes << "a " << p << " 0.1\n";
  const auto tiny = write_temp("tiny.txt", primes.str());
  CHECK(call({"scan-mu", "--form", tiny, "--tmin", "50", "--tmax", "51"}, out, log) == ExitCode::budget_failure);
  CHECK(log.find("scan-mu") != std::string::npos);
}

TEST_CASE("scan-mu emits the documented columns with a config echo") {
  std::string out, log;
  REQUIRE(call({"scan-mu", "--n", "3", "--tmin", "50", "--tmax", "50.5"}, out, log) == ExitCode::ok);
  CHECK(out.rfind("# evlab ", 0) == 0);
  CHECK(out.find("# n = 3\n") != std::string::npos);
  CHECK(out.find("\nt,re_mu,im_mu,abs2_mu,gamma_factor_sq,stirling_sq\n") != std::string::npos);
  CHECK(out.find("\n50,") != std::string::npos);
  CHECK(log.find("samples") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  std::string a, b, c, log;
  call({"scan-mu", "--tmin", "30", "--tmax", "30.4", "--threads", "1"}, a, log);
  call({"scan-mu", "--tmin", "30", "--tmax", "30.4", "--threads", "1"}, b, log);
  call({"scan-mu", "--tmin", "30", "--tmax", "30.4", "--threads", "3"}, c, log);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("moment commands emit one row per dyadic window") {
  std::string out, log;
  REQUIRE(call({"mean-value", "--tmin", "20", "--tmax", "40", "--n", "4"}, out, log) == ExitCode::ok);
  CHECK(out.find("\nT,integral_re,integral_im,predicted_re,predicted_im,ratio_re,ratio_im,err\n20,") !=
        std::string::npos);
  CHECK(log.find("ratio") != std::string::npos);
}
