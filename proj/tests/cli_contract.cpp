// Exercises the installed command-line surface: exit codes, JSON shapes,
// determinism, and the serialize -> parse -> serialize fixed point. Takes
// the binary path and the fixtures directory as arguments.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ncfr/ncfr.hpp"

namespace fs = std::filesystem;
using namespace ncfr;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "  ok: " : "  FAILED: ") << what << "\n";
  if (!ok) ++g_failures;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& cmd) {
  const fs::path tmp = fs::temp_directory_path();
  const fs::path out = tmp / "ncfr_cli_out.txt";
  const fs::path err = tmp / "ncfr_cli_err.txt";
  const std::string full =
      cmd + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(full.c_str());
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return {code, slurp(out), slurp(err)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_contract <ncfr-binary> <fixtures-dir>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path fixtures = argv[2];
  const fs::path tmp = fs::temp_directory_path() / "ncfr_cli_contract";
  fs::create_directories(tmp);

  {
    std::cout << "factor: worked example\n";
    const auto r = run(bin + " factor " +
                       (fixtures / "corner_plus_band.json").string());
    check(r.exit_code == 0, "exit code 0");
    const auto j = nlohmann::json::parse(r.out);
    check(j.at("verdict") == "positive", "verdict positive");
    const AlgebraElement y = element_from_json(j.at("factor"));
    const double s5 = std::sqrt(5.0);
    const CMatrix corner = y.truncate(2);
    check(std::abs(corner(0, 0) - 1.0 / s5) < 1e-10 &&
              std::abs(corner(1, 0) - 7.0 / s5) < 1e-10 &&
              std::abs(corner(1, 1) - s5) < 1e-10,
          "factor corner matches the closed form");

    // verify consumes the emitted factor
    const fs::path yfile = tmp / "factor.json";
    std::ofstream(yfile) << j.at("factor").dump();
    const auto v = run(bin + " verify " +
                       (fixtures / "corner_plus_band.json").string() + " " +
                       yfile.string());
    check(v.exit_code == 0, "verify accepts the factor");
  }

  {
    std::cout << "factor: identity\n";
    const auto r =
        run(bin + " factor " + (fixtures / "identity.json").string());
    check(r.exit_code == 0, "exit code 0");
    const auto j = nlohmann::json::parse(r.out);
    const AlgebraElement y = element_from_json(j.at("factor"));
    check(equals(y, AlgebraElement::identity(), 1e-14), "factor is identity");
  }

  {
    std::cout << "factor: negative symbol\n";
    const auto r =
        run(bin + " factor " + (fixtures / "negative_symbol.json").string());
    check(r.exit_code == 1, "exit code 1");
    const auto j = nlohmann::json::parse(r.out);
    check(j.at("verdict") == "not_positive", "verdict not_positive");
    check(std::abs(j.at("witness").at("angle").get<double>() -
                   3.14159265358979312) < 1e-6,
          "witness angle is pi");
  }

  {
    std::cout << "factor: input errors\n";
    const auto missing = run(bin + " factor " +
                             (fixtures / "malformed_missing_symbol.json").string());
    check(missing.exit_code == 2, "missing field exits 2");
    check(missing.err.find("symbol") != std::string::npos,
          "message names the offending field");
    const auto syntax = run(bin + " factor " +
                            (fixtures / "malformed_syntax.json").string());
    check(syntax.exit_code == 2, "syntax error exits 2");
    const auto nofile = run(bin + " factor /nonexistent/x.json");
    check(nofile.exit_code == 2, "unreadable file exits 2");
    std::ofstream(tmp / "shift.json") << to_json(AlgebraElement::shift());
    const auto shift = run(bin + " factor " + (tmp / "shift.json").string());
    check(shift.exit_code == 2, "non-hermitian input exits 2");
  }

  {
    std::cout << "classical\n";
    const auto r =
        run(bin + " classical " + (fixtures / "band_2_5_2.json").string());
    check(r.exit_code == 0, "exit code 0");
    const AnalyticPolynomial q =
        analytic_from_json(nlohmann::json::parse(r.out));
    check(std::abs(q.coeff(0) - 2.0) < 1e-10 &&
              std::abs(q.coeff(1) - 1.0) < 1e-10,
          "factor (2, 1)");
    const auto rb = run(bin + " classical --method bauer " +
                        (fixtures / "band_2_5_2.json").string());
    check(rb.exit_code == 0, "bauer succeeds on a strictly positive symbol");
    const AnalyticPolynomial qb =
        analytic_from_json(nlohmann::json::parse(rb.out));
    check(std::abs(qb.coeff(0) - 2.0) < 1e-6, "bauer factor agrees");
    const auto rc = run(bin + " classical --method bauer " +
                        (fixtures / "band_1_2_1.json").string());
    check(rc.exit_code == 1, "bauer exits 1 across a circle zero");
  }

  {
    std::cout << "verify: mismatch\n";
    const fs::path idf = tmp / "id.json";
    const fs::path shf = tmp / "sh.json";
    std::ofstream(idf) << to_json(AlgebraElement::identity());
    std::ofstream(shf) << to_json(AlgebraElement::shift());
    const auto r = run(bin + " verify " + idf.string() + " " + shf.string());
    check(r.exit_code == 1, "exit code 1");
    check(r.out.find("max deviation") != std::string::npos,
          "deviation is reported");
  }

  {
    std::cout << "demo\n";
    const auto bad = run(bin + " demo unknown-name");
    check(bad.exit_code == 2, "unknown demo exits 2");
    const auto text = run(bin + " demo section3");
    check(text.exit_code == 0, "text demo exits 0");
    const auto j = run(bin + " demo section3 --json");
    check(j.exit_code == 0, "json demo exits 0");
    const auto parsed = nlohmann::json::parse(j.out);
    check(parsed.contains("forward_diagonal") &&
              parsed.contains("backward_corner"),
          "json demo has the report fields");
    check(parsed.at("forward_stationary") == false,
          "forward factor reported non-stationary");
  }

  {
    std::cout << "random: determinism and verdict\n";
    const auto a = run(bin + " random --seed 42 --cut 3 --mode psd");
    const auto b = run(bin + " random --seed 42 --cut 3 --mode psd");
    check(a.exit_code == 0 && b.exit_code == 0, "exit code 0");
    check(a.out == b.out, "same seed, identical bytes");

    const fs::path psd = tmp / "psd.json";
    std::ofstream(psd) << a.out;
    check(run(bin + " factor " + psd.string()).exit_code == 0,
          "psd instance factors positive");

    const auto c = run(bin + " random --seed 7 --cut 3 --mode indefinite");
    const fs::path indef = tmp / "indef.json";
    std::ofstream(indef) << c.out;
    const AlgebraElement xi =
        element_from_json(nlohmann::json::parse(c.out));
    check(truncated_min_eig(xi, 200) < 0.0, "indefinite instance confirmed");
    check(run(bin + " factor " + indef.string()).exit_code == 1,
          "indefinite instance factors not_positive");
  }

  {
    std::cout << "serialize -> parse -> serialize fixed point\n";
    const auto a = run(bin + " random --seed 9 --cut 4 --mode psd");
    const AlgebraElement x = element_from_json(nlohmann::json::parse(a.out));
    const std::string again = to_json(x);
    check(again + "\n" == a.out, "byte-identical re-serialization");
  }

  {
    std::cout << "environment tolerance override\n";
    const auto r = run("NCFR_TOL=1e-6 " + bin + " factor " +
                       (fixtures / "identity.json").string());
    check(r.exit_code == 0, "NCFR_TOL accepted");
  }

  std::cout << (g_failures ? "FAILURES: " : "all checks passed: ")
            << g_failures << "\n";
  return g_failures ? 1 : 0;
}
