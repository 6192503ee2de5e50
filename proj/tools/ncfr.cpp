// Copyright 2026 The ncfr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ncfr/ncfr.hpp"

namespace {

using namespace ncfr;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;   // not positive / math failure
constexpr int kExitInputError = 2; // unreadable or malformed input

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text << "\n";
}

std::string format_angle(double t) { return jsonfmt::num(t); }

int run_factor(const std::string& input, double tol,
               const std::string& output) {
  const AlgebraElement x = element_from_json(load_json(input));
  const PositivityCertificate cert = factorize(x, tol);
  write_output(output, to_json(cert));
  return cert.verdict == Verdict::positive ? kExitPositive : kExitNegative;
}

int run_classical(const std::string& input, const std::string& method,
                  double tol, const std::string& output) {
  const LaurentPoly p = laurent_from_json(load_json(input));
  const auto symbol = HermitianLaurentSymbol::from_laurent(
      p, tol * std::max(l1_norm(p), 1.0));
  const AnalyticPolynomial q = method == "bauer"
                                   ? bauer_factor(symbol, kBauerSchedule, tol)
                                   : fejer_riesz_roots(symbol, tol);
  write_output(output, to_json(q));
  return kExitPositive;
}

int run_verify(const std::string& x_path, const std::string& y_path,
               double tol) {
  const AlgebraElement x = element_from_json(load_json(x_path));
  const AlgebraElement y = element_from_json(load_json(y_path));
  const AlgebraElement square = adjoint(y) * y;
  const double dev = deviation(square, x);
  const double bound = tol * std::max(element_scale(x), 1.0);
  std::cout << "max deviation of y*y from x: " << jsonfmt::num(dev)
            << " (tolerance " << jsonfmt::num(bound) << ")\n";
  return dev <= bound ? kExitPositive : kExitNegative;
}

int run_demo(const std::string& name, bool as_json, Eigen::Index truncation,
             double tol, const std::string& output) {
  if (name != "section3") {
    std::cerr << "error: unknown demo '" << name << "' (try: section3)\n";
    return kExitInputError;
  }
  const AlgebraElement x = example_corner_plus_band();
  const AlgebraElement banded_root = example_banded_root();
  const double square_dev = deviation(adjoint(banded_root) * banded_root, x);
  const ForwardBackwardReport rep = forward_vs_backward(x, truncation, tol);
  const PositivityCertificate cert = factorize(x, tol);
  const CMatrix corner = cert.factor->truncate(2);

  if (as_json) {
    std::string s = "{\n";
    s += "  \"instance\": " + to_json(x) + ",\n";
    s += "  \"banded_root_deviation\": " + jsonfmt::num(square_dev) + ",\n";
    s += "  \"forward_diagonal\": [";
    for (size_t i = 0; i < 8; ++i) {
      if (i) s += ",";
      s += jsonfmt::num(rep.forward_diagonal[i]);
    }
    s += "],\n";
    s += std::string("  \"forward_stationary\": ") +
         (rep.forward_stationary ? "true" : "false") + ",\n";
    s += "  \"backward_corner\": " + jsonfmt::matrix(corner) + ",\n";
    s += "  \"backward_tail_band\": " +
         jsonfmt::cplx_list(cert.factor->element().symbol().coeffs()) + ",\n";
    s += "  \"backward_stationary_row\": " +
         std::to_string(rep.backward_stationary_row) + ",\n";
    s += "  \"residual\": " + jsonfmt::num(cert.diagnostics.residual) + "\n";
    s += "}";
    write_output(output, s);
    return kExitPositive;
  }

  std::ostringstream s;
  s << "instance: corner [[10,7],[7,6]] over the band (1, 2, 1)\n";
  s << "banded square root check: max deviation of y*y from x = "
    << jsonfmt::num(square_dev) << "\n\n";
  s << "forward (LL*) Cholesky diagonal of the " << truncation
    << "-section:\n  ";
  for (size_t i = 0; i < 8; ++i) s << jsonfmt::num(rep.forward_diagonal[i]) << " ";
  s << "...\n  band stationary: " << (rep.forward_stationary ? "yes" : "no")
    << " -- the forward factor drifts and never rejoins the algebra\n\n";
  s << "backward (UL) factor:\n";
  s << "  corner: [[" << jsonfmt::num(corner(0, 0).real()) << ", 0],\n";
  s << "           [" << jsonfmt::num(corner(1, 0).real()) << ", "
    << jsonfmt::num(corner(1, 1).real()) << "]]\n";
  s << "  tail band: (1, 1), stationary from row "
    << rep.backward_stationary_row << " on\n";
  s << "  residual of y*y against x: "
    << jsonfmt::num(cert.diagnostics.residual) << "\n";
  write_output(output, s.str());
  return kExitPositive;
}

int run_random(std::uint64_t seed, int cut, const std::string& mode,
               Eigen::Index truncation, const std::string& output) {
  std::mt19937_64 rng(seed);
  const AlgebraElement x =
      mode == "psd" ? random_psd_instance(rng, cut).element
                    : random_indefinite_instance(rng, cut, truncation);
  write_output(output, to_json(x));
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "positivity certificates and spectral factorization for shift-algebra "
      "elements in banded-Toeplitz-plus-corner form"};
  app.require_subcommand(1);

  std::string input, x_path, y_path, output, method = "root";
  std::string demo_name, mode = "psd";
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int cut = 3;
  Eigen::Index truncation = kDefaultTruncation;
  bool as_json = false;

  auto add_tol = [&tol](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "relative tolerance")
        ->envname("NCFR_TOL")
        ->capture_default_str();
  };

  CLI::App* factor = app.add_subcommand(
      "factor", "decide nonnegativity and emit a certificate");
  factor->add_option("input", input, "element JSON file")->required();
  add_tol(factor);
  factor->add_option("--output", output, "output path (default stdout)");

  CLI::App* classical = app.add_subcommand(
      "classical", "scalar spectral factorization of a hermitian symbol");
  classical->add_option("input", input, "Laurent polynomial JSON file")
      ->required();
  classical->add_option("--method", method, "root|bauer")
      ->check(CLI::IsMember({"root", "bauer"}))
      ->capture_default_str();
  add_tol(classical);
  classical->add_option("--output", output, "output path (default stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "check x = y*y by algebra multiplication");
  verify->add_option("x", x_path, "element JSON file")->required();
  verify->add_option("y", y_path, "candidate factor JSON file")->required();
  add_tol(verify);

  CLI::App* demo = app.add_subcommand(
      "demo", "worked example comparing forward and backward factors");
  demo->add_option("name", demo_name, "demo name (section3)")->required();
  demo->add_flag("--json", as_json, "machine-readable output");
  demo->add_option("--truncation", truncation, "section size")
      ->capture_default_str();
  add_tol(demo);
  demo->add_option("--output", output, "output path (default stdout)");

  CLI::App* random = app.add_subcommand("random", "generate a test instance");
  random->add_option("--seed", seed, "RNG seed")->capture_default_str();
  random->add_option("--cut", cut, "corner cut index")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  random->add_option("--mode", mode, "psd|indefinite")
      ->check(CLI::IsMember({"psd", "indefinite"}))
      ->capture_default_str();
  random->add_option("--truncation", truncation,
                     "oracle section size for indefinite confirmation")
      ->capture_default_str();
  random->add_option("--output", output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (factor->parsed()) return run_factor(input, tol, output);
    if (classical->parsed()) return run_classical(input, method, tol, output);
    if (verify->parsed()) return run_verify(x_path, y_path, tol);
    if (demo->parsed())
      return run_demo(demo_name, as_json, truncation, tol, output);
    if (random->parsed()) return run_random(seed, cut, mode, truncation, output);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotHermitian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotNonnegative& e) {
    std::cerr << "error: " << e.what() << " (angle " << format_angle(e.angle())
              << ", value " << jsonfmt::num(e.value()) << ")\n";
    return kExitNegative;
  } catch (const DegenerateSymbol& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const NotPSD& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
