// Copyright 2026 The qsprep developers
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qsprep/cli.hpp"
#include "qsprep/io.hpp"
#include "qsprep/synth.hpp"
#include "qsprep/transpile.hpp"

namespace qsprep {
namespace {

namespace fs = std::filesystem;

std::vector<Complex> demo_state() {
  const double s2 = std::sqrt(2.0), s23 = std::sqrt(23.0);
  std::vector<Complex> amps = {
      Complex(1, 0),      Complex(1, 0),  Complex(1 / s2, 0),
      Complex(0, 0.5),    Complex(-1, 0), Complex(-1 / s2, 0),
      Complex(1 / s2, 0), Complex(1, 0)};
  for (Complex& a : amps) a *= 2.0 / s23;
  return amps;
}

// Shared scratch directory holding the state-file fixtures; removed when the
// test binary exits.
struct Fixtures {
  fs::path dir;

  Fixtures() {
    dir = fs::temp_directory_path() /
          ("qsprep_cli_" +
           std::to_string(
               std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(dir);

    nlohmann::json demo;
    demo["num_qubits"] = 3;
    demo["format"] = "dense";
    for (const Complex& a : demo_state())
      demo["amplitudes"].push_back({a.real(), a.imag()});
    write("demo.json", demo.dump());

    write("ghz12.json",
          R"({"num_qubits": 12, "format": "sparse",
              "entries": [["000000000000", [1, 0]],
                          ["111111111111", [1, 0]]]})");
    write("zeroq.json",
          R"({"num_qubits": 0, "format": "dense", "amplitudes": [[1, 0]]})");
    write("allzero.json",
          R"({"num_qubits": 1, "format": "dense",
              "amplitudes": [[0, 0], [0, 0]]})");
    write("garbage.json", "]{ not json");
  }
  ~Fixtures() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }
  std::string read(const std::string& name) const {
    std::ostringstream buf;
    buf << std::ifstream(path(name), std::ios::binary).rdbuf();
    return buf.str();
  }
};

const Fixtures& fx() {
  static Fixtures f;
  return f;
}

int cli(const std::vector<std::string>& args, std::string* text = nullptr) {
  std::ostringstream os;
  const int rc = run_cli(args, os);
  if (text) *text = os.str();
  return rc;
}

double printed_fidelity(const std::string& text) {
  const size_t at = text.find("fidelity ");
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + 9));
}

// Fidelity of the circuit stored at `name` against the demo state, run from
// the all-zeros input with ancillas at their declared values.
double reverify(const std::string& name) {
  const Circuit cir = parse_circuit(fx().read(name));
  std::vector<Complex> want = demo_state();
  const StateVector got = run(cir, StateVector::zero_state(cir.num_main));
  uint64_t anc = 0;
  for (int i = 0; i < cir.num_ancilla; ++i)
    if (cir.ancilla_init[i]) anc |= uint64_t{1} << i;
  Complex dot(0, 0);
  for (uint64_t k = 0; k < want.size(); ++k)
    dot += std::conj(got.amps[(anc << cir.num_main) | k]) * want[k];
  return std::abs(dot);
}

TEST_CASE("synth writes a circuit and reports fidelity one on the demo") {
  std::string text;
  const int rc = cli({"synth", "--input", fx().path("demo.json"), "--algo",
                      "noanc", "--verify", "--output", fx().path("c1.json")},
                     &text);
  CHECK(rc == 0);
  CHECK(printed_fidelity(text) >= 1 - 1e-10);
  CHECK(reverify("c1.json") >= 1 - 1e-10);
}

TEST_CASE("written circuits re-verify after the json round trip") {
  int idx = 0;
  for (const std::string algo : {"noanc", "one", "full"})
    for (const std::string group : {"scalar", "pauli", "xp"}) {
      const std::string name = "rt" + std::to_string(idx++) + ".json";
      CHECK(cli({"synth", "--input", fx().path("demo.json"), "--algo", algo,
                 "--group", group, "--output", fx().path(name)}) == 0);
      CHECK(reverify(name) >= 1 - 1e-8);
    }
  CHECK(cli({"synth", "--input", fx().path("demo.json"), "--algo", "budget",
             "--ancillas", "2", "--output", fx().path("rtb.json")}) == 0);
  CHECK(reverify("rtb.json") >= 1 - 1e-8);
}

TEST_CASE("transpiled output re-verifies and feeds the qasm writer") {
  CHECK(cli({"synth", "--input", fx().path("demo.json"), "--algo", "one",
             "--transpile", "--qasm", fx().path("c2.qasm"), "--output",
             fx().path("c2.json")}) == 0);
  CHECK(reverify("c2.json") >= 1 - 1e-8);
  CHECK(is_transpiled(parse_circuit(fx().read("c2.json"))));
  CHECK(fx().read("c2.qasm").rfind("OPENQASM 2.0;", 0) == 0);
}

TEST_CASE("ancilla flags outside their algorithm are usage errors") {
  const std::string in = fx().path("demo.json"), out = fx().path("x.json");
  CHECK(cli({"synth", "--input", in, "--algo", "budget", "--ancillas", "0",
             "--output", out}) == 2);
  CHECK(cli({"synth", "--input", in, "--algo", "budget", "--output", out}) ==
        2);
  CHECK(cli({"synth", "--input", in, "--algo", "one", "--ancillas", "3",
             "--output", out}) == 2);
  CHECK(cli({"synth", "--input", in, "--algo", "noanc", "--qasm",
             fx().path("x.qasm"), "--output", out}) == 2);
  CHECK(cli({"synth", "--input", in, "--algo", "bogus", "--output", out}) ==
        2);
  CHECK(cli({"synth", "--input", in, "--algo", "noanc", "--group", "bogus",
             "--output", out}) == 2);
}

TEST_CASE("stats file for the ghz chain shows one reduced path") {
  CHECK(cli({"synth", "--input", fx().path("ghz12.json"), "--algo", "one",
             "--stats", fx().path("s.json"), "--output",
             fx().path("cg.json")}) == 0);
  const nlohmann::json st = nlohmann::json::parse(fx().read("s.json"));
  CHECK(st["reduced_paths"] == 1);
  CHECK(st["total_nodes"] == 13);
  CHECK(st["num_qubits"] == 12);
}

TEST_CASE("unreadable and malformed inputs use the io exit code") {
  const std::string out = fx().path("x.json");
  CHECK(cli({"synth", "--input", fx().path("missing.json"), "--algo", "noanc",
             "--output", out}) == 3);
  CHECK(cli({"synth", "--input", fx().path("garbage.json"), "--algo", "noanc",
             "--output", out}) == 3);
  CHECK(cli({"synth", "--input", fx().path("allzero.json"), "--algo", "noanc",
             "--output", out}) == 3);
  CHECK(cli({"inspect", "--input", fx().path("garbage.json")}) == 3);
  // Output path that cannot be opened for writing.
  CHECK(cli({"synth", "--input", fx().path("demo.json"), "--algo", "noanc",
             "--output", fx().dir.string()}) == 3);
}

TEST_CASE("inspect prints the diagram shape for each group") {
  std::string xp, scalar, zero;
  CHECK(cli({"inspect", "--input", fx().path("demo.json")}, &xp) == 0);
  CHECK(xp.find("total_nodes: 6\n") != std::string::npos);
  CHECK(xp.find("reduced_paths: 3\n") != std::string::npos);

  CHECK(cli({"inspect", "--input", fx().path("demo.json"), "--group",
             "scalar"},
            &scalar) == 0);
  const size_t at = scalar.find("total_nodes: ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stoi(scalar.substr(at + 13)) > 6);

  CHECK(cli({"inspect", "--input", fx().path("zeroq.json")}, &zero) == 0);
  CHECK(zero.find("total_nodes: 1\n") != std::string::npos);
  CHECK(zero.find("reduced_paths: 1\n") != std::string::npos);

  CHECK(cli({"inspect", "--input", fx().path("demo.json"), "--dot",
             fx().path("d.dot")}) == 0);
  CHECK(fx().read("d.dot").rfind("digraph", 0) == 0);
}

TEST_CASE("verification wider than the cap is refused up front") {
  ::setenv("QSP_VERIFY_CAP", "3", 1);
  const int rc = cli({"synth", "--input", fx().path("demo.json"), "--algo",
                      "one", "--verify", "--output", fx().path("x.json")});
  ::setenv("QSP_VERIFY_CAP", "4", 1);
  const int rc2 = cli({"synth", "--input", fx().path("demo.json"), "--algo",
                       "one", "--verify", "--output", fx().path("x.json")});
  ::unsetenv("QSP_VERIFY_CAP");
  CHECK(rc == 2);
  CHECK(rc2 == 0);
}

TEST_CASE("bench emits the full deterministic grid") {
  const std::vector<std::string> args = {
      "bench",   "--qubits", "2..3",
      "--samples", "2",      "--seed",
      "11",      "--algos",  "noanc,one,budget:2",
      "--baseline", "--transpile"};
  auto with_out = [&](const std::string& name) {
    std::vector<std::string> a = args;
    a.push_back("--out");
    a.push_back(fx().path(name));
    return a;
  };
  std::string summary;
  CHECK(cli(with_out("r1.csv"), &summary) == 0);
  CHECK(cli(with_out("r2.csv")) == 0);
  CHECK(fx().read("r1.csv") == fx().read("r2.csv"));
  CHECK(summary.find("n=2 algo=noanc") != std::string::npos);
  CHECK(summary.find("algo=baseline") != std::string::npos);

  std::istringstream rows(fx().read("r1.csv"));
  std::string line;
  REQUIRE(std::getline(rows, line));
  CHECK(line ==
        "n,sample,algo,group,seed,total_nodes,non_terminal,branch_nodes,"
        "reduced_paths,pre_gates,pre_multi,pre_depth,post_gates,post_depth,"
        "fidelity,status");
  size_t count = 0, ok = 0, budget_rows = 0;
  while (std::getline(rows, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
    if (line.find(",ok") == line.size() - 3) ++ok;
    if (line.find(",budget:2,") != std::string::npos) ++budget_rows;
  }
  // (3-2+1) qubit counts x 2 samples x 4 algorithms.
  CHECK(count == 16);
  CHECK(ok == 16);
  CHECK(budget_rows == 4);
}

TEST_CASE("bench flag validation") {
  const std::string out = fx().path("x.csv");
  CHECK(cli({"bench", "--qubits", "0..3", "--out", out}) == 2);
  CHECK(cli({"bench", "--qubits", "junk", "--out", out}) == 2);
  CHECK(cli({"bench", "--qubits", "4..2", "--out", out}) == 2);
  CHECK(cli({"bench", "--qubits", "2", "--samples", "0", "--out", out}) == 2);
  CHECK(cli({"bench", "--qubits", "2", "--algos", "budget", "--out", out}) ==
        2);
  CHECK(cli({"bench", "--qubits", "2", "--algos", "budget:0", "--out",
             out}) == 2);
  CHECK(cli({"bench", "--qubits", "2", "--algos", "warp", "--out", out}) ==
        2);
  CHECK(cli({"bench", "--qubits", "2"}) == 2);
}

TEST_CASE("top level usage and help") {
  std::string text;
  CHECK(cli({}, &text) == 2);
  CHECK(cli({"conjure"}) == 2);
  CHECK(cli({"--help"}, &text) == 0);
  CHECK(text.find("synth") != std::string::npos);
  CHECK(text.find("bench") != std::string::npos);
  CHECK(text.find("inspect") != std::string::npos);
}

}  // namespace
}  // namespace qsprep
