#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(KERDOCK_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("kerdock_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

}  // namespace

TEST_CASE("gen-field prints and validates polynomials") {
  auto r = run("gen-field --n 3");
  CHECK(r.code == 0);
  CHECK(r.out == "3: 1 0 1 1\n");
  r = run("gen-field --n 4 --h \"1 1 1 1 1\"");
  CHECK(r.code == 1);
  r = run("gen-field --n 3 --h \"1 1 0 1\"");
  CHECK(r.code == 0);
}

TEST_CASE("kerdock gen reproduces the 3-bit example") {
  const auto r = run("kerdock gen --n 3 --top-row 7");
  CHECK(r.code == 0);
  CHECK(r.out == "7 17\n111\n110\n101\n");
  const auto all = run("kerdock gen --n 4");
  CHECK(all.code == 0);
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 16);
}

TEST_CASE("encode then decode finds the encoded codeword") {
  TempDir d;
  const auto labels = d.file("labels.txt", "5;Q=1b3;l=13;e=0\n");
  const auto coeffs = d.file("coeffs.txt", "1 0\n");
  const auto sig = d.file("s.sig");
  CHECK(run("encode --labels " + labels + " --coeffs " + coeffs + " --out " + sig).code == 0);
  const auto r = run("decode --in " + sig + " --k 1 --norm-hint 1 --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1b3 13 1 0 1\n", 0) == 0);
}

TEST_CASE("corrupt and sparse-approx run end to end") {
  TempDir d;
  const auto coeffs = d.file("coeffs.txt", "1 0\n");
  // sparse-approx searches Kerdock matrices only; take one from kerdock gen.
  const auto gen = run("kerdock gen --n 7 --top-row 5");
  REQUIRE(gen.code == 0);
  const std::string diag = gen.out.substr(gen.out.find(' ') + 1, gen.out.find('\n') - gen.out.find(' ') - 1);
  const auto labels = d.file("labels.txt", "7;Q=" + diag + ";l=21;e=0\n");
  const auto sig = d.file("s.sig"), noisy = d.file("n.sig"), rep = d.file("rep.txt");
  REQUIRE(run("encode --labels " + labels + " --coeffs " + coeffs + " --out " + sig).code == 0);
  REQUIRE(run("corrupt --in " + sig + " --noise-energy 0.05 --seed 2 --out " + noisy).code == 0);
  const auto r = run("sparse-approx --in " + noisy + " --k 1 --eps 0.1 --seed 4 --out " + rep);
  CHECK(r.code == 0);
  std::ifstream is(rep);
  std::string p, l;
  is >> p >> l;
  CHECK(p == diag);
  CHECK(l == "21");
}

TEST_CASE("identical seeds give identical bytes") {
  const std::string cmds[] = {
      "decode --plant \"6;Q=2a5;l=11;e=0:1,6;Q=13;l=2;e=1:0.5\" --noise-energy 0.3 --k 4 --seed 9",
      "decode --plant \"8;Q=1234;l=ab;e=0:1\" --noise-energy 0.2 --k 1 --seed 5 --sampled --suffix-samples 8 "
      "--repeats 3 --km-samples 64 --cap 4096",
      "verify --suite dickson --n 4 --trials 500 --seed 3",
      "bench --k 1 --n-list 6,8 --trials 1 --seed 2",
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK_MESSAGE(a.out == b.out, c);
    CHECK(a.code == b.code);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("decode --k 2").code == 2);
  CHECK(run("decode --in /nonexistent/file --k 2 --norm-hint 1").code == 2);
  CHECK(run("verify --suite nosuch").code == 2);
  CHECK(run("verify --suite field --n 5").code == 0);
  CHECK(run("verify --suite rank-count --n 6").code == 0);
  CHECK(run("verify --suite dickson --n 4 --trials 2000").code == 1);  // equal-l subcase fails
}
