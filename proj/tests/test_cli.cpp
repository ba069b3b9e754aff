#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <graphlim/graphlim.hpp>

namespace fs = std::filesystem;
using graphlim::Json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(GRAPHLIM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

std::string scratch(const std::string& name, const std::string& content) {
  fs::create_directories(GRAPHLIM_TEST_TMP);
  const fs::path path = fs::path(GRAPHLIM_TEST_TMP) / name;
  std::ofstream(path) << content;
  return path.string();
}

const char* kMantel =
    R"([{"graph": {"graph6": "Bw"}, "coeff": "1"},
        {"graph": {"graph6": "A_"}, "coeff": "-1"},
        {"graph": {"n": 0, "edges": []}, "coeff": "1/2"}])";

}  // namespace

TEST_CASE("density prints an exact rational") {
  const Run r = run("density --F g6:Bw --G g6:Bw");
  CHECK(r.status == 0);
  CHECK(Json::parse(r.out)["t"] == "2/9");
  const Run inj = run("density --F g6:A_ --G g6:Bw --injective");
  CHECK(Json::parse(inj.out)["t_inj"] == "1");
}

TEST_CASE("human format flattens keys") {
  const Run r = run("--format human density --F g6:Bw --G g6:Bw");
  CHECK(r.status == 0);
  CHECK(r.out == "t: 2/9\n");
}

TEST_CASE("cut norm and mobius via files") {
  const std::string w = scratch("half.json", R"("1/2")");
  const Run mob = run("mobius --graphon " + w + " --cap 3");
  CHECK(mob.status == 0);
  const std::string edge = scratch("k2w.json", R"({"widths":["1/2","1/2"],"values":[["0","1"],["1","0"]]})");
  const Run cut = run("cutnorm --W " + edge + " --U " + w);
  CHECK(cut.status == 0);
  CHECK(Json::parse(cut.out)["cut_norm"] == "1/8");
}

TEST_CASE("psd-test agrees with the LDL test") {
  const std::string w = scratch("third.json", R"("1/3")");
  const Json out = Json::parse(run("psd-test --graphon " + w + " --cap 4 --k 3").out);
  CHECK(out["psd"] == true);
  CHECK(out["factorization_exact"] == true);
  CHECK(out["ldl_agrees"] == true);
}

TEST_CASE("certify is reproducible and verifies") {
  const std::string x = scratch("mantel.json", kMantel);
  const std::string cert = (fs::path(GRAPHLIM_TEST_TMP) / "cert.json").string();
  const Run a = run("certify --input " + x + " --m 3 --seed 1 --eps 0.2");
  const Run b = run("certify --input " + x + " --m 3 --seed 1 --eps 0.2");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["meets_eps"] == true);
  CHECK(run("certify --input " + x + " --m 3 --seed 1 --out " + cert).status == 0);
  const Run v = run("verify --input " + x + " --cert " + cert);
  CHECK(v.status == 0);
  CHECK(Json::parse(v.out)["ok"] == true);
  const Run d = run("disprove --input " + x + " --budget 4");
  CHECK(Json::parse(d.out)["found"] == false);
}

TEST_CASE("sampling is seeded") {
  const std::string w = scratch("half_model.json", R"("1/2")");
  const Run a = run("sample --model " + w + " --n 20 --seed 3");
  const Run b = run("sample --model " + w + " --n 20 --seed 3");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
  CHECK(run("density --F /nonexistent/file --G g6:Bw").status == 2);
  CHECK(run("density --F g6:Bw").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("density --F g6:Bw --G 'g6:?'").status == 1);  // K0 target
  const std::string bad = scratch("bad.json", "{ not json");
  CHECK(run("certify --input " + bad + " --seed 0").status == 2);
  const std::string x = scratch("k0.json", R"([{"graph": {"n": 0, "edges": []}, "coeff": "1"}])");
  CHECK(run("certify --input " + x + " --m 5 --seed 0").status == 1);
}
