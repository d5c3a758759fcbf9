#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <regex>
#include <string>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(AFFINELIE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("faces", "[cli]") {
  Run a2 = run("faces A 2 sc");
  REQUIRE(a2.rc == 0);
  CHECK(json::parse(a2.out)["objects"].size() == 7);
  CHECK(json::parse(run("faces A 1").out)["objects"].size() == 3);
  CHECK(json::parse(run("faces C 3 sc").out)["objects"].size() == 15);
  CHECK(json::parse(run("faces --type B --rank 2 --isogeny ad").out)["objects"].size() == 7);
  CHECK(run("faces H 2").rc == 2);
  CHECK(run("faces A 2 gl").rc == 2);
}

TEST_CASE("roots", "[cli]") {
  Run e8 = run("roots E 8");
  REQUIRE(e8.rc == 0);
  CHECK(json::parse(e8.out)["all_roots"].size() == 240);
}

TEST_CASE("centralizer", "[cli]") {
  Run pgl = run("centralizer A 1 ad --a 1/4");
  REQUIRE(pgl.rc == 0);
  json j = json::parse(pgl.out);
  CHECK(j["pi0"] == 2);
  CHECK(j["phi"].empty());
  Run sl2 = run("centralizer A 1 sc --theta 0 --a 1/2 --text");
  REQUIRE(sl2.rc == 0);
  CHECK(sl2.out == "[     C    Cz ]\n[ Cz^-1     C ]\n");
  json generic = json::parse(run("centralizer B 2 --theta 1/7,2/9 --a 3/11,1/13").out);
  CHECK(generic["dim"] == 2);
  CHECK(run("centralizer A 1 --a 1/x").rc == 2);
  CHECK(run("centralizer A 2 --a 1/2").rc == 2);
  json gauge = json::parse(run("centralizer A 1 --gauge --a 0 --im 1/2").out);
  CHECK(gauge["phi"].empty());
}

TEST_CASE("parabolic, diagram, star, overlap", "[cli]") {
  json p = json::parse(run("parabolic A 1 --from {1} --to {}").out);
  CHECK(p["shape"] == "[ * * ]\n[ 0 * ]\n");
  CHECK(run("parabolic A 1 --from {} --to {1}").rc == 2);
  Run d = run("diagram A 2 --text");
  REQUIRE(d.rc == 0);
  CHECK(d.out.find("triangles 6 verified 6") != std::string::npos);
  json dj = json::parse(run("diagram A 2").out);
  CHECK(dj["nodes"].size() == 7);
  CHECK(dj["edges"].size() == 12);
  CHECK(run("diagram A 4").rc == 1);
  json s = json::parse(run("star A 1 --face {1} --point 3/4").out);
  CHECK(s["in_star"] == false);
  CHECK(s["reduced"] == json::array({"1/4"}));
  json o = json::parse(run("overlap A 1 --from {1} --to {0}").out);
  CHECK(o.size() == 1);
}

TEST_CASE("wp", "[cli]") {
  Run w = run("wp --omega1 1,0 --omega2 0,2 --z 0.3,0.2");
  REQUIRE(w.rc == 0);
  json j = json::parse(w.out);
  CHECK(j["residual_cubic"].get<double>() < 1e-6);
  CHECK(j["residual_commutator"].get<double>() < 1e-9);
  CHECK(run("wp --omega1 1,0 --omega2 2,0").rc == 2);
  CHECK(run("wp --z 0,0").rc != 0);
}

TEST_CASE("verify", "[cli]") {
  Run stars = run("verify stars A 2 --seed 7 --samples 100");
  CHECK(stars.rc == 0);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = stars.out.find('\n', pos)) != std::string::npos; ++pos) {
    ++lines;
  }
  CHECK(lines == 2);
  CHECK(count(stars.out, "\"seed\":7") == 2);
  CHECK(run("verify parabolic A 2").rc == 0);
  auto t0 = std::chrono::steady_clock::now();
  Run all = run("verify all A 1");
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  CHECK(all.rc == 0);
  CHECK(ms < 1000);
  CHECK(count(all.out, "\"passed\":false") == 0);
  CHECK(run("verify bogus A 2").rc == 2);
  CHECK(run("verify all Q 2").rc == 2);
  Run pgl = run("verify all A 2 ad --samples 20");
  CHECK(pgl.rc == 0);
  CHECK(count(pgl.out, "not applicable") > 0);
}

TEST_CASE("svg", "[cli]") {
  Run a2 = run("svg A 2");
  REQUIRE(a2.rc == 0);
  CHECK(count(a2.out, "class=\"hyperplane\"") == 15);
  CHECK(count(a2.out, "class=\"alcove\"") == 1);
  Run g2 = run("svg G 2 --lo -1 --hi 1");
  REQUIRE(g2.rc == 0);
  CHECK(count(g2.out, "class=\"hyperplane\"") == 18);
  std::set<std::string> roots;
  std::regex attr("data-root=\"(\\d+)\"");
  for (auto it = std::sregex_iterator(g2.out.begin(), g2.out.end(), attr); it != std::sregex_iterator(); ++it)
    roots.insert((*it)[1]);
  CHECK(roots.size() == 6);
  Run star = run("svg A 2 --highlight {1,2}");
  REQUIRE(star.rc == 0);
  CHECK(count(star.out, "class=\"star-alcove\"") == 6);
  CHECK(count(star.out, "class=\"star-edge\"") == 6);
  CHECK(count(star.out, "class=\"star-vertex\"") == 1);
  CHECK(run("svg A 2 --highlight {1,2}").out == star.out);
  CHECK(run("svg A 3").rc == 2);
  CHECK(run("svg A 1").rc == 2);
}

TEST_CASE("out file and usage", "[cli]") {
  std::string path = "cli_out_test.json";
  CHECK(run("--out " + path + " faces A 1").rc == 0);
  FILE* f = fopen(path.c_str(), "r");
  REQUIRE(f);
  fclose(f);
  std::remove(path.c_str());
  CHECK(run("").rc == 2);
  CHECK(run("nosuch").rc == 2);
  CHECK(run("--help").rc == 0);
}
