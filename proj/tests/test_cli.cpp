#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "utgrad/cli.hpp"
#include "utgrad/io.hpp"

using namespace utgrad;

namespace {

const AbelianGroup C2 = AbelianGroup::cyclic(2);
const GroupElement ONE{{0}};
const GroupElement U{{1}};

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("utgrad_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructVerifyClassifyType2) {
  auto d = file("d.json", dump(descriptor_to_json(type2(C2, U, U, {ONE, ONE}))));
  auto r = call({"construct", "--descriptor", d, "--field", "F3", "-o", path("g.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = call({"verify", path("g.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "verification: ok\n");
  r = call({"classify", path("g.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("kind: type2\nt: (1)\ng: (1)\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("branch: type2"), std::string::npos);
}

TEST_F(Cli, PipelineIsClosed) {
  std::mt19937_64 rng(5);
  const auto els = C2.elements();
  for (auto field : {"F3", "F5", "Q"}) {
    for (int n = 2; n <= 4; ++n) {
      for (int k = 0; k < 3; ++k) {
        auto desc = (n >= 3 && k == 2) ? type2(C2, els[rng() % 2], U, random_eta(n, els, true, rng))
                                       : elementary(C2, els[rng() % 2], random_eta(n, els, false, rng));
        auto d = file("d.json", dump(descriptor_to_json(desc)));
        ASSERT_EQ(call({"construct", "--descriptor", d, "--field", field, "-o", path("g.json")}).code, 0);
        ASSERT_EQ(call({"verify", path("g.json")}).code, 0);
        auto r = call({"classify", path("g.json"), "-o", path("c.json")});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(descriptor_from_json(parse_json(read("c.json"), "c.json")), canonical(desc));
      }
    }
  }
}

TEST_F(Cli, ConstructWritesCanonicalFile) {
  auto d = file("d.json", dump(descriptor_to_json(elementary(C2, ONE, {U}))));
  auto r = call({"construct", "--descriptor", d, "--field", "Q"});
  ASSERT_EQ(r.code, 0);
  auto j = parse_json(r.out, "stdout");
  EXPECT_EQ(j["field"], Json({{"kind", "rational"}}));
  EXPECT_EQ(j["components"][0]["degree"], Json({0}));
  EXPECT_EQ(j["components"][0]["basis"].size(), 2u);
  EXPECT_EQ(j["components"][1]["basis"][0], Json({"0", "1", "0", "0"}));
  // Re-serializing a parsed file reproduces it byte for byte.
  EXPECT_EQ(dump(grading_to_json(grading_from_json(j))), r.out);
  // type2 is rejected in characteristic 2.
  auto t = file("t.json", dump(descriptor_to_json(type2(C2, ONE, U, {ONE, ONE}))));
  r = call({"construct", "--descriptor", t, "--field", "F2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("characteristic 2"), std::string::npos);
}

TEST_F(Cli, VerifyReportsPlantedViolation) {
  // A_1 = <e11>, A_u = <e22, e12>: [e22, e12] = -e12 should lie in A_1.
  auto g = file("g.json", R"({"field":{"kind":"prime","p":3},"n":2,
    "group":{"invariant_factors":[2],"free_rank":0},
    "components":[{"degree":[0],"basis":[["1","0","0","0"]]},
                  {"degree":[1],"basis":[["0","0","0","1"],["0","1","0","0"]]}]})");
  auto r = call({"verify", g});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verification: failed"), std::string::npos);
  EXPECT_NE(r.out.find("bracket-violation at ((1),(1))"), std::string::npos) << r.out;
  r = call({"classify", g});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not a grading"), std::string::npos);
}

TEST_F(Cli, MalformedInputsExitTwo) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"{\"field\": {\"kind\":\"prime\", \"p\":3},\n \"n\": 3,, }", ":2:9"},
      {"[1, 2", ":1:"},
      {"", ":1:"},
      {R"({"field":{"kind":"prime","p":4},"n":2,"group":{"invariant_factors":[2],"free_rank":0},"components":[]})",
       "/field/p"},
      {R"({"field":{"kind":"prime","p":3},"n":2,"group":{"invariant_factors":[2],"free_rank":0},
          "components":[{"degree":[5],"basis":[]}]})",
       "/components/0/degree"},
      {R"({"field":{"kind":"prime","p":3},"n":2,"group":{"invariant_factors":[2],"free_rank":0},
          "components":[{"degree":[0],"basis":[["1","0","1","0"]]}]})",
       "/components/0/basis/0/2"},
      {R"({"field":{"kind":"prime","p":3},"n":2,"group":{"invariant_factors":[2],"free_rank":0},
          "components":[{"degree":[0],"basis":[["1","0","x"]]}]})",
       "/components/0/basis/0"},
      {R"({"field":{"kind":"prime","p":3},"n":2,"group":{"invariant_factors":[2],"free_rank":0},
          "components":[{"degree":[0],"basis":[["1","0","0","1/0"]]}]})",
       "/components/0/basis/0/3"},
      {R"({"n":2})", "missing key"},
      {R"({"field":{"kind":"rational"},"n":2,"group":{"invariant_factors":[2],"free_rank":0},"components":[],"x":1})",
       "unexpected key"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto g = file("bad" + std::to_string(i) + ".json", cases[i].first);
    for (const auto& verb : {"verify", "classify"}) {
      auto r = call({verb, g});
      EXPECT_EQ(r.code, 2) << cases[i].first;
      EXPECT_NE(r.err.find(cases[i].second), std::string::npos) << r.err;
    }
  }
  EXPECT_EQ(call({"verify", path("missing.json")}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"census", "--n", "2"}).code, 2);
  EXPECT_EQ(call({"census", "--n", "2", "--p", "4"}).code, 2);
  EXPECT_EQ(call({"census", "--n", "2", "--p", "2", "--mode", "quick"}).code, 2);
  EXPECT_EQ(call({"census", "--n", "2", "--p", "2", "--group", "2+1"}).code, 2);
  EXPECT_EQ(call({"construct", "--descriptor", path("missing.json"), "--field", "Fx"}).code, 2);
  auto bad_desc = file("bd.json", R"({"kind":"type2","n":3,"group":{"invariant_factors":[2],"free_rank":0},
      "t":[0],"g":[1],"eta":[[0],[1]]})");
  auto r = call({"construct", "--descriptor", bad_desc, "--field", "F3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("symmetric"), std::string::npos);
}

TEST_F(Cli, Compare) {
  auto a = file("a.json", dump(descriptor_to_json(elementary(C2, ONE, {ONE, U}))));
  auto b = file("b.json", dump(descriptor_to_json(elementary(C2, U, {U, ONE}))));
  auto r = call({"compare", a, b});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("graded isomorphic: no"), std::string::npos);
  r = call({"compare", a, b, "--practical", "--witness", "--field", "F3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("practically isomorphic: yes"), std::string::npos);
  EXPECT_NE(r.out.find("witness: P="), std::string::npos);
  // A grading file against a descriptor file.
  ASSERT_EQ(call({"construct", "--descriptor", b, "--field", "F3", "-o", path("gb.json")}).code, 0);
  r = call({"compare", path("gb.json"), b, "--witness"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("graded isomorphic: yes"), std::string::npos);
  EXPECT_EQ(call({"compare", a, b, "--witness"}).code, 2);
  EXPECT_EQ(call({"compare", a, b, "--witness", "--field", "Q"}).code, 2);
  auto small = file("s.json", dump(descriptor_to_json(elementary(C2, ONE, {U}))));
  EXPECT_EQ(call({"compare", a, small}).code, 2);
}

TEST_F(Cli, Separate) {
  auto a = file("a.json", dump(descriptor_to_json(elementary(C2, ONE, {ONE, U}))));
  auto b = file("b.json", dump(descriptor_to_json(elementary(C2, ONE, {U, U}))));
  auto t = file("t.json", dump(descriptor_to_json(type2(C2, ONE, U, {ONE, ONE}))));
  auto r = call({"separate", a, b});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("family: xi\n"), std::string::npos) << r.out;
  r = call({"separate", a, t, "--field", "F3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "separator: ad(x1^(1))^3 x2^(0)\nfamily: f\ndirection: holds-in-first\n");
  r = call({"separate", a, a});
  EXPECT_EQ(r.out, "equivalent\n");
}

TEST_F(Cli, CensusAndAutos) {
  auto r = call({"census", "--n", "2", "--p", "2", "--group", "2", "--json", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("graded classes: 4"), std::string::npos);
  EXPECT_NE(r.out.find("practical classes: 2"), std::string::npos);
  auto j = parse_json(read("c.json"), "c.json");
  EXPECT_EQ(j["graded_classes"], 4);
  EXPECT_EQ(j["practical_classes"], 2);
  EXPECT_EQ(j["ok"], true);
  // Byte-identical on repetition, including sampled mode and worker counts.
  EXPECT_EQ(call({"census", "--n", "2", "--p", "2", "--group", "2"}).out, r.out);
  auto s1 = call({"census", "--n", "3", "--p", "3", "--mode", "sampled", "--twists", "2", "--seed", "9"});
  auto s2 = call({"census", "--n", "3", "--p", "3", "--mode", "sampled", "--twists", "2", "--seed", "9"});
  EXPECT_EQ(s1.code, 0);
  EXPECT_EQ(s1.out, s2.out);
  auto p1 = call({"census", "--n", "3", "--p", "2", "--jobs", "1"});
  auto p2 = call({"census", "--n", "3", "--p", "2", "--jobs", "4"});
  EXPECT_EQ(p1.code, 0);
  EXPECT_EQ(p1.out, p2.out);
  r = call({"census", "--n", "3", "--p", "2", "--budget", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("watermark"), std::string::npos);

  EXPECT_EQ(call({"autos", "--n", "3", "--p", "2", "--count"}).out, "64\n");
  EXPECT_EQ(call({"autos", "--n", "3", "--p", "3", "--count"}).out, "3888\n");
  r = call({"autos", "--n", "2", "--p", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_EQ(call({"autos", "--n", "3", "--p", "3", "--budget", "10"}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}
