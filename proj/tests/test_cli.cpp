#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "profcheck/cli.hpp"

using profcheck::cli::run;
using Json = nlohmann::ordered_json;

namespace {

std::string corpus(std::string const& rel) {
  return (std::filesystem::path(PROFCHECK_CORPUS_DIR) / rel).string();
}

Json run_json(std::vector<std::string> args, int expected_exit) {
  args.push_back("--format");
  args.push_back("json");
  auto const r = run(args);
  INFO(r.errors);
  REQUIRE(r.exit_code == expected_exit);
  return Json::parse(r.output);
}

}  // namespace

TEST_CASE("demo passes") {
  auto const r = run({"demo", "--jobs", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("verdict: PASS") != std::string::npos);

  auto const j = run_json({"demo"}, 0);
  CHECK(j.at("schemaVersion") == 1);
  CHECK(j.at("command") == "demo");
  CHECK(j.at("verdict") == "PASS");
  CHECK(j.at("ptVerdict") == "certified-at-truncation-with-assumptions");
  CHECK(j.at("certification").size() == 1);
  CHECK(j.at("certification").at(0).at("level") == "assumed");
  CHECK(j.at("fibreProduct").at("rawGeneratorCount") == 12);
  CHECK(j.at("denseImage").at("verdict") == "PASS");
  CHECK(j.at("abelianizedSpan").at("spans") == true);
}

TEST_CASE("low-index on the free group file") {
  auto const j = run_json({"low-index", corpus("free.grp"), "--group", "F2", "--max-index", "3"}, 0);
  auto const& summary = j.at("summary");
  REQUIRE(summary.size() == 3);
  CHECK(summary.at(0).at("total") == 1);
  CHECK(summary.at(1).at("total") == 3);
  CHECK(summary.at(2).at("total") == 13);

  auto const text = run({"low-index", "--group", "F2", "--max-index", "2"});
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("Z^3") != std::string::npos);
}

TEST_CASE("verify-pt verdicts") {
  CHECK(run({"verify-pt", "--group", "Z2", "--h2-cert", "x"}).exit_code == 1);
  auto const j = run_json({"verify-pt", "--group", "Higman", "--max-index", "3", "--h2-cert",
                           "acyclic"},
                          0);
  CHECK(j.at("verdict") == "certified-at-truncation-with-assumptions");
  CHECK(j.at("certification").at(0).at("note") == "acyclic");
  CHECK(run({"verify-pt", "--group", "Higman", "--max-index", "2"}).exit_code == 3);
}

TEST_CASE("usage errors") {
  CHECK(run({}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"low-index", "--max-index", "0"}).exit_code == 2);
  CHECK(run({"low-index", "--bogus"}).exit_code == 2);
  CHECK(run({"abelianize", "--group", "Nope"}).exit_code == 2);
  CHECK(run({"abelianize", "/nonexistent/file.grp"}).exit_code == 2);
  CHECK(run({"homs", "--group", "F2", "--target", "Z99"}).exit_code == 2);
  CHECK(run({"demo", "--format", "xml"}).exit_code == 2);
  auto const r = run({"low-index", "--group", "F2", "--max-index", "13"});
  CHECK(r.exit_code == 2);
  CHECK_FALSE(r.errors.empty());
}

TEST_CASE("parse errors name the file and position") {
  auto const path = std::filesystem::temp_directory_path() / "profcheck_bad.grp";
  std::ofstream(path) << "G := < a | a^2,\n  b >\n";
  auto const r = run({"abelianize", path.string()});
  CHECK(r.exit_code == 2);
  CHECK(r.errors.find("line 2, column 3") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("enumerate") {
  auto const j = run_json({"enumerate", "--group", "A5"}, 0);
  CHECK(j.at("cosets") == 60);
  CHECK(j.at("table").size() == 60);
  auto const felsch = run_json({"enumerate", "--group", "A5", "--strategy", "felsch"}, 0);
  CHECK(felsch.at("table") == j.at("table"));
  auto const sub = run_json({"enumerate", "--group", "S3", "--subgens", "a"}, 0);
  CHECK(sub.at("cosets") == 3);
  auto const r = run({"enumerate", "--group", "F2", "--subgens", "a", "--max-cosets", "100"});
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("incomplete") != std::string::npos);
}

TEST_CASE("abelianize, homs and subgroup presentations") {
  auto const s3 = run_json({"abelianize", "--group", "S3"}, 0);
  CHECK(s3.at("h1") == "Z/2");
  auto const h = run_json({"homs", "--group", "S3", "--target", "S3"}, 0);
  CHECK(h.at("total") == 10);
  CHECK(h.at("surjective") == 6);
  auto const sp = run({"subgroup-presentation", "--group", "F2", "--max-index", "2", "--class", "2"});
  CHECK(sp.exit_code == 0);
  CHECK(sp.output.rfind("F2_H2 := < x1 x2 x3 | >", 0) == 0);
  CHECK(run({"subgroup-presentation", "--group", "F2", "--max-index", "2", "--class", "9"})
            .exit_code == 2);
}

TEST_CASE("fingerprint and compare") {
  auto const path = std::filesystem::temp_directory_path() / "profcheck_f2.json";
  auto const r = run({"fingerprint", "--group", "F2", "--max-index", "2", "--targets", "Z2,Z3",
                      "--format", "json"});
  REQUIRE(r.exit_code == 0);
  std::ofstream(path) << r.output;

  auto const same = run({"compare", path.string(), "F2", "--max-index", "2", "--targets", "Z2,Z3"});
  CHECK(same.exit_code == 0);
  CHECK(same.output.find("no difference detected up to bound 2") != std::string::npos);

  auto const diff = run_json({"compare", "F2", "F3", "--max-index", "2", "--targets", "Z2,Z3"}, 1);
  CHECK(diff.at("firstDifference") == "perIndex[2].classes: 3 vs 7");

  CHECK(run({"compare", path.string(), "F2", "--max-index", "3", "--targets", "Z2,Z3"}).exit_code ==
        2);
  std::filesystem::remove(path);
}

TEST_CASE("fibre-product and dense-image on the bundled epimorphisms") {
  auto const fp = run_json({"fibre-product"}, 0);
  CHECK(fp.at("fibreProduct").at("generators").size() == 8);

  auto const z2 = corpus("fibre/z2_demo_epi.grp");
  auto const pass = run_json({"dense-image", "--left", z2, "--right", z2, "--max-index", "4"}, 0);
  CHECK(pass.at("verdict") == "PASS");

  auto const control = corpus("fibre/diagonal_control_epi.grp");
  auto const fail = run_json({"dense-image", "--left", control, "--right", control, "--max-index", "2"}, 1);
  CHECK(fail.at("verdict") == "FAIL");
  CHECK_FALSE(fail.at("denseImage").at("violations").empty());
  CHECK(fail.at("abelianizedSpan").at("spans") == false);

  CHECK(run({"fibre-product", "--left", z2, "--right", control}).exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  auto const a = run({"low-index", "--group", "F3", "--max-index", "4", "--format", "json", "--jobs", "1"});
  auto const b = run({"low-index", "--group", "F3", "--max-index", "4", "--format", "json", "--jobs", "3"});
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}
