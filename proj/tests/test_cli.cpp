#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"

using nlohmann::json;

namespace {

struct Result {
  int rc;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = kfib::cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("seq: csv output for the order-3 window") {
  const Result r = run({"seq", "--named", "kfib", "-k", "3", "--to", "10", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(r.out == "n,value\n0,0\n1,0\n2,1\n3,1\n4,2\n5,4\n6,7\n7,13\n8,24\n9,44\n10,81\n");
}

TEST_CASE("seq: json payload carries parameters and string-typed values") {
  const Result r = run({"seq", "--named", "perrin", "--to", "11"});
  REQUIRE(r.rc == 0);
  const json payload = json::parse(r.out);
  CHECK(payload["command"] == "seq");
  CHECK(payload["parameters"]["beta"] == json::array({"0", "1", "1"}));
  const auto& values = payload["results"]["values"];
  REQUIRE(values.size() == 12);
  CHECK(values[0] == json::array({"0", "3"}));
  CHECK(values[11] == json::array({"11", "22"}));
}

TEST_CASE("seq: negative range through the backward extension") {
  const Result r = run({"seq", "-k", "4", "--beta", "1,1,1,1", "--gamma", "0,0,0,1", "--from",
                        "-5", "--to", "5", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("-5,") != std::string::npos);
  // every method that supports the nonnegative part agrees with iterate
  const Result it = run({"seq", "--named", "kfib", "-k", "4", "--to", "40", "--format", "csv"});
  for (const std::string method : {"binet", "matrix", "multinomial", "dresden-du"}) {
    const Result m =
        run({"seq", "--named", "kfib", "-k", "4", "--to", "40", "--method", method, "--format",
             "csv"});
    REQUIRE(m.rc == 0);
    CHECK(m.out == it.out);
  }
}

TEST_CASE("seq: binet handles negative ranges and geometric named initials") {
  const Result binet = run({"seq", "--named", "kfib", "-k", "5", "--from", "-8", "--to", "5",
                            "--method", "binet", "--format", "csv"});
  const Result iter = run({"seq", "--named", "kfib", "-k", "5", "--from", "-8", "--to", "5",
                           "--format", "csv"});
  REQUIRE(binet.rc == 0);
  CHECK(binet.out == iter.out);

  const Result sjp = run({"seq", "--named", "sj-powers", "-k", "3", "--mu", "2", "--to", "8",
                          "--format", "csv"});
  REQUIRE(sjp.rc == 0);
  CHECK(sjp.out == "n,value\n0,1\n1,2\n2,4\n3,7\n4,13\n5,24\n6,44\n7,81\n8,149\n");

  CHECK(run({"seq", "--named", "kfib", "--to", "5"}).rc == 2);  // k missing
}

TEST_CASE("seq: method agreement for every named sequence where applicable") {
  for (const std::string named : {"narayana", "padovan", "perrin"}) {
    const Result it = run({"seq", "--named", named, "--to", "40", "--format", "csv"});
    for (const std::string method : {"matrix", "multinomial"}) {
      const Result m =
          run({"seq", "--named", named, "--to", "40", "--method", method, "--format", "csv"});
      REQUIRE(m.rc == 0);
      CHECK(m.out == it.out);
    }
  }
}

TEST_CASE("seq: usage failures exit with code 2") {
  CHECK(run({"seq", "--named", "kfib", "-k", "3"}).rc == 2);                    // no --to
  CHECK(run({"seq", "--named", "kfib", "-k", "3", "--to", "5", "--from", "9"}).rc == 2);
  CHECK(run({"seq", "--named", "narayana", "--to", "9", "--method", "binet"}).rc == 2);
  CHECK(run({"seq", "--named", "narayana", "--to", "9", "--method", "dresden-du"}).rc == 2);
  CHECK(run({"seq", "--named", "kfib", "-k", "3", "--to", "5", "--method", "unknown"}).rc == 2);
  CHECK(run({"seq", "--named", "kfib", "-k", "3", "--from", "-2", "--to", "5", "--method",
             "matrix"}).rc == 2);
  CHECK(run({"seq", "--named", "kfib", "-k", "3", "--to", "80", "--method", "multinomial"}).rc ==
        2);
  CHECK(run({"seq", "--beta", "1,2", "--from", "-1", "--to", "4"}).rc == 2);  // beta_k != 1
  CHECK(run({"seq", "--named", "kfib", "-k", "1", "--to", "5"}).rc == 2);
  CHECK(run({"seq", "--named", "kfib", "-k", "3", "--to", "5", "--precision", "8"}).rc == 2);
  CHECK(run({"seq", "--beta", "1,x", "--to", "5"}).rc == 2);
}

TEST_CASE("roots: order guards and row shape") {
  CHECK(run({"roots", "-k", "1"}).rc == 2);
  CHECK(run({"roots", "-k", "65"}).rc == 2);

  const Result r = run({"roots", "-k", "2"});
  REQUIRE(r.rc == 0);
  const json payload = json::parse(r.out);
  const auto& rows = payload["results"]["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["class"] == "principal");
  CHECK(rows[1]["class"] == "real-negative");
  CHECK(payload["results"]["bounds_all_strict"] == true);
  CHECK(rows[0]["re"].get<std::string>().substr(0, 12) == "1.6180339887");

  const Result csv = run({"roots", "-k", "40", "--format", "csv"});
  REQUIRE(csv.rc == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "j,re,im,abs,arg_over_2pi,residual");
  size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 40);

  // refinement on/off both satisfy the residual gate inside root
  // construction; the bounds summary must agree
  for (const std::string flag : {"--polish", "--no-polish"}) {
    const Result p = run({"roots", "-k", "30", flag});
    REQUIRE(p.rc == 0);
    CHECK(json::parse(p.out)["results"]["bounds_all_strict"] == true);
  }
}

TEST_CASE("determinism: repeated runs produce byte-identical stdout") {
  const std::vector<std::string> cases[] = {
      {"seq", "--named", "kfib", "-k", "5", "--to", "30", "--method", "binet"},
      {"roots", "-k", "7"},
      {"sj", "-k", "3", "--mu", "2", "--to", "9"},
  };
  for (const auto& args : cases) {
    const Result a = run(args);
    const Result b = run(args);
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("verify: small boxes pass with exit 0") {
  const Result comp = run({"verify", "companion", "--k-max", "3", "--n-max", "8"});
  CHECK(comp.rc == 0);
  const Result multi = run({"verify", "multinomial", "--k-max", "3", "--n-max", "10"});
  CHECK(multi.rc == 0);
  const Result roots = run({"verify", "roots", "--k-max", "6"});
  CHECK(roots.rc == 0);
  const json payload = json::parse(roots.out);
  CHECK(payload["results"]["passed"] == true);
  CHECK(run({"verify", "bogus"}).rc == 2);
}

TEST_CASE("sj: integer, rational, and root-coincident bases") {
  const Result two = run({"sj", "-k", "2", "--mu", "2", "--to", "8"});
  REQUIRE(two.rc == 0);
  const json p2 = json::parse(two.out);
  CHECK(p2["results"]["sequence"][5] == json::array({"5", "13"}));
  CHECK(p2["results"]["crosscheck"]["pass"] == true);
  CHECK(p2["results"]["sj_original_equivalence"]["pass"] == true);

  const Result half = run({"sj", "-k", "3", "--mu", "3/2", "--to", "6"});
  REQUIRE(half.rc == 0);
  const json ph = json::parse(half.out);
  CHECK(ph["results"]["crosscheck"]["pass"] == true);
  CHECK(ph["results"]["sequence"][1] == json::array({"1", "3/2"}));

  // decimal close to the order-2 principal root: detected as a root
  const Result root = run({"sj", "-k", "2", "--mu",
                           "1.61803398874989484820458683436563811772030917980576", "--to", "4"});
  REQUIRE(root.rc == 0);
  const json pr = json::parse(root.out);
  CHECK(pr["results"]["case"] == "root");
  CHECK(pr["results"]["crosscheck"]["mode"] == "skipped");

  CHECK(run({"sj", "-k", "1", "--mu", "2"}).rc == 2);
  CHECK(run({"sj", "-k", "3", "--mu", "1/0"}).rc == 2);
}

TEST_CASE("escalation that cannot reach the needed precision exits with code 3") {
  // F_2(5000) has ~1045 digits, past the escalation ceiling
  const Result r = run({"seq", "--named", "kfib", "-k", "2", "--from", "5000", "--to", "5000",
                        "--method", "dresden-du"});
  CHECK(r.rc == 3);
  CHECK(r.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("large index through auto-escalation stays exact") {
  const Result binet = run({"seq", "--named", "kfib", "-k", "2", "--from", "1200", "--to",
                            "1200", "--method", "binet", "--format", "csv"});
  const Result iter = run({"seq", "--named", "kfib", "-k", "2", "--from", "1200", "--to", "1200",
                           "--format", "csv"});
  REQUIRE(binet.rc == 0);
  CHECK(binet.out == iter.out);
}

TEST_CASE("help is available and exits cleanly") {
  const Result top = run({"--help"});
  CHECK(top.rc == 0);
  CHECK(top.out.find("seq") != std::string::npos);
}
