#include <random>

#include "doctest.h"
#include "json.hpp"
#include "qgdd/params.hpp"

using namespace qgdd;

TEST_CASE("necessary conditions") {
  const auto ok = check_conditions(2, 6, 2, 3, 2);
  CHECK(ok.admissible);
  CHECK(ok.block_count == 180);
  CHECK(ok.replication == 20);
  CHECK(ok.groups == 21);

  const auto one = check_conditions(2, 6, 2, 3, 1);
  CHECK_FALSE(one.admissible);
  CHECK(one.failed_conditions == std::vector<std::string>{"q^(k-g) does not divide lambda"});

  CHECK_FALSE(check_conditions(2, 7, 2, 3, 2).admissible);
  CHECK_FALSE(check_conditions(2, 6, 2, 5, 4).admissible);
  CHECK_FALSE(check_conditions(2, 6, 2, 3, 0).admissible);
  CHECK_FALSE(check_conditions(2, 6, 3, 3, 2).admissible);
  CHECK(check_conditions(2, 6, 3, 3, 3).admissible);
}

TEST_CASE("counting functions") {
  CHECK(required_block_count(2, 9, 3, 3, 1) == 6132);
  CHECK(required_block_count(2, 14, 7, 7, 63) == 1048512);
  CHECK(required_block_count(2, 6, 2, 3, 1) == 90);
  CHECK(required_block_count(2, 6, 3, 3, 1) == 84);
  CHECK_FALSE(required_replication(2, 6, 3, 3, 1));
  CHECK(required_replication(2, 6, 2, 3, 2) == 20);
  CHECK(group_count(2, 14, 7) == 129);
  CHECK_FALSE(group_count(2, 7, 2));
}

TEST_CASE("lambda_delta for q = 3") {
  CHECK(lambda_delta(3, 6, 2, 3) == 3);
  CHECK(lambda_delta(3, 6, 3, 3) == 4);
  CHECK(lambda_delta(3, 8, 2, 4) == 9);
  CHECK(lambda_delta(3, 8, 4, 3) == 13);
  CHECK(lambda_delta(3, 9, 3, 3) == 1);
  CHECK(lambda_delta(3, 10, 2, 5) == 27);
  CHECK(lambda_delta(3, 12, 2, 6) == 81);
  CHECK(lambda_delta(3, 12, 3, 4) == 3);
  CHECK(lambda_delta(3, 12, 4, 3) == 1);
  CHECK_FALSE(lambda_delta(2, 7, 2, 3));
}

TEST_CASE("admissible lambdas are exactly the multiples of lambda_delta") {
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned v = 4; v <= 12; ++v)
      for (unsigned g = 2; g <= v; ++g) {
        if (v % g) continue;
        for (unsigned k = 2; k + g <= v; ++k) {
          const auto d = lambda_delta(q, v, g, k);
          REQUIRE(d);
          CAPTURE(q);
          CAPTURE(v);
          CAPTURE(g);
          CAPTURE(k);
          CHECK(check_conditions(q, v, g, k, *d).admissible);
          for (BigInt lambda = 1; lambda <= 3 * *d && lambda <= 400; ++lambda)
            CHECK(check_conditions(q, v, g, k, lambda).admissible == (lambda % *d == 0));
        }
      }
}

TEST_CASE("admissible table shape") {
  CHECK(admissible_table(2, 14).size() == 40);
  const auto small = admissible_table(2, 6);
  REQUIRE(small.size() == 2);
  CHECK(small[0].lambda_delta == 2);
  CHECK(small[1].lambda_delta == 3);
  CHECK(admissible_table(5, 4).empty());
  for (const auto& r : admissible_table(3, 12)) CHECK(r.admissible);
}

TEST_CASE("lambda_max sources") {
  CHECK(known_lambda_max(2, 6, 2, 3).second == LambdaMaxSource::ClosedForm);
  CHECK(known_lambda_max(2, 8, 2, 4).second == LambdaMaxSource::DesarguesianClosedForm);
  CHECK(known_lambda_max(2, 8, 4, 4) == std::pair<std::optional<BigInt>, LambdaMaxSource>{14, LambdaMaxSource::Enumeration});
  CHECK(known_lambda_max(2, 9, 3, 4).first == 1680);
  CHECK_FALSE(known_lambda_max(2, 10, 2, 5).first);
}

TEST_CASE("table renderings") {
  const auto rows = admissible_table(2, 8);
  const auto text = render_table_text(rows);
  CHECK(text.find("480*") != std::string::npos);
  CHECK(text.find(" 12 ") != std::string::npos);

  const auto csv = render_table_csv(rows);
  CHECK(csv.rfind("q,v,g,k,lambda_delta,lambda_max,lambda_max_source,blocks,groups\n", 0) == 0);
  CHECK(csv.find("2,8,2,4,4,480,desarguesian_closed_form,1224,85\n") != std::string::npos);

  const auto json = nlohmann::json::parse(render_table_json(rows));
  REQUIRE(json.size() == rows.size());
  CHECK(json[0]["v"] == 6);
  CHECK(json[0]["blocks"] == 180);
  CHECK(json[0]["lambda_max"] == 12);
  CHECK(nlohmann::json::parse(render_table_json({})).empty());
  const auto big = nlohmann::json::parse(render_table_json(admissible_table(2, 12)));
  for (const auto& row : big)
    if (row["v"] == 12 && row["k"] == 5 && row["g"] == 2) CHECK(row["lambda_max"].is_null());
}
