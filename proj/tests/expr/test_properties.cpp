#include <doctest.h>

#include "support/expr_properties.hpp"

using namespace flatlab::testing;

TEST_CASE("ring axioms on random triples") {
  auto r = check_ring_axioms(1000, 101);
  INFO(r.first_failure);
  CHECK(r.failures == 0);
  CHECK(r.cases == 1000);
}

TEST_CASE("derivative rules on random pairs") {
  auto r = check_derivative_rules(1000, 202);
  INFO(r.first_failure);
  CHECK(r.failures == 0);
}

TEST_CASE("mixed partials commute") {
  auto r = check_mixed_partials(1000, 303);
  INFO(r.first_failure);
  CHECK(r.failures == 0);
}

TEST_CASE("parse of print is the identity") {
  auto r = check_parse_print(1000, 404);
  INFO(r.first_failure);
  CHECK(r.failures == 0);
}

TEST_CASE("evaluation is multiplicative") {
  auto r = check_eval_multiplicative(1000, 505);
  INFO(r.first_failure);
  CHECK(r.failures == 0);
}
