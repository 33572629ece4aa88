#include <cmath>

#include "doctest.h"
#include "emtact/errors.hpp"
#include "emtact/trajectory.hpp"

using namespace emtact;

TEST_CASE("tap runs at constant speed then holds the end point") {
  IntentTrajectory tr = parse_intent("tap:35:500:5");
  CHECK(tr.kind == IntentTrajectory::Kind::tap);

  IntentSample start = intent_at(tr, 0.0);
  CHECK(start.pos_mm == doctest::Approx(35.0));
  CHECK(start.vel_mm_s == doctest::Approx(-500.0));

  IntentSample mid = intent_at(tr, 0.03);
  CHECK(mid.pos_mm == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(mid.vel_mm_s == doctest::Approx(-500.0));

  // travel is 30 mm, so arrival at 60 ms; held afterwards
  IntentSample held = intent_at(tr, 0.06);
  CHECK(held.pos_mm == doctest::Approx(5.0));
  CHECK(held.vel_mm_s == 0.0);
  CHECK(intent_at(tr, 1.0).pos_mm == doctest::Approx(5.0));
}

TEST_CASE("tap can also move upward") {
  IntentTrajectory tr = parse_intent("tap:5:100:25");
  IntentSample s = intent_at(tr, 0.1);
  CHECK(s.pos_mm == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(s.vel_mm_s == doctest::Approx(100.0));
}

TEST_CASE("hold and none") {
  IntentTrajectory hold = parse_intent("hold:12.5");
  CHECK(intent_at(hold, 0.0).pos_mm == doctest::Approx(12.5));
  CHECK(intent_at(hold, 9.0).pos_mm == doctest::Approx(12.5));
  CHECK(intent_at(hold, 9.0).vel_mm_s == 0.0);

  IntentTrajectory none = parse_intent("none");
  CHECK(none.kind == IntentTrajectory::Kind::none);
}

TEST_CASE("sine position and velocity are consistent") {
  IntentTrajectory tr = parse_intent("sine:10:3:2");
  // quarter period of 2 Hz = 125 ms: peak displacement, zero velocity
  IntentSample peak = intent_at(tr, 0.125);
  CHECK(peak.pos_mm == doctest::Approx(13.0).epsilon(1e-9));
  CHECK(peak.vel_mm_s == doctest::Approx(0.0).scale(100.0));
  // at t = 0: center, max velocity = amp * 2 pi f
  IntentSample zero = intent_at(tr, 0.0);
  CHECK(zero.pos_mm == doctest::Approx(10.0));
  CHECK(zero.vel_mm_s == doctest::Approx(3.0 * 2.0 * 3.14159265358979 * 2.0)
                             .epsilon(1e-9));
}

TEST_CASE("round trip through text") {
  for (const char* text :
       {"none", "hold:12.5", "tap:35:500:5", "sine:10:3:2"}) {
    IntentTrajectory tr = parse_intent(text);
    CHECK(intent_to_string(tr) == text);
  }
}

TEST_CASE("malformed intents are rejected") {
  CHECK_THROWS_AS(parse_intent("wiggle:1:2"), ParseError);
  CHECK_THROWS_AS(parse_intent("hold"), ParseError);
  CHECK_THROWS_AS(parse_intent("hold:abc"), ParseError);
  CHECK_THROWS_AS(parse_intent("tap:35:500"), ParseError);
  CHECK_THROWS_AS(parse_intent("tap:35:0:5"), ParameterError);
  CHECK_THROWS_AS(parse_intent("tap:35:-10:5"), ParameterError);
  CHECK_THROWS_AS(parse_intent("sine:10:-1:2"), ParameterError);
  CHECK_THROWS_AS(parse_intent("sine:10:3:0"), ParameterError);
  CHECK_THROWS_AS(parse_intent("none:1"), ParseError);
  CHECK_THROWS_AS(parse_intent(""), ParseError);
}
