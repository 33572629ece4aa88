#pragma once

#include "emtact/scenario.hpp"
#include "emtact/trace.hpp"

namespace emtact {

// Run the plant at the 96 kHz tick. Each tick, in order: issue due
// events, settle the actuator, evaluate the field at the true distance,
// sum forces (field, finger pad, gravity, contact), integrate, publish a
// delayed sensor sample on sensor ticks, then run the controller and
// predictor on that sample. Commands hold (ZOH) between sensor ticks.
//
// Throws ValidationError for scenario/landscape mismatches and
// DivergenceError if the state explodes.
Trace simulate(const Scenario& sc);

}  // namespace emtact
