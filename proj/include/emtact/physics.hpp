#pragma once

namespace emtact {

// Fingertip as a point mass hanging from the user's intended position
// through the finger pad's spring/damper. Position is distance above the
// surface in mm; velocity in mm/s; forces in N; gravity pulls toward the
// surface (negative).
struct FingerModel {
  double mass_kg = 0.03;
  double k_f_n_mm = 0.5;     // pad stiffness, N per mm of stretch
  double c_f_n_s_mm = 0.01;  // pad damping, N per mm/s
  double gravity_m_s2 = 9.81;
};

// One-sided surface contact: a stiff spring/damper that only pushes.
struct ContactModel {
  double k_c_n_mm = 10.0;
  double c_c_n_s_mm = 0.05;
};

struct BodyState {
  double pos_mm = 0.0;
  double vel_mm_s = 0.0;
};

// Coupling force from the intended trajectory through the finger pad:
//   k_f * (x_int - x) + c_f * (v_int - v)
double finger_force(const FingerModel& m, const BodyState& s,
                    double intent_pos_mm, double intent_vel_mm_s);

double gravity_force(const FingerModel& m);

// max(0, -k_c * d - c_c * v) while penetrating (d < 0), else 0. Never
// sucks the finger down.
double contact_force(const ContactModel& m, const BodyState& s);

// Semi-implicit Euler at a fixed tick: velocity first from the summed
// force, then position from the new velocity.
BodyState physics_step(BodyState s, double total_force_n, double mass_kg,
                       double dt_s);

}  // namespace emtact
