#include "emtact/physics.hpp"

namespace emtact {

double finger_force(const FingerModel& m, const BodyState& s,
                    double intent_pos_mm, double intent_vel_mm_s) {
  return m.k_f_n_mm * (intent_pos_mm - s.pos_mm) +
         m.c_f_n_s_mm * (intent_vel_mm_s - s.vel_mm_s);
}

double gravity_force(const FingerModel& m) {
  return -m.mass_kg * m.gravity_m_s2;
}

double contact_force(const ContactModel& m, const BodyState& s) {
  if (s.pos_mm >= 0.0) return 0.0;
  double f = -m.k_c_n_mm * s.pos_mm - m.c_c_n_s_mm * s.vel_mm_s;
  return f > 0.0 ? f : 0.0;
}

BodyState physics_step(BodyState s, double total_force_n, double mass_kg,
                       double dt_s) {
  // N / kg = m/s^2; positions are mm, hence the 1000.
  double accel_mm_s2 = total_force_n / mass_kg * 1000.0;
  s.vel_mm_s += accel_mm_s2 * dt_s;
  s.pos_mm += s.vel_mm_s * dt_s;
  return s;
}

}  // namespace emtact
