#include "emtact/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {
namespace {

struct Bracket {
  Eigen::Index i;  // left node
  double t;        // position inside [i, i+1]
};

// axis is strictly ascending and v is inside its span.
Bracket bracket(const Eigen::VectorXd& axis, double v) {
  Eigen::Index n = axis.size();
  if (v <= axis(0)) return {0, 0.0};
  if (v >= axis(n - 1)) return {n - 2, 1.0};
  Eigen::Index lo = 0;
  Eigen::Index hi = n - 1;
  while (hi - lo > 1) {
    Eigen::Index mid = (lo + hi) / 2;
    if (axis(mid) <= v)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, (v - axis(lo)) / (axis(lo + 1) - axis(lo))};
}

void check_span(const char* axis_name, const Eigen::VectorXd& axis,
                double v) {
  double lo = axis(0);
  double hi = axis(axis.size() - 1);
  if (!(v >= lo && v <= hi)) throw RangeError(axis_name, v, lo, hi);
}

// Force row at an off-grid distance: the lerp of the two bracketing grid
// rows. Strict monotonicity in current survives the blend.
Eigen::VectorXd row_at(const ForceLandscape& g, double d_mm) {
  Bracket b = bracket(g.distances_mm, d_mm);
  return ((1.0 - b.t) * g.forces_n.row(b.i) +
          b.t * g.forces_n.row(b.i + 1))
      .transpose();
}

double interp_row(const ForceLandscape& g, const Eigen::VectorXd& row,
                  double current_a) {
  Bracket b = bracket(g.currents_a, current_a);
  return lerp(row(b.i), row(b.i + 1), b.t);
}

// Round-trip through 12 significant digits. Axis nodes built by repeated
// addition of an inexact step (0.1) end up a few ulp off the intended
// value and then print as -1.2999999999999998; snapping restores the
// canonical double without touching genuinely irregular spacings.
double snap12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  double out = v;
  parse_double(buf, out);
  return out;
}

constexpr const char* kCornerCell = "d_mm\\I_a";

}  // namespace

ForceLandscape make_landscape(Eigen::VectorXd distances_mm,
                              Eigen::VectorXd currents_a,
                              Eigen::MatrixXd forces_n) {
  std::vector<std::string> problems;

  if (distances_mm.size() < 2) problems.push_back("need at least 2 distances");
  if (currents_a.size() < 2) problems.push_back("need at least 2 currents");
  if (forces_n.rows() != distances_mm.size() ||
      forces_n.cols() != currents_a.size()) {
    problems.push_back(
        "force grid is " + std::to_string(forces_n.rows()) + "x" +
        std::to_string(forces_n.cols()) + ", expected " +
        std::to_string(distances_mm.size()) + "x" +
        std::to_string(currents_a.size()));
    throw ValidationError(problems);
  }

  for (Eigen::Index i = 0; i + 1 < distances_mm.size(); ++i) {
    if (!(distances_mm(i) < distances_mm(i + 1))) {
      problems.push_back("distances not strictly ascending at index " +
                         std::to_string(i + 1));
      break;
    }
  }
  for (Eigen::Index j = 0; j + 1 < currents_a.size(); ++j) {
    if (!(currents_a(j) < currents_a(j + 1))) {
      problems.push_back("currents not strictly ascending at index " +
                         std::to_string(j + 1));
      break;
    }
  }
  if (distances_mm.size() >= 1 &&
      (distances_mm(0) < 0.0 || distances_mm(distances_mm.size() - 1) > 35.0)) {
    problems.push_back("distance axis must lie within [0, 35] mm, got [" +
                       format_sig6(distances_mm(0)) + ", " +
                       format_sig6(distances_mm(distances_mm.size() - 1)) +
                       "]");
  }

  for (Eigen::Index i = 0; i < forces_n.rows(); ++i) {
    for (Eigen::Index j = 0; j + 1 < forces_n.cols(); ++j) {
      if (!(forces_n(i, j) < forces_n(i, j + 1))) {
        problems.push_back(
            "force not strictly increasing in current at distance " +
            format_sig6(distances_mm(i)) + " mm, current index " +
            std::to_string(j + 1));
        break;  // one report per row is enough
      }
    }
  }

  if (!problems.empty()) throw ValidationError(problems);

  ForceLandscape g;
  g.distances_mm = std::move(distances_mm);
  g.currents_a = std::move(currents_a);
  g.forces_n = std::move(forces_n);
  return g;
}

double synthetic_force(const SyntheticLandscapeParams& p, double d_mm,
                       double current_a) {
  double u = 1.0 / ((d_mm + p.d0_mm) * (d_mm + p.d0_mm));
  return p.a * current_a * u - p.b * u * u;
}

ForceLandscape generate_landscape(const SyntheticLandscapeParams& p) {
  if (!(p.a > 0.0)) throw ParameterError("landscape a must be > 0");
  if (!(p.b >= 0.0)) throw ParameterError("landscape b must be >= 0");
  if (!(p.d_step_mm > 0.0) || !(p.i_step_a > 0.0))
    throw ParameterError("landscape steps must be > 0");
  if (!(p.d_min_mm < p.d_max_mm))
    throw ParameterError("landscape distance range is empty");
  if (!(p.i_min_a < p.i_max_a))
    throw ParameterError("landscape current range is empty");
  if (!(p.d_min_mm + p.d0_mm > 0.0))
    throw ParameterError("d_min + d0 must be > 0");
  if (!(p.noise_sigma_n >= 0.0))
    throw ParameterError("noise sigma must be >= 0");

  auto axis = [](double lo, double hi, double step) {
    Eigen::Index n =
        static_cast<Eigen::Index>(std::floor((hi - lo) / step + 1e-9)) + 1;
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; ++k)
      v(k) = snap12(lo + static_cast<double>(k) * step);
    return v;
  };

  Eigen::VectorXd d = axis(p.d_min_mm, p.d_max_mm, p.d_step_mm);
  Eigen::VectorXd i = axis(p.i_min_a, p.i_max_a, p.i_step_a);

  Eigen::MatrixXd f(d.size(), i.size());
  DeterministicRng rng(p.seed);
  for (Eigen::Index r = 0; r < d.size(); ++r) {
    for (Eigen::Index c = 0; c < i.size(); ++c) {
      f(r, c) = synthetic_force(p, d(r), i(c));
      if (p.noise_sigma_n > 0.0) f(r, c) += p.noise_sigma_n * rng.gaussian();
    }
  }

  return make_landscape(std::move(d), std::move(i), std::move(f));
}

double force_at(const ForceLandscape& g, double d_mm, double current_a) {
  check_span("distance", g.distances_mm, d_mm);
  check_span("current", g.currents_a, current_a);
  Bracket bd = bracket(g.distances_mm, d_mm);
  Bracket bi = bracket(g.currents_a, current_a);
  double f00 = g.forces_n(bd.i, bi.i);
  double f01 = g.forces_n(bd.i, bi.i + 1);
  double f10 = g.forces_n(bd.i + 1, bi.i);
  double f11 = g.forces_n(bd.i + 1, bi.i + 1);
  return lerp(lerp(f00, f01, bi.t), lerp(f10, f11, bi.t), bd.t);
}

CurrentSolution solve_current(const ForceLandscape& g, double d_mm,
                              double target_force_n) {
  check_span("distance", g.distances_mm, d_mm);
  Eigen::VectorXd row = row_at(g, d_mm);
  Eigen::Index n = row.size();

  double i_lo = g.currents_a(0);
  double i_hi = g.currents_a(n - 1);
  double f_lo = row(0);
  double f_hi = row(n - 1);

  if (target_force_n < f_lo) return {i_lo, true, f_lo};
  if (target_force_n > f_hi) return {i_hi, true, f_hi};

  double a = i_lo;
  double b = i_hi;
  while (b - a > 1e-13) {
    double mid = 0.5 * (a + b);
    if (interp_row(g, row, mid) < target_force_n)
      a = mid;
    else
      b = mid;
  }
  double i = 0.5 * (a + b);
  return {i, false, interp_row(g, row, i)};
}

double invert_current(const ForceLandscape& g, double d_mm,
                      double target_force_n) {
  CurrentSolution s = solve_current(g, d_mm, target_force_n);
  if (s.saturated)
    throw SaturationError(target_force_n, s.current_a, s.achieved_force_n);
  return s.current_a;
}

ZeroForceCurve zero_force_curve(const ForceLandscape& g) {
  ZeroForceCurve c;
  c.distances_mm = g.distances_mm;
  c.currents_a.resize(g.distances_mm.size());
  std::vector<std::string> problems;
  for (Eigen::Index i = 0; i < g.distances_mm.size(); ++i) {
    CurrentSolution s = solve_current(g, g.distances_mm(i), 0.0);
    if (s.saturated) {
      problems.push_back("zero force unreachable at d = " +
                         format_sig6(g.distances_mm(i)) + " mm (residual " +
                         format_sig6(s.achieved_force_n) + " N)");
      continue;
    }
    c.currents_a(i) = s.current_a;
  }
  if (!problems.empty()) throw ValidationError(problems);
  return c;
}

double zero_current_at(const ZeroForceCurve& c, double d_mm) {
  double lo = c.distances_mm(0);
  double hi = c.distances_mm(c.distances_mm.size() - 1);
  Bracket b = bracket(c.distances_mm, clamp(d_mm, lo, hi));
  return lerp(c.currents_a(b.i), c.currents_a(b.i + 1), b.t);
}

MpsrResult mpsr(const ForceLandscape& g, double d_min_mm, double d_max_mm) {
  if (!(d_min_mm <= d_max_mm))
    throw ParameterError("mpsr range is inverted: [" + format_sig6(d_min_mm) +
                         ", " + format_sig6(d_max_mm) + "]");
  check_span("distance", g.distances_mm, d_min_mm);
  check_span("distance", g.distances_mm, d_max_mm);

  // The field is bilinear, so along d (at any fixed current) it is
  // piecewise linear with knots at grid distances: the minimum over
  // [d_min, d_max] of the per-distance ceiling sits on a knot or an
  // endpoint. Scan exactly those.
  std::vector<double> candidates;
  candidates.push_back(d_min_mm);
  for (Eigen::Index i = 0; i < g.distances_mm.size(); ++i) {
    double d = g.distances_mm(i);
    if (d > d_min_mm && d < d_max_mm) candidates.push_back(d);
  }
  if (d_max_mm > d_min_mm) candidates.push_back(d_max_mm);

  MpsrResult best;
  bool first = true;
  for (double d : candidates) {
    Eigen::VectorXd row = row_at(g, d);
    double ceiling = std::max(0.0, row.maxCoeff());
    if (first || ceiling < best.force_n) {
      best.force_n = ceiling;
      best.binding_distance_mm = d;
      first = false;
    }
  }
  return best;
}

void save_landscape(const ForceLandscape& g, std::ostream& out) {
  out << kCornerCell;
  for (Eigen::Index j = 0; j < g.currents_a.size(); ++j)
    out << ',' << format_exact(g.currents_a(j));
  out << '\n';
  for (Eigen::Index i = 0; i < g.distances_mm.size(); ++i) {
    out << format_exact(g.distances_mm(i));
    for (Eigen::Index j = 0; j < g.currents_a.size(); ++j)
      out << ',' << format_exact(g.forces_n(i, j));
    out << '\n';
  }
}

void save_landscape(const ForceLandscape& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  save_landscape(g, out);
  if (!out) throw ParseError("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

ForceLandscape load_landscape(std::istream& in) {
  std::string line;
  long line_no = 0;

  // header
  Eigen::VectorXd currents;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells[0] != kCornerCell)
      throw ParseError("expected corner cell '" + std::string(kCornerCell) +
                           "', got '" + cells[0] + "'",
                       line_no);
    if (cells.size() < 3)
      throw ParseError("need at least 2 current columns", line_no);
    currents.resize(static_cast<Eigen::Index>(cells.size()) - 1);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double v = 0.0;
      if (!parse_double(cells[j], v))
        throw ParseError("bad current '" + cells[j] + "' in column " +
                             std::to_string(j + 1),
                         line_no);
      currents(static_cast<Eigen::Index>(j) - 1) = v;
    }
    break;
  }
  if (currents.size() == 0) throw ParseError("empty landscape file");

  std::vector<double> distances;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (static_cast<Eigen::Index>(cells.size()) != currents.size() + 1)
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " cells, expected " +
                           std::to_string(currents.size() + 1),
                       line_no);
    double d = 0.0;
    if (!parse_double(cells[0], d))
      throw ParseError("bad distance '" + cells[0] + "'", line_no);
    std::vector<double> row(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      if (!parse_double(cells[j], row[j - 1]))
        throw ParseError("bad force '" + cells[j] + "' in column " +
                             std::to_string(j + 1),
                         line_no);
    }
    distances.push_back(d);
    rows.push_back(std::move(row));
  }

  Eigen::VectorXd d(static_cast<Eigen::Index>(distances.size()));
  Eigen::MatrixXd f(static_cast<Eigen::Index>(rows.size()), currents.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d(static_cast<Eigen::Index>(i)) = distances[i];
    for (Eigen::Index j = 0; j < currents.size(); ++j)
      f(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  return make_landscape(std::move(d), std::move(currents), std::move(f));
}

ForceLandscape load_landscape(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open landscape file '" + path + "'");
  return load_landscape(in);
}

void save_zero_curve(const ZeroForceCurve& c, std::ostream& out) {
  out << "d_mm,I0_a\n";
  for (Eigen::Index i = 0; i < c.distances_mm.size(); ++i)
    out << format_exact(c.distances_mm(i)) << ','
        << format_exact(c.currents_a(i)) << '\n';
}

}  // namespace emtact
