#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "emtact/engine.hpp"
#include "emtact/errors.hpp"
#include "emtact/landscape.hpp"
#include "emtact/numeric.hpp"
#include "emtact/scenario.hpp"
#include "emtact/trace.hpp"

namespace {

using namespace emtact;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

struct GenFlags {
  SyntheticLandscapeParams p;
  std::string out;
};

struct GridRangeFlags {
  std::string grid;
  double dmin = -1.0;  // negative: use the grid span
  double dmax = -1.0;
};

void add_synth_flags(CLI::App* cmd, SyntheticLandscapeParams& p) {
  cmd->add_option("--a", p.a, "drive coefficient (N*mm^2/A)")
      ->capture_default_str();
  cmd->add_option("--b", p.b, "attraction coefficient (N*mm^4)")
      ->capture_default_str();
  cmd->add_option("--d0", p.d0_mm, "falloff offset (mm)")
      ->capture_default_str();
  cmd->add_option("--dmin-mm", p.d_min_mm, "grid distance min (mm)")
      ->capture_default_str();
  cmd->add_option("--dmax-mm", p.d_max_mm, "grid distance max (mm)")
      ->capture_default_str();
  cmd->add_option("--dstep-mm", p.d_step_mm, "grid distance step (mm)")
      ->capture_default_str();
  cmd->add_option("--imin-a", p.i_min_a, "grid current min (A)")
      ->capture_default_str();
  cmd->add_option("--imax-a", p.i_max_a, "grid current max (A)")
      ->capture_default_str();
  cmd->add_option("--istep-a", p.i_step_a, "grid current step (A)")
      ->capture_default_str();
  cmd->add_option("--noise", p.noise_sigma_n, "cell noise sigma (N)")
      ->capture_default_str();
  cmd->add_option("--seed", p.seed, "noise RNG seed")->capture_default_str();
}

void print_summary(const Trace& tr, std::ostream& out) {
  // The same block write_trace appends after the rows.
  Trace summary_only;
  summary_only.summary = tr.summary;
  std::ostringstream buf;
  write_trace(summary_only, buf);
  std::string text = buf.str();
  std::size_t marker = text.find("#summary");
  out << (marker == std::string::npos ? text : text.substr(marker));
}

const char* kScenarioHelp =
    "Run one scenario file and write its trace.\n"
    "Scenario defaults (strict INI, '#' comments, unknown keys rejected):\n"
    "  [landscape] file= (or synthetic: a=100 b=5000 d0_mm=5 d_min_mm=0\n"
    "              d_max_mm=35 d_step_mm=0.5 i_min_a=-2 i_max_a=2\n"
    "              i_step_a=0.1 noise_sigma_n=0 seed=0)\n"
    "  [sensor]    s_max=1 falloff_mm=10 range_max_mm=35 resolution_mm=0.2\n"
    "              rate_hz=4800 latency_ms=1.8 noise_sigma=0\n"
    "  [actuator]  tau_ms=0.2171 i_min_a=-2 i_max_a=2 extra_latency_ms=1.6\n"
    "              initial_current_a=0\n"
    "  [finger]    mass_kg=0.03 k_f=0.5 c_f=0.01 gravity=9.81 k_c=10\n"
    "              c_c=0.05 start_distance_mm=35 start_velocity_mm_s=0\n"
    "              intent=none (none|hold:P|tap:P0:V:P1|sine:C:A:F)\n"
    "  [controller] mode=passive_surface (passive_surface|force_track|\n"
    "              vibro|open_loop) profile=const:0 vibro_dc_n=0\n"
    "              vibro_amp_n=0.1 vibro_freq_hz=200\n"
    "  [predictor] enabled=false d_threshold_mm=0 l_out_audio_ms=5\n"
    "              v_min_mm_s=50 ema_alpha=0.05 pos_alpha=0.3 rearm_mm=5\n"
    "              compensate_input_latency=true trigger_v_min=50\n"
    "              trigger_v_ref=1000 trigger_a_min=0 trigger_a_max=1\n"
    "              trigger_gamma=1\n"
    "  [run]       duration_s (required) seed=0 trace_decimation=20 out=";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electromagnetic tactile surface toolkit"};
  app.require_subcommand(1);

  // landscape
  auto* landscape = app.add_subcommand("landscape", "force landscape tools");
  landscape->require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd =
      landscape->add_subcommand("gen", "generate a synthetic landscape CSV");
  add_synth_flags(gen_cmd, gen.p);
  gen_cmd->add_option("--out", gen.out, "output CSV path")->required();

  std::string zero_grid, zero_out;
  auto* zero_cmd = landscape->add_subcommand(
      "zero", "zero-force current curve of a landscape");
  zero_cmd->add_option("--grid", zero_grid, "landscape CSV")->required();
  zero_cmd->add_option("--out", zero_out, "output CSV (stdout if omitted)");

  std::string invert_grid;
  double invert_d = 0.0, invert_f = 0.0;
  auto* invert_cmd = landscape->add_subcommand(
      "invert", "current that produces a force at a distance");
  invert_cmd->add_option("--grid", invert_grid, "landscape CSV")->required();
  invert_cmd->add_option("--distance-mm", invert_d, "distance (mm)")
      ->required();
  invert_cmd->add_option("--force-n", invert_f, "target force (N)")
      ->required();

  GridRangeFlags mpsr_flags;
  auto* mpsr_cmd = landscape->add_subcommand(
      "mpsr", "maximum practicable static rejection over a distance range");
  mpsr_cmd->add_option("--grid", mpsr_flags.grid, "landscape CSV")->required();
  mpsr_cmd->add_option("--dmin-mm", mpsr_flags.dmin, "range start (mm)");
  mpsr_cmd->add_option("--dmax-mm", mpsr_flags.dmax, "range end (mm)");

  // simulate
  std::string sim_scenario, sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", kScenarioHelp);
  sim_cmd->add_option("--scenario", sim_scenario, "scenario file")->required();
  sim_cmd->add_option("--out", sim_out,
                      "trace output path (overrides [run] out)");

  // report
  auto* report = app.add_subcommand("report", "summaries of produced files");
  report->require_subcommand(1);

  std::string lat_trace;
  auto* lat_cmd =
      report->add_subcommand("latency", "per-event latency accounting");
  lat_cmd->add_option("--trace", lat_trace, "trace file")->required();

  GridRangeFlags rep_mpsr;
  auto* rep_mpsr_cmd =
      report->add_subcommand("mpsr", "MPSR with its binding distance");
  rep_mpsr_cmd->add_option("--grid", rep_mpsr.grid, "landscape CSV")
      ->required();
  rep_mpsr_cmd->add_option("--dmin-mm", rep_mpsr.dmin, "range start (mm)");
  rep_mpsr_cmd->add_option("--dmax-mm", rep_mpsr.dmax, "range end (mm)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      save_landscape(generate_landscape(gen.p), gen.out);
      return 0;
    }

    if (zero_cmd->parsed()) {
      ZeroForceCurve curve = zero_force_curve(load_landscape(zero_grid));
      if (zero_out.empty()) {
        save_zero_curve(curve, std::cout);
      } else {
        std::ofstream out(zero_out);
        if (!out)
          throw ParseError("cannot open '" + zero_out + "' for writing");
        save_zero_curve(curve, out);
      }
      return 0;
    }

    if (invert_cmd->parsed()) {
      ForceLandscape g = load_landscape(invert_grid);
      std::cout << format_sig6_full(invert_current(g, invert_d, invert_f))
                << '\n';
      return 0;
    }

    auto run_mpsr = [](const GridRangeFlags& f, bool with_distance) {
      ForceLandscape g = load_landscape(f.grid);
      double lo = f.dmin >= 0.0 ? f.dmin : g.distances_mm(0);
      double hi =
          f.dmax >= 0.0 ? f.dmax : g.distances_mm(g.distances_mm.size() - 1);
      MpsrResult r = mpsr(g, lo, hi);
      if (with_distance)
        std::cout << "mpsr=" << format_sig6_full(r.force_n)
                  << " at d_mm=" << format_sig6_full(r.binding_distance_mm)
                  << '\n';
      else
        std::cout << format_sig6_full(r.force_n) << '\n';
    };

    if (mpsr_cmd->parsed()) {
      run_mpsr(mpsr_flags, false);
      return 0;
    }

    if (sim_cmd->parsed()) {
      Scenario sc = load_scenario(sim_scenario);
      if (!sim_out.empty()) sc.out_path = sim_out;
      if (sc.out_path.empty())
        throw ValidationError(
            "no trace output path: pass --out or set out in [run]");
      Trace tr = simulate(sc);
      write_trace(tr, sc.out_path);
      print_summary(tr, std::cout);
      return 0;
    }

    if (lat_cmd->parsed()) {
      Trace tr = read_trace(lat_trace);
      const TraceSummary& s = tr.summary;
      std::cout << "channel intended_onset_ms contact_ms error_ms "
                   "deficit_ms flag\n";
      for (const EventRecord& ev : s.events) {
        double deficit = ev.perceived_onset_ms - ev.intended_onset_ms;
        std::cout << channel_name(ev.channel) << ' '
                  << format_sig6(ev.intended_onset_ms) << ' ';
        if (s.contact_count > 0)
          std::cout << format_sig6(s.first_contact_ms) << ' '
                    << format_sig6(ev.intended_onset_ms - s.first_contact_ms);
        else
          std::cout << "- -";
        std::cout << ' ' << format_sig6(deficit) << ' '
                  << (ev.late ? "late" : "ontime") << '\n';
      }
      if (s.events.empty()) std::cout << "(no events)\n";
      return 0;
    }

    if (rep_mpsr_cmd->parsed()) {
      run_mpsr(rep_mpsr, true);
      return 0;
    }

    std::cerr << "usage error: no subcommand\n";
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const SaturationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
