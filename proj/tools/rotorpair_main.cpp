// Command-line front end: parameter sweeps, feature location, figure-data
// reproduction, and unit conversion for the coupled planar-dipole model.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotorpair/dataset.hpp"
#include "rotorpair/errors.hpp"
#include "rotorpair/sweep.hpp"
#include "rotorpair/units.hpp"
#include "rotorpair/version.hpp"

namespace {

using namespace rotorpair;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitGuardRejection = 3;
constexpr int kExitFeatureNotFound = 4;

struct CommonOptions {
  FixedParams fixed;
  std::vector<double> temperatures;  // raw --temperature values
  std::string sweep;                 // axis:start:stop[:count]
  std::string quantities;            // comma-separated override
  std::string output = "-";
  std::string format = "csv";
  double omega_floor = 0.01;
  bool timestamp = false;
};

void add_physics_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--omega", o.fixed.omega_over_B,
                  "dipole-field strength omega/B");
  cmd->add_option("--coupling", o.fixed.coupling_over_B,
                  "dipole-dipole strength Omega/B");
  cmd->add_option("--theta-t", o.fixed.theta_t_deg,
                  "field tilt angle in degrees");
  cmd->add_option("--temperature", o.temperatures,
                  "kT/B value, repeatable (default 0.1 0.2 0.5 1.0)");
  cmd->add_option("--m-max", o.fixed.m_max, "rotor basis truncation")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rotor-levels", o.fixed.rotor_levels,
                  "rotor energies to emit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--guard-tol", o.fixed.guard_tolerance,
                  "two-level truncation guard tolerance");
  cmd->add_option("--omega-floor", o.omega_floor,
                  "smallest omega/B allowed on sweep grids");
}

void add_output_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--output", o.output, "output file, '-' for stdout");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--timestamp", o.timestamp,
                "record the generation time as a metadata comment");
}

void add_sweep_options(CLI::App* cmd, CommonOptions& o) {
  add_physics_options(cmd, o);
  cmd->add_option("--sweep", o.sweep, "axis:start:stop[:count]");
  cmd->add_option("--quantities", o.quantities,
                  "comma-separated quantity override");
  add_output_options(cmd, o);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
}

struct SweepRange {
  Axis axis;
  double start, stop;
  int count = 500;
};

SweepRange parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw std::invalid_argument(
        "--sweep expects axis:start:stop[:count], got '" + text + "'");
  const auto axis = axis_from_string(parts[0]);
  if (!axis)
    throw std::invalid_argument("unknown sweep axis '" + parts[0] +
                                "' (omega_over_B, coupling_over_B, "
                                "theta_t_deg, kT_over_B)");
  SweepRange r;
  r.axis = *axis;
  r.start = parse_number(parts[1], "sweep start");
  r.stop = parse_number(parts[2], "sweep stop");
  if (parts.size() == 4)
    r.count = static_cast<int>(parse_number(parts[3], "sweep count"));
  return r;
}

std::vector<Quantity> parse_quantities(const std::string& text) {
  std::vector<Quantity> out;
  for (const auto& name : split(text, ',')) {
    const auto q = quantity_from_string(name);
    if (!q) throw std::invalid_argument("unknown quantity '" + name + "'");
    out.push_back(*q);
  }
  if (out.empty()) throw std::invalid_argument("--quantities is empty");
  return out;
}

// the swept parameter must not also be pinned by a flag
void reject_axis_conflict(const CLI::App* cmd, Axis axis) {
  const char* flag = nullptr;
  switch (axis) {
    case Axis::omega_over_B: flag = "--omega"; break;
    case Axis::coupling_over_B: flag = "--coupling"; break;
    case Axis::theta_t_deg: flag = "--theta-t"; break;
    case Axis::kT_over_B: flag = nullptr; break;
  }
  if (flag && cmd->count(flag) > 0)
    throw std::invalid_argument(std::string("the sweep axis parameter ") +
                                flag + " must not also be fixed");
}

std::string iso_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  const char* base = std::getenv("ROTORPAIR_OUTPUT_DIR");
  if (base && *base && p.is_relative()) return std::filesystem::path(base) / p;
  return p;
}

void emit(Dataset ds, const CommonOptions& o) {
  if (o.timestamp) ds.add_meta("generated_at", iso_timestamp());
  const auto write = [&](std::ostream& out) {
    if (o.format == "json")
      write_json(ds, out);
    else
      write_csv(ds, out);
  };
  if (o.output == "-") {
    write(std::cout);
    return;
  }
  const std::filesystem::path path = resolve_output(o.output);
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file " + path.string());
  write(out);
}

void finalize_fixed(CommonOptions& o) {
  if (!o.temperatures.empty()) o.fixed.temperatures = o.temperatures;
}

int run_quantity_command(const CLI::App* cmd, CommonOptions& o,
                         std::vector<Quantity> default_quantities) {
  finalize_fixed(o);
  const std::vector<Quantity> quantities =
      o.quantities.empty() ? std::move(default_quantities)
                           : parse_quantities(o.quantities);
  Dataset ds;
  if (o.sweep.empty()) {
    ds = evaluate_point(o.fixed, quantities);
  } else {
    const SweepRange r = parse_sweep(o.sweep);
    reject_axis_conflict(cmd, r.axis);
    SweepSpec spec;
    spec.axis = r.axis;
    spec.start = r.start;
    spec.stop = r.stop;
    spec.count = r.count;
    spec.fixed = o.fixed;
    spec.quantities = quantities;
    spec.omega_floor = o.omega_floor;
    ds = run_sweep(spec);
  }
  emit(std::move(ds), o);
  return kExitOk;
}

int run_figure(int number, int points, CommonOptions& o) {
  finalize_fixed(o);
  FigureOptions fo;
  fo.points = points;
  fo.m_max = o.fixed.m_max;
  fo.temperatures = o.fixed.temperatures;
  fo.omega_floor = o.omega_floor;
  const auto panels = figure_datasets(number, fo);

  const std::filesystem::path dir =
      resolve_output(o.output == "-" ? std::string(".") : o.output);
  std::filesystem::create_directories(dir);
  const std::string extension = o.format == "json" ? ".json" : ".csv";
  for (const auto& panel : panels) {
    Dataset ds = panel.data;
    if (o.timestamp) ds.add_meta("generated_at", iso_timestamp());
    const std::filesystem::path path = dir / (panel.name + extension);
    std::ofstream out(path);
    if (!out)
      throw std::runtime_error("cannot open output file " + path.string());
    if (o.format == "json")
      write_json(ds, out);
    else
      write_csv(ds, out);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

int run_locate(const CLI::App* cmd, const std::string& kind,
               const std::string& levels, int state, CommonOptions& o) {
  finalize_fixed(o);
  if (o.sweep.empty())
    throw std::invalid_argument("locate requires --sweep axis:start:stop");
  const SweepRange r = parse_sweep(o.sweep);
  reject_axis_conflict(cmd, r.axis);

  FeatureQuery query;
  if (kind == "crossing") {
    query.kind = FeatureKind::crossing;
  } else if (kind == "anticrossing") {
    query.kind = FeatureKind::anticrossing;
  } else if (kind == "concurrence-minimum") {
    query.kind = FeatureKind::concurrence_minimum;
  } else {
    throw std::invalid_argument(
        "locate kind must be crossing, anticrossing, or concurrence-minimum");
  }

  if (query.kind == FeatureKind::concurrence_minimum) {
    if (state < 1 || state > 4)
      throw std::invalid_argument("--state expects a level label in 1..4");
    query.state_label = state - 1;
  } else {
    const auto parts = split(levels, ',');
    if (parts.size() != 2)
      throw std::invalid_argument("--levels expects two labels like 1,2");
    query.label_i = static_cast<int>(parse_number(parts[0], "level label")) - 1;
    query.label_j = static_cast<int>(parse_number(parts[1], "level label")) - 1;
  }

  SweepSpec spec;
  spec.axis = r.axis;
  spec.start = r.start;
  spec.stop = r.stop;
  spec.count = 2;  // locate scans with its own fixed resolution
  spec.fixed = o.fixed;
  spec.omega_floor = o.omega_floor;

  const Feature feature = locate_feature(query, spec);

  Dataset ds;
  ds.add_meta("rotorpair_version", kVersion);
  ds.add_meta("feature", kind);
  ds.add_meta("axis", to_string(r.axis));
  if (query.kind == FeatureKind::concurrence_minimum)
    ds.add_meta("state_label", static_cast<double>(state));
  else
    ds.add_meta("level_labels", levels);
  ds.columns = {to_string(r.axis),
                query.kind == FeatureKind::crossing ? "energy_over_B"
                : query.kind == FeatureKind::anticrossing
                    ? "gap_over_B"
                    : "concurrence"};
  ds.rows.push_back({feature.axis_value, feature.feature_value});
  emit(std::move(ds), o);
  return kExitOk;
}

int run_convert(const PhysicalParams& phys, CommonOptions& o) {
  const ReducedCouplings rc = convert_units(phys);
  Dataset ds;
  ds.add_meta("rotorpair_version", kVersion);
  ds.add_meta("dipole_moment_debye", phys.dipole_moment_debye);
  ds.add_meta("field_kV_per_cm", phys.field_kV_per_cm);
  ds.add_meta("separation_nm", phys.separation_nm);
  ds.add_meta("rotational_constant_per_cm", phys.rotational_constant_per_cm);
  ds.columns = {"omega_over_B", "coupling_over_B"};
  ds.rows.push_back({rc.omega_over_B, rc.coupling_over_B});
  emit(std::move(ds), o);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rotorpair: spectra, Bell-like states, and entanglement of two "
      "dipole-coupled planar molecules in a tilted static field"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions opts;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "single-molecule energies in the tilted field");
  add_sweep_options(spectrum, opts);

  CLI::App* factors = app.add_subcommand(
      "factors", "cos/sin matrix elements between the two lowest states");
  add_sweep_options(factors, opts);

  CLI::App* pair = app.add_subcommand(
      "pair", "energies of the coupled two-molecule system");
  add_sweep_options(pair, opts);

  CLI::App* concurrence = app.add_subcommand(
      "concurrence", "pure-state concurrences of the four pair eigenstates");
  add_sweep_options(concurrence, opts);

  CLI::App* thermal = app.add_subcommand(
      "thermal", "concurrence of the Boltzmann-mixed pair state");
  add_sweep_options(thermal, opts);

  CLI::App* figure = app.add_subcommand(
      "figure", "emit the datasets underlying a standard figure (2..7)");
  int figure_number = 0;
  int figure_points = 500;
  figure->add_option("number", figure_number, "figure number")
      ->required()
      ->check(CLI::Range(2, 7));
  figure->add_option("--points", figure_points, "grid points per axis")
      ->check(CLI::PositiveNumber);
  add_physics_options(figure, opts);
  add_output_options(figure, opts);

  CLI::App* locate = app.add_subcommand(
      "locate", "refine a crossing, anticrossing, or concurrence minimum");
  std::string locate_kind;
  std::string locate_levels = "1,2";
  int locate_state = 1;
  locate->add_option("kind", locate_kind,
                     "crossing | anticrossing | concurrence-minimum")
      ->required();
  locate->add_option("--levels", locate_levels, "two level labels, e.g. 1,2");
  locate->add_option("--state", locate_state, "state label for minima (1..4)");
  add_sweep_options(locate, opts);

  CLI::App* convert = app.add_subcommand(
      "convert", "laboratory units to the dimensionless couplings");
  PhysicalParams phys;
  convert->add_option("--dipole-moment", phys.dipole_moment_debye,
                      "dipole moment in Debye")->required();
  convert->add_option("--field", phys.field_kV_per_cm,
                      "field strength in kV/cm")->required();
  convert->add_option("--separation", phys.separation_nm,
                      "intermolecular distance in nm")->required();
  convert->add_option("--rotational-constant", phys.rotational_constant_per_cm,
                      "rotational constant in cm^-1")->required();
  add_output_options(convert, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  try {
    if (app.got_subcommand(spectrum))
      return run_quantity_command(
          spectrum, opts, {Quantity::rotor_energies, Quantity::rotor_gap});
    if (app.got_subcommand(factors))
      return run_quantity_command(factors, opts, {Quantity::factors});
    if (app.got_subcommand(pair))
      return run_quantity_command(pair, opts, {Quantity::pair_energies});
    if (app.got_subcommand(concurrence))
      return run_quantity_command(concurrence, opts,
                                  {Quantity::pure_concurrences});
    if (app.got_subcommand(thermal))
      return run_quantity_command(thermal, opts,
                                  {Quantity::thermal_concurrence});
    if (app.got_subcommand(figure))
      return run_figure(figure_number, figure_points, opts);
    if (app.got_subcommand(locate))
      return run_locate(locate, locate_kind, locate_levels, locate_state, opts);
    if (app.got_subcommand(convert)) return run_convert(phys, opts);
  } catch (const GuardRejection& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuardRejection;
  } catch (const FeatureNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFeatureNotFound;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
