#include "rotorpair/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rotorpair/entanglement.hpp"
#include "rotorpair/errors.hpp"
#include "rotorpair/version.hpp"

namespace rotorpair {

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::omega_over_B: return "omega_over_B";
    case Axis::coupling_over_B: return "coupling_over_B";
    case Axis::theta_t_deg: return "theta_t_deg";
    case Axis::kT_over_B: return "kT_over_B";
  }
  return "?";
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::rotor_energies: return "rotor_energies";
    case Quantity::rotor_gap: return "rotor_gap";
    case Quantity::factors: return "factors";
    case Quantity::pair_energies: return "pair_energies";
    case Quantity::pure_concurrences: return "pure_concurrences";
    case Quantity::thermal_concurrence: return "thermal_concurrence";
  }
  return "?";
}

std::optional<Axis> axis_from_string(const std::string& name) {
  for (Axis a : {Axis::omega_over_B, Axis::coupling_over_B, Axis::theta_t_deg,
                 Axis::kT_over_B})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

std::optional<Quantity> quantity_from_string(const std::string& name) {
  for (Quantity q : {Quantity::rotor_energies, Quantity::rotor_gap,
                     Quantity::factors, Quantity::pair_energies,
                     Quantity::pure_concurrences, Quantity::thermal_concurrence})
    if (to_string(q) == name) return q;
  return std::nullopt;
}

double deg_to_rad(double degrees) {
  return degrees * std::numbers::pi / 180.0;
}

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || start >= stop)
    throw std::invalid_argument("sweep: need start < stop");
  if (count < 2) throw std::invalid_argument("sweep: need count >= 2");
  if (!(omega_floor > 0.0))
    throw std::invalid_argument("sweep: omega_floor must be > 0");
  if (fixed.m_max < 1) throw std::invalid_argument("sweep: m_max must be >= 1");
  if (fixed.rotor_levels < 1)
    throw std::invalid_argument("sweep: rotor_levels must be >= 1");
  for (double t : fixed.temperatures)
    if (!std::isfinite(t) || t < 0.0)
      throw std::invalid_argument("sweep: temperatures must be finite and >= 0");
}

namespace {

constexpr int kCoarseScanPoints = 1000;
constexpr double kAxisPrecision = 1e-4;

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> xs(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int k = 0; k < count; ++k) xs[k] = start + step * k;
  xs.back() = stop;
  return xs;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Needs {
  bool rotor = false;
  bool factors = false;
  bool pair = false;
  bool thermal = false;
};

Needs needs_of(const std::vector<Quantity>& quantities) {
  Needs n;
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::rotor_energies:
      case Quantity::rotor_gap: n.rotor = true; break;
      case Quantity::factors: n.factors = true; break;
      case Quantity::pair_energies:
      case Quantity::pure_concurrences: n.pair = true; break;
      case Quantity::thermal_concurrence:
        n.pair = true;
        n.thermal = true;
        break;
    }
  }
  return n;
}

RotorParams rotor_params_of(const FixedParams& f) {
  RotorParams r;
  r.omega_over_B = f.omega_over_B;
  r.theta_t = wrap_angle(deg_to_rad(f.theta_t_deg));
  r.m_max = f.m_max;
  return r;
}

FixedParams with_axis(const FixedParams& base, Axis axis, double x) {
  FixedParams f = base;
  switch (axis) {
    case Axis::omega_over_B: f.omega_over_B = x; break;
    case Axis::coupling_over_B: f.coupling_over_B = x; break;
    case Axis::theta_t_deg: f.theta_t_deg = x; break;
    case Axis::kT_over_B: f.kT_over_B = x; break;
  }
  return f;
}

struct PointData {
  std::vector<double> rotor_energies;
  double rotor_gap = 0.0;
  DipoleFactors factors{};
  PairEigensystem pair{};
  bool has_pair = false;
  std::vector<double> thermal;
};

PointData evaluate(const FixedParams& f, const Needs& needs,
                   const std::vector<double>& temperatures) {
  PointData p;
  const RotorEigensystem rotor = solve_rotor(rotor_params_of(f));
  if (needs.rotor) {
    const int levels = std::min(f.rotor_levels, rotor.levels());
    p.rotor_energies.assign(rotor.energies.data(),
                            rotor.energies.data() + levels);
    p.rotor_gap = rotor.energies(1) - rotor.energies(0);
  }
  if (needs.factors) p.factors = dipole_factors(rotor, f.guard_tolerance);
  if (needs.pair) {
    p.pair = solve_pair(rotor, f.coupling_over_B, f.guard_tolerance);
    p.has_pair = true;
  }
  if (needs.thermal) {
    p.thermal.reserve(temperatures.size());
    for (double t : temperatures)
      p.thermal.push_back(thermal_concurrence(p.pair, Temperature{t}));
  }
  return p;
}

void append_quantity_columns(std::vector<std::string>& columns, Quantity q,
                             const FixedParams& fixed, Axis axis,
                             bool is_sweep) {
  switch (q) {
    case Quantity::rotor_energies:
      for (int l = 0; l < fixed.rotor_levels; ++l)
        columns.push_back("eps" + std::to_string(l) + "_over_B");
      break;
    case Quantity::rotor_gap:
      columns.push_back("gap01_over_B");
      break;
    case Quantity::factors:
      for (const char* name : {"c0", "c1", "s0", "s1", "cx_re", "cx_im",
                               "sx_re", "sx_im"})
        columns.push_back(name);
      break;
    case Quantity::pair_energies:
      for (int n = 1; n <= 4; ++n)
        columns.push_back("E" + std::to_string(n) + "_over_B");
      break;
    case Quantity::pure_concurrences:
      for (int n = 1; n <= 4; ++n) columns.push_back("C" + std::to_string(n));
      break;
    case Quantity::thermal_concurrence:
      if (is_sweep && axis == Axis::kT_over_B) {
        columns.push_back("C_thermal");
      } else {
        for (double t : fixed.temperatures)
          columns.push_back("C_thermal_kT_" + short_number(t));
      }
      break;
  }
}

void append_quantity_values(std::vector<double>& row, Quantity q,
                            const PointData& p, const FixedParams& fixed) {
  switch (q) {
    case Quantity::rotor_energies:
      for (int l = 0; l < fixed.rotor_levels; ++l)
        row.push_back(l < static_cast<int>(p.rotor_energies.size())
                          ? p.rotor_energies[l]
                          : std::numeric_limits<double>::quiet_NaN());
      break;
    case Quantity::rotor_gap:
      row.push_back(p.rotor_gap);
      break;
    case Quantity::factors:
      row.push_back(p.factors.c0.real());
      row.push_back(p.factors.c1.real());
      row.push_back(p.factors.s0.real());
      row.push_back(p.factors.s1.real());
      row.push_back(p.factors.cx.real());
      row.push_back(p.factors.cx.imag());
      row.push_back(p.factors.sx.real());
      row.push_back(p.factors.sx.imag());
      break;
    case Quantity::pair_energies:
      for (int label = 0; label < 4; ++label)
        row.push_back(p.pair.energies(p.pair.index_of_label(label)));
      break;
    case Quantity::pure_concurrences:
      for (int label = 0; label < 4; ++label)
        row.push_back(
            pure_concurrence(p.pair.states.col(p.pair.index_of_label(label))));
      break;
    case Quantity::thermal_concurrence:
      for (double c : p.thermal) row.push_back(c);
      break;
  }
}

// Overlap continuation with an energy-order fallback: when the previous
// point is exactly degenerate its eigenvectors are a basis choice, so the
// overlap match is meaningless there and labels follow the energy order.
std::array<int, 4> continue_labels(const PairEigensystem& previous,
                                   const PairEigensystem& current,
                                   int* ambiguous_counter) {
  const LabelMatch match = track_labels(previous, current);
  if (match.ambiguous && ambiguous_counter) ++*ambiguous_counter;
  if (match.ambiguous && previous.degenerate) {
    std::array<int, 4> ordered = previous.labels;
    std::sort(ordered.begin(), ordered.end());
    return ordered;
  }
  return match.labels;
}

void add_fixed_metadata(Dataset& ds, const FixedParams& fixed, Axis axis,
                        bool is_sweep) {
  if (!is_sweep || axis != Axis::omega_over_B)
    ds.add_meta("omega_over_B", fixed.omega_over_B);
  if (!is_sweep || axis != Axis::coupling_over_B)
    ds.add_meta("coupling_over_B", fixed.coupling_over_B);
  if (!is_sweep || axis != Axis::theta_t_deg)
    ds.add_meta("theta_t_deg", fixed.theta_t_deg);
  std::string temps;
  for (size_t i = 0; i < fixed.temperatures.size(); ++i)
    temps += (i ? "," : "") + format_double(fixed.temperatures[i]);
  ds.add_meta("temperatures_kT_over_B", temps);
  ds.add_meta("m_max", static_cast<double>(fixed.m_max));
  ds.add_meta("guard_tolerance", fixed.guard_tolerance);
  ds.add_meta("degeneracy_tolerance", kDegeneracyTolerance);
}

std::string quantities_string(const std::vector<Quantity>& quantities) {
  std::string joined;
  for (size_t i = 0; i < quantities.size(); ++i)
    joined += (i ? "," : "") + to_string(quantities[i]);
  return joined;
}

// Evaluates every grid point (parallel), rethrows the first failure with the
// offending point identified, then tracks pair labels in grid order.
std::vector<PointData> evaluate_grid(const SweepSpec& spec,
                                     const std::vector<double>& grid,
                                     const Needs& needs, int* ambiguities) {
  const int n = static_cast<int>(grid.size());
  std::vector<PointData> pts(n);
  std::vector<std::exception_ptr> errors(n);

  parallel_for(n, [&](int k) {
    try {
      const std::vector<double> temps =
          spec.axis == Axis::kT_over_B
              ? std::vector<double>{grid[k]}
              : spec.fixed.temperatures;
      pts[k] = evaluate(with_axis(spec.fixed, spec.axis, grid[k]), needs, temps);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });

  for (int k = 0; k < n; ++k) {
    if (!errors[k]) continue;
    std::ostringstream at;
    at << " [at grid point " << k << ", " << to_string(spec.axis) << " = "
       << format_double(grid[k]) << "]";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const GuardRejection& g) {
      throw GuardRejection(g.what() + at.str(), g.gap(), g.threshold());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(e.what() + at.str());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(e.what() + at.str());
    }
  }

  int ambiguous = 0;
  if (needs.pair) {
    for (int k = 1; k < n; ++k) {
      pts[k].pair.labels =
          continue_labels(pts[k - 1].pair, pts[k].pair, &ambiguous);
    }
  }
  if (ambiguities) *ambiguities = ambiguous;
  return pts;
}

}  // namespace

Dataset run_sweep(const SweepSpec& spec) {
  spec.validate();

  SweepSpec s = spec;
  bool floored = false;
  if (s.axis == Axis::omega_over_B && s.start < s.omega_floor) {
    s.start = s.omega_floor;
    floored = true;
    if (s.start >= s.stop)
      throw std::invalid_argument(
          "sweep: omega range collapses after applying the omega floor");
  }

  const std::vector<double> grid = linspace(s.start, s.stop, s.count);
  const Needs needs = needs_of(s.quantities);

  int ambiguities = 0;
  const std::vector<PointData> pts = evaluate_grid(s, grid, needs, &ambiguities);

  Dataset ds;
  ds.add_meta("rotorpair_version", kVersion);
  ds.add_meta("axis", to_string(s.axis));
  ds.add_meta("start", s.start);
  ds.add_meta("stop", s.stop);
  ds.add_meta("count", static_cast<double>(s.count));
  ds.add_meta("quantities", quantities_string(s.quantities));
  add_fixed_metadata(ds, s.fixed, s.axis, true);
  if (floored) {
    ds.add_meta("note",
                "omega_over_B grid start raised to the configured floor " +
                    format_double(s.omega_floor));
  }
  if (ambiguities > 0)
    ds.add_meta("label_tracking_ambiguities",
                static_cast<double>(ambiguities));
  int degenerate_points = 0;
  for (const auto& p : pts)
    if (p.has_pair && p.pair.degenerate) ++degenerate_points;
  if (degenerate_points > 0)
    ds.add_meta("degenerate_pair_points", static_cast<double>(degenerate_points));

  ds.columns.push_back(to_string(s.axis));
  for (Quantity q : s.quantities)
    append_quantity_columns(ds.columns, q, s.fixed, s.axis, true);

  ds.rows.reserve(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row;
    row.reserve(ds.columns.size());
    row.push_back(grid[k]);
    for (Quantity q : s.quantities)
      append_quantity_values(row, q, pts[k], s.fixed);
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

Dataset evaluate_point(const FixedParams& fixed,
                       const std::vector<Quantity>& quantities) {
  const Needs needs = needs_of(quantities);
  const PointData p = evaluate(fixed, needs, fixed.temperatures);

  Dataset ds;
  ds.add_meta("rotorpair_version", kVersion);
  ds.add_meta("quantities", quantities_string(quantities));
  add_fixed_metadata(ds, fixed, Axis::omega_over_B, false);
  if (p.has_pair && p.pair.degenerate)
    ds.add_meta("note", "pair spectrum is exactly degenerate; "
                        "eigenvector-dependent quantities are basis-choice dependent");

  for (Quantity q : quantities)
    append_quantity_columns(ds.columns, q, fixed, Axis::omega_over_B, false);
  std::vector<double> row;
  row.reserve(ds.columns.size());
  for (Quantity q : quantities) append_quantity_values(row, q, p, fixed);
  ds.rows.push_back(std::move(row));
  return ds;
}

namespace {

// Feature evaluations during refinement: solve at x and label states by
// overlap with the bracket-left eigensystem.
class FeatureEvaluator {
 public:
  FeatureEvaluator(const SweepSpec& spec, const FeatureQuery& query,
                   const PairEigensystem& reference)
      : spec_(spec), query_(query), reference_(reference) {}

  PairEigensystem solve(double x) const {
    const FixedParams f = with_axis(spec_.fixed, spec_.axis, x);
    PairEigensystem sys =
        solve_pair(solve_rotor(rotor_params_of(f)), f.coupling_over_B,
                   f.guard_tolerance);
    sys.labels = continue_labels(reference_, sys, nullptr);
    return sys;
  }

  double signed_difference(const PairEigensystem& sys) const {
    return sys.energies(sys.index_of_label(query_.label_i)) -
           sys.energies(sys.index_of_label(query_.label_j));
  }

  double gap(const PairEigensystem& sys) const {
    return sys.energies(sys.index_of_label(query_.label_j)) -
           sys.energies(sys.index_of_label(query_.label_i));
  }

  double concurrence(const PairEigensystem& sys) const {
    return pure_concurrence(
        sys.states.col(sys.index_of_label(query_.state_label)));
  }

  double objective(double x) const {
    const PairEigensystem sys = solve(x);
    return query_.kind == FeatureKind::anticrossing ? gap(sys) : concurrence(sys);
  }

 private:
  const SweepSpec& spec_;
  const FeatureQuery& query_;
  const PairEigensystem& reference_;
};

// Golden-section minimization to a fixed axis-width tolerance.
std::pair<double, double> golden_minimize(
    const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace

Feature locate_feature(const FeatureQuery& query, const SweepSpec& spec) {
  if (spec.axis == Axis::kT_over_B)
    throw std::invalid_argument(
        "locate: features live on the pair spectrum; sweep omega_over_B, "
        "coupling_over_B, or theta_t_deg");
  for (int label : {query.label_i, query.label_j, query.state_label})
    if (label < 0 || label > 3)
      throw std::invalid_argument("locate: labels must be in 0..3");
  if (query.kind != FeatureKind::concurrence_minimum &&
      query.label_i == query.label_j)
    throw std::invalid_argument("locate: need two distinct level labels");

  SweepSpec s = spec;
  s.count = kCoarseScanPoints;
  s.quantities = {Quantity::pair_energies};
  s.validate();
  if (s.axis == Axis::omega_over_B && s.start < s.omega_floor)
    s.start = s.omega_floor;

  const std::vector<double> grid = linspace(s.start, s.stop, s.count);
  const Needs needs = needs_of(s.quantities);
  std::vector<PointData> pts = evaluate_grid(s, grid, needs, nullptr);

  const int n = static_cast<int>(grid.size());
  std::vector<double> values(n);
  for (int k = 0; k < n; ++k) {
    const FeatureEvaluator eval(s, query, pts[k].pair);  // labels already set
    switch (query.kind) {
      case FeatureKind::crossing:
        values[k] = eval.signed_difference(pts[k].pair);
        break;
      case FeatureKind::anticrossing:
        values[k] = eval.gap(pts[k].pair);
        break;
      case FeatureKind::concurrence_minimum:
        values[k] = eval.concurrence(pts[k].pair);
        break;
    }
  }

  if (query.kind == FeatureKind::crossing) {
    for (int k = 0; k + 1 < n; ++k) {
      if (values[k] == 0.0)
        return {grid[k],
                pts[k].pair.energies(pts[k].pair.index_of_label(query.label_i))};
      if (values[k] * values[k + 1] < 0.0) {
        const FeatureEvaluator eval(s, query, pts[k].pair);
        double lo = grid[k], hi = grid[k + 1];
        double flo = values[k];
        PairEigensystem sys = pts[k].pair;
        while (hi - lo > kAxisPrecision) {
          const double mid = 0.5 * (lo + hi);
          sys = eval.solve(mid);
          const double fm = eval.signed_difference(sys);
          if (fm == 0.0) break;
          if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double x = 0.5 * (lo + hi);
        sys = eval.solve(x);
        return {x, sys.energies(sys.index_of_label(query.label_i))};
      }
    }
    throw FeatureNotFound("locate: no sign change of the tracked level "
                          "difference inside the scanned range");
  }

  // interior minimum, global among local ones
  int best = -1;
  for (int k = 1; k + 1 < n; ++k) {
    if (values[k] <= values[k - 1] && values[k] <= values[k + 1] &&
        (best < 0 || values[k] < values[best]))
      best = k;
  }
  if (best < 0)
    throw FeatureNotFound("locate: no interior minimum inside the scanned range");

  const FeatureEvaluator eval(s, query, pts[best].pair);
  const auto [x, fx] = golden_minimize(
      [&](double v) { return eval.objective(v); }, grid[best - 1],
      grid[best + 1], kAxisPrecision);
  return {x, fx};
}

namespace {

Dataset select_columns(const Dataset& src, const std::vector<std::string>& names) {
  Dataset out;
  out.metadata = src.metadata;
  std::vector<int> idx;
  for (const auto& name : names) {
    const int i = src.column_index(name);
    if (i < 0) throw std::logic_error("dataset: missing column " + name);
    idx.push_back(i);
    out.columns.push_back(name);
  }
  out.rows.reserve(src.rows.size());
  for (const auto& row : src.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (int i : idx) r.push_back(row[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

void tag_panel(Dataset& ds, int figure, const std::string& panel) {
  ds.metadata.insert(ds.metadata.begin(),
                     {std::string("panel"), panel});
  ds.metadata.insert(ds.metadata.begin(),
                     {std::string("figure"), std::to_string(figure)});
}

FixedParams figure_fixed(const FigureOptions& o) {
  FixedParams f;
  f.m_max = o.m_max;
  f.temperatures = o.temperatures;
  return f;
}

SweepSpec figure_sweep(Axis axis, double start, double stop,
                       const FigureOptions& o, FixedParams fixed,
                       std::vector<Quantity> quantities) {
  SweepSpec s;
  s.axis = axis;
  s.start = start;
  s.stop = stop;
  s.count = o.points;
  s.fixed = std::move(fixed);
  s.quantities = std::move(quantities);
  s.omega_floor = o.omega_floor;
  return s;
}

void append_computed_column(Dataset& ds, const std::string& name,
                            const std::function<double(const std::vector<double>&,
                                                       const Dataset&)>& fn) {
  ds.columns.push_back(name);
  for (auto& row : ds.rows) row.push_back(fn(row, ds));
}

double column_value(const std::vector<double>& row, const Dataset& ds,
                    const std::string& name) {
  return row[static_cast<size_t>(ds.column_index(name))];
}

}  // namespace

std::vector<FigurePanel> figure_datasets(int figure_number,
                                         const FigureOptions& options) {
  if (figure_number < 2 || figure_number > 7)
    throw std::invalid_argument("figure: number must be in 2..7");

  std::vector<FigurePanel> panels;
  const auto energy_columns = std::vector<std::string>{
      "E1_over_B", "E2_over_B", "E3_over_B", "E4_over_B"};
  const auto concurrence_columns =
      std::vector<std::string>{"C1", "C2", "C3", "C4"};

  switch (figure_number) {
    case 2: {
      FixedParams f = figure_fixed(options);
      f.theta_t_deg = 0.0;
      f.rotor_levels = 6;
      Dataset all = run_sweep(figure_sweep(
          Axis::omega_over_B, 0.0, 4.0, options, f,
          {Quantity::rotor_energies, Quantity::rotor_gap}));

      std::vector<std::string> acols{"omega_over_B"};
      for (int l = 0; l < f.rotor_levels; ++l)
        acols.push_back("eps" + std::to_string(l) + "_over_B");
      Dataset a = select_columns(all, acols);
      tag_panel(a, 2, "a");
      panels.push_back({"fig2a", std::move(a)});

      Dataset b = select_columns(all, {"omega_over_B", "gap01_over_B"});
      tag_panel(b, 2, "b");
      panels.push_back({"fig2b", std::move(b)});

      // probability densities of the two lowest states at omega/B = 2
      RotorParams rp;
      rp.omega_over_B = 2.0;
      rp.theta_t = 0.0;
      rp.m_max = options.m_max;
      const RotorEigensystem sys = solve_rotor(rp);
      Dataset c;
      c.add_meta("rotorpair_version", kVersion);
      c.add_meta("omega_over_B", 2.0);
      c.add_meta("theta_t_deg", 0.0);
      c.add_meta("m_max", static_cast<double>(options.m_max));
      c.columns = {"theta_rad", "psi0_sq", "psi1_sq"};
      const int grid_points = 512;
      for (int k = 0; k < grid_points; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / grid_points;
        c.rows.push_back({theta, probability_density(sys, 0, theta),
                          probability_density(sys, 1, theta)});
      }
      tag_panel(c, 2, "c");
      panels.push_back({"fig2c", std::move(c)});
      break;
    }

    case 3: {
      FixedParams f = figure_fixed(options);
      f.omega_over_B = 2.0;
      Dataset vs_angle = run_sweep(figure_sweep(Axis::theta_t_deg, 0.0, 90.0,
                                                options, f,
                                                {Quantity::factors}));
      auto abs_of = [&](const char* re, const char* im) {
        return [re = std::string(re), im = std::string(im)](
                   const std::vector<double>& row, const Dataset& ds) {
          return std::hypot(column_value(row, ds, re), column_value(row, ds, im));
        };
      };
      auto abs_real = [&](const char* name) {
        return [name = std::string(name)](const std::vector<double>& row,
                                          const Dataset& ds) {
          return std::abs(column_value(row, ds, name));
        };
      };
      Dataset work = vs_angle;
      append_computed_column(work, "abs_c0", abs_real("c0"));
      append_computed_column(work, "abs_c1", abs_real("c1"));
      append_computed_column(work, "abs_cx", abs_of("cx_re", "cx_im"));
      append_computed_column(work, "abs_s0", abs_real("s0"));
      append_computed_column(work, "abs_s1", abs_real("s1"));
      append_computed_column(work, "abs_sx", abs_of("sx_re", "sx_im"));

      Dataset a = select_columns(work, {"theta_t_deg", "abs_c0", "abs_c1", "abs_cx"});
      tag_panel(a, 3, "a");
      panels.push_back({"fig3a", std::move(a)});
      Dataset b = select_columns(work, {"theta_t_deg", "abs_s0", "abs_s1", "abs_sx"});
      tag_panel(b, 3, "b");
      panels.push_back({"fig3b", std::move(b)});

      // signed squares of the contributive factors vs omega at 0 and 90 deg
      auto factor_sweep = [&](double theta_deg) {
        FixedParams g = figure_fixed(options);
        g.theta_t_deg = theta_deg;
        return run_sweep(figure_sweep(Axis::omega_over_B, 0.0, 20.0, options,
                                      g, {Quantity::factors}));
      };
      const Dataset at0 = factor_sweep(0.0);
      const Dataset at90 = factor_sweep(90.0);

      auto signed_square = [](double re, double im) {
        return re * re - im * im;  // real part of the complex square
      };
      Dataset cpanel;
      cpanel.metadata = at0.metadata;
      cpanel.columns = {"omega_over_B", "c0_sq_0deg", "c1_sq_0deg",
                        "cx_sq_90deg"};
      Dataset dpanel;
      dpanel.metadata = at0.metadata;
      dpanel.columns = {"omega_over_B", "s0_sq_90deg", "s1_sq_90deg",
                        "sx_sq_0deg"};
      for (size_t k = 0; k < at0.rows.size(); ++k) {
        const auto& r0 = at0.rows[k];
        const auto& r9 = at90.rows[k];
        const double c0 = column_value(r0, at0, "c0");
        const double c1 = column_value(r0, at0, "c1");
        const double s0 = column_value(r9, at90, "s0");
        const double s1 = column_value(r9, at90, "s1");
        cpanel.rows.push_back(
            {r0[0], c0 * c0, c1 * c1,
             signed_square(column_value(r9, at90, "cx_re"),
                           column_value(r9, at90, "cx_im"))});
        dpanel.rows.push_back(
            {r0[0], s0 * s0, s1 * s1,
             signed_square(column_value(r0, at0, "sx_re"),
                           column_value(r0, at0, "sx_im"))});
      }
      tag_panel(cpanel, 3, "c");
      panels.push_back({"fig3c", std::move(cpanel)});
      tag_panel(dpanel, 3, "d");
      panels.push_back({"fig3d", std::move(dpanel)});
      break;
    }

    case 4:
    case 5: {
      const bool vs_omega = figure_number == 4;
      for (const double theta : {0.0, 90.0}) {
        FixedParams f = figure_fixed(options);
        f.theta_t_deg = theta;
        SweepSpec s =
            vs_omega
                ? figure_sweep(Axis::omega_over_B, 0.0, 4.0, options, f,
                               {Quantity::pair_energies,
                                Quantity::pure_concurrences})
                : figure_sweep(Axis::coupling_over_B, 0.0, 5.0, options, f,
                               {Quantity::pair_energies,
                                Quantity::pure_concurrences});
        if (vs_omega)
          s.fixed.coupling_over_B = 0.8;
        else
          s.fixed.omega_over_B = 2.0;
        Dataset all = run_sweep(s);

        const std::string axis_name = to_string(s.axis);
        std::vector<std::string> ecols{axis_name};
        ecols.insert(ecols.end(), energy_columns.begin(), energy_columns.end());
        Dataset epanel = select_columns(all, ecols);
        if (vs_omega) {
          append_computed_column(
              epanel, "E2_minus_E1",
              [](const std::vector<double>& row, const Dataset& ds) {
                return column_value(row, ds, "E2_over_B") -
                       column_value(row, ds, "E1_over_B");
              });
        }
        std::vector<std::string> ccols{axis_name};
        ccols.insert(ccols.end(), concurrence_columns.begin(),
                     concurrence_columns.end());
        Dataset cpanel = select_columns(all, ccols);

        const std::string prefix = "fig" + std::to_string(figure_number);
        const std::string ename = theta == 0.0 ? "a" : "c";
        const std::string cname = theta == 0.0 ? "b" : "d";
        tag_panel(epanel, figure_number, ename);
        tag_panel(cpanel, figure_number, cname);
        panels.push_back({prefix + ename, std::move(epanel)});
        panels.push_back({prefix + cname, std::move(cpanel)});
      }
      break;
    }

    case 6: {
      FixedParams f = figure_fixed(options);
      f.omega_over_B = 2.0;
      f.coupling_over_B = 0.8;
      Dataset all = run_sweep(figure_sweep(
          Axis::theta_t_deg, 0.0, 90.0, options, f,
          {Quantity::pair_energies, Quantity::pure_concurrences}));
      std::vector<std::string> ecols{"theta_t_deg"};
      ecols.insert(ecols.end(), energy_columns.begin(), energy_columns.end());
      Dataset a = select_columns(all, ecols);
      tag_panel(a, 6, "a");
      panels.push_back({"fig6a", std::move(a)});
      std::vector<std::string> ccols{"theta_t_deg"};
      ccols.insert(ccols.end(), concurrence_columns.begin(),
                   concurrence_columns.end());
      Dataset b = select_columns(all, ccols);
      tag_panel(b, 6, "b");
      panels.push_back({"fig6b", std::move(b)});
      break;
    }

    case 7: {
      const char* names[4] = {"a", "b", "c", "d"};
      int idx = 0;
      for (const bool vs_omega : {true, false}) {
        for (const double theta : {0.0, 90.0}) {
          FixedParams f = figure_fixed(options);
          f.theta_t_deg = theta;
          SweepSpec s =
              vs_omega
                  ? figure_sweep(Axis::omega_over_B, 0.0, 4.0, options, f,
                                 {Quantity::thermal_concurrence})
                  : figure_sweep(Axis::coupling_over_B, 0.0, 5.0, options, f,
                                 {Quantity::thermal_concurrence});
          if (vs_omega)
            s.fixed.coupling_over_B = 0.8;
          else
            s.fixed.omega_over_B = 2.0;
          Dataset panel = run_sweep(s);
          tag_panel(panel, 7, names[idx]);
          panels.push_back({std::string("fig7") + names[idx], std::move(panel)});
          ++idx;
        }
      }
      break;
    }
  }
  return panels;
}

}  // namespace rotorpair
