// Command-line front end.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phislope/io.hpp"
#include "phislope.hpp"

namespace {

using namespace phislope;

std::string order_text(const std::optional<int>& o, int m) {
  return o ? std::to_string(*o) : "at-least-" + std::to_string(m);
}

int run_newton(const std::string& file) {
  const auto m = io::module_from_json(io::read_json_file(file));
  std::cout << newton_polygon(m).to_string() << '\n';
  return 0;
}

int run_hodge(const std::string& file) {
  const auto m = io::module_from_json(io::read_json_file(file));
  std::cout << "filtration: " << hodge_polygon(m).to_string() << '\n';
  std::cout << "matrix: " << hodge_polygon_from_matrix(m.frobenius()).to_string() << '\n';
  return 0;
}

int run_admissible(int r) {
  for (const auto& poly : enumerate_v1_slopes(r)) std::cout << poly.to_string() << '\n';
  return 0;
}

int run_classify(const CurveParams& cp, const std::string& file) {
  const auto m = io::module_from_json(io::read_json_file(file));
  const auto c = classify(m, cp);
  std::cout << "label=" << to_string(c.label) << " polygon=" << c.polygon.to_string() << '\n';
  return 0;
}

int run_display_verify(const std::string& file, bool as_json) {
  const auto in = io::display_from_json(io::read_json_file(file));
  const auto dd = deform(in.display, in.precision_t);
  const bool ss = in.display.supersingular();
  const auto hw = hasse_witt_order(dd);
  io::json rec{{"supersingular", ss}, {"hw_order", hw ? io::json(*hw) : io::json(nullptr)}};
  std::string sym2 = "n/a", lead = "n/a", check = "n/a";
  if (ss) {
    const auto rep = sym2_det_order(dd);
    sym2 = order_text(rep.order, in.precision_t);
    rec["sym2_order"] = rep.order ? io::json(*rep.order) : io::json(nullptr);
    if (rep.leading) {
      lead = io::to_json(*rep.leading).dump();
      rec["leading_coeff"] = io::to_json(*rep.leading);
    }
    if (in.display.r() == 2 && rep.leading) {
      const bool ok = rep.leading->residue_equal(sym2_leading_closed_form(in.display));
      check = ok ? "pass" : "fail";
      rec["leading_coeff_check"] = ok;
    }
  }
  if (as_json) {
    std::cout << rec.dump() << '\n';
  } else {
    std::cout << "supersingular=" << (ss ? "true" : "false") << '\n'
              << "hw_order=" << order_text(hw, in.precision_t) << '\n'
              << "sym2_order=" << sym2 << '\n'
              << "leading_coeff=" << lead << '\n'
              << "leading_coeff_check=" << check << '\n';
  }
  return 0;
}

int run_mass(i64 p, int r, i64 genus) {
  std::cout << mass_formula({p, r, genus, 2}) << '\n';
  return 0;
}

int run_simulate(const CurveParams& cp, std::int64_t samples, std::uint64_t seed, const std::string& force,
                 bool as_json) {
  SimulationOptions opt;
  if (force == "supersingular") opt.force_case = SlopeCase::supersingular;
  if (force == "ordinary") opt.force_case = SlopeCase::ordinary;
  const auto rep = simulate(cp, samples, seed, opt);
  std::cout << "samples=" << rep.samples << '\n';
  for (const auto& [poly, count] : rep.polygon_histogram) std::cout << "polygon=" << poly << " count=" << count << '\n';
  for (const auto& [label, count] : rep.label_histogram) std::cout << "label=" << label << " count=" << count << '\n';
  std::cout << "redraws=" << rep.redraws << '\n';
  std::cout << "anomalies=" << rep.anomalies.size() << '\n';
  for (const auto& a : rep.anomalies) std::cout << "anomaly=" << a << '\n';
  if (as_json) {
    io::json j{{"samples", rep.samples},
               {"polygon_histogram", rep.polygon_histogram},
               {"label_histogram", rep.label_histogram},
               {"redraws", rep.redraws},
               {"anomalies", rep.anomalies}};
    std::cout << j.dump() << '\n';
  }
  return rep.anomalies.empty() ? 0 : 1;
}

int run_realize(const std::string& which, const CurveParams& cp, int precision, bool global) {
  const SlopeCase c = which == "supersingular" ? SlopeCase::supersingular : SlopeCase::ordinary;
  const Ring ring = RingParams::make_default(cp.p, cp.r, precision);
  FilteredPhiModule m = realize_case(c, ring);
  if (global) {
    cp.validate();
    m = tensor(phi_ten(eigen_decompose(m)), unit_crystal(ring, static_cast<std::size_t>(cp.unit_rank())));
  }
  std::cout << io::to_json(m).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slopes of semilinear maps over truncated Witt rings"};
  app.require_subcommand(1);

  std::string file;
  int r = 1, d = 1, epsilon = 0, precision = 8;
  i64 p = 5, genus = 2, samples = 1;
  std::uint64_t seed = 1;
  bool as_json = false;
  std::string which = "supersingular", force;

  auto* newton = app.add_subcommand("newton", "Newton polygon of a module file");
  newton->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* hodge = app.add_subcommand("hodge", "Hodge polygons from the filtration and from the matrix");
  hodge->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* admissible = app.add_subcommand("admissible", "admissible Newton polygons of the rank-2r factor");
  admissible->add_option("--r", r)->required()->check(CLI::Range(1, 64));

  auto* cls = app.add_subcommand("classify", "classify a module against the two global polygons");
  cls->add_option("--d", d)->required();
  cls->add_option("--r", r)->required();
  cls->add_option("--epsilon", epsilon)->required();
  cls->add_option("--p", p);
  cls->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* disp = app.add_subcommand("display-verify", "vanishing orders along the deformation");
  disp->add_option("file", file)->required()->check(CLI::ExistingFile);
  disp->add_flag("--json", as_json);

  auto* mass = app.add_subcommand("mass", "number of supersingular points");
  mass->add_option("--p", p)->required();
  mass->add_option("--r", r)->required();
  mass->add_option("--genus", genus)->required();

  auto* sim = app.add_subcommand("simulate", "classify random members of the family");
  sim->add_option("--d", d)->required();
  sim->add_option("--r", r)->required();
  sim->add_option("--epsilon", epsilon)->required();
  sim->add_option("--samples", samples)->required();
  sim->add_option("--seed", seed);
  sim->add_option("--p", p);
  sim->add_option("--case", force)->check(CLI::IsMember({"supersingular", "ordinary"}));
  sim->add_flag("--json", as_json);

  auto* realize = app.add_subcommand("realize", "print the explicit rank-2r module of one slope case");
  realize->add_option("--case", which)->check(CLI::IsMember({"supersingular", "ordinary"}));
  realize->add_option("--p", p);
  realize->add_option("--r", r);
  realize->add_option("--precision", precision);
  bool global = false;
  realize->add_flag("--global", global, "apply the tensor construction and the unit crystal (uses --d, --epsilon)");
  realize->add_option("--d", d);
  realize->add_option("--epsilon", epsilon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const CurveParams cp{d, r, epsilon, p};
    if (*newton) return run_newton(file);
    if (*hodge) return run_hodge(file);
    if (*admissible) return run_admissible(r);
    if (*cls) return run_classify(cp, file);
    if (*disp) return run_display_verify(file, as_json);
    if (*mass) return run_mass(p, r, genus);
    if (*sim) return run_simulate(cp, samples, seed, force, as_json);
    if (*realize) return run_realize(which, cp, precision, global);
  } catch (const phislope::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == phislope::ErrorKind::precision_exhausted ? 2 : 1;
  }
  return 1;
}
