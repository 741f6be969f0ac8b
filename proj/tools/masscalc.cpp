#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "masscalc/errors.hpp"
#include "masscalc/json_io.hpp"

using namespace masscalc;

namespace {

int g_exit = 0;

struct CommonOpts {
  std::string format = "json";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  cmd->add_option("--output", o.output, "Write the report to a file instead of stdout");
}

void emit(const nlohmann::json& report, const CommonOpts& o) {
  std::string text;
  if (o.format == "json")
    text = report.dump(2) + "\n";
  else if (o.format == "csv")
    text = to_csv(report);
  else
    text = to_markdown(report);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output);
    if (!f) throw std::invalid_argument("cannot open output file '" + o.output + "'");
    f << text;
  }
}

FamilySpec parse_family(const std::string& name, int p, int k) {
  if (name == "exterior") return FamilySpec::exterior(p);
  if (name == "spin") return FamilySpec::spin();
  return FamilySpec::symmetric_traceless(k);
}

MetricChart parse_chart(const std::string& metric, int n, double M) {
  if (metric == "flat") return flat_chart(n);
  return schwarzschild_chart(n, M);
}

// Coefficient selection: "universal", "basis:<index>" (requires matrices),
// or an explicit comma-separated rational list.
CoefficientVector resolve_coeffs(const std::string& spec, const Decomposition& dec,
                                 const ProjectionSet* proj, int num_xi,
                                 unsigned long seed) {
  if (spec == "universal") return universal_vector(dec);
  if (spec.rfind("basis:", 0) == 0) {
    if (!proj)
      throw std::invalid_argument("basis coefficients are not available for this subcommand");
    const int idx = std::stoi(spec.substr(6));
    const WeitzenbockBasis basis = weitzenbock_basis(*proj, dec, num_xi, seed);
    if (idx < 0 || idx >= static_cast<int>(basis.basis.size()))
      throw std::invalid_argument("basis index out of range");
    const BasisVector& vec = basis.basis[static_cast<size_t>(idx)];
    if (!vec.exact)
      throw std::invalid_argument(
          "basis vector has no exact rational form; pass explicit coefficients");
    return CoefficientVector{vec.rational};
  }
  CoefficientVector out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.coeffs.push_back(Rational::parse(item));
  if (out.size() != dec.size())
    throw std::invalid_argument("expected " + std::to_string(dec.size()) +
                                " coefficients, got " + std::to_string(out.size()));
  return out;
}

struct RepBundle {
  MatrixRep rep;
  Decomposition dec;
  ProjectionSet proj;
};

RepBundle build_bundle(int n, const FamilySpec& fam) {
  MatrixRep rep = build_rep(n, fam);
  Decomposition dec = decompose(fam.weight(n));
  ProjectionSet proj = build_projections(build_B(rep), dec);
  return RepBundle{std::move(rep), std::move(dec), std::move(proj)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation decompositions, Weitzenbock coefficient spaces, and "
               "asymptotically flat mass integrals"};
  app.require_subcommand(1);

  // decompose / casimir
  struct WeightArgs {
    int n = 0;
    std::string weight;
    CommonOpts common;
  };
  auto dec_args = std::make_shared<WeightArgs>();
  CLI::App* dec_cmd = app.add_subcommand("decompose", "Split R^n (x) V into irreducibles");
  dec_cmd->add_option("--n", dec_args->n, "Ambient dimension")->required();
  dec_cmd->add_option("--weight", dec_args->weight, "Dominant weight, e.g. 1,1 or 1/2,1/2")
      ->required();
  add_common(dec_cmd, dec_args->common);
  dec_cmd->callback([dec_args] {
    const Decomposition dec =
        decompose(DominantWeight::parse(dec_args->n, dec_args->weight));
    emit(decomposition_report(dec), dec_args->common);
  });

  auto cas_args = std::make_shared<WeightArgs>();
  CLI::App* cas_cmd = app.add_subcommand("casimir", "Casimir number and dimension");
  cas_cmd->add_option("--n", cas_args->n, "Ambient dimension")->required();
  cas_cmd->add_option("--weight", cas_args->weight, "Dominant weight")->required();
  add_common(cas_cmd, cas_args->common);
  cas_cmd->callback([cas_args] {
    emit(casimir_report(DominantWeight::parse(cas_args->n, cas_args->weight)),
         cas_args->common);
  });

  // weitzenbock
  struct WbArgs {
    int n = 0;
    std::string weight;
    int num_xi = 6;
    unsigned long seed = 12345;
    CommonOpts common;
  };
  auto wb_args = std::make_shared<WbArgs>();
  CLI::App* wb_cmd =
      app.add_subcommand("weitzenbock", "Basis of vanishing-symbol coefficient vectors");
  wb_cmd->add_option("--n", wb_args->n)->required();
  wb_cmd->add_option("--weight", wb_args->weight)->required();
  wb_cmd->add_option("--num-xi", wb_args->num_xi, "Random symbol directions");
  wb_cmd->add_option("--seed", wb_args->seed, "Random direction seed");
  add_common(wb_cmd, wb_args->common);
  wb_cmd->callback([wb_args] {
    const DominantWeight w = DominantWeight::parse(wb_args->n, wb_args->weight);
    const auto fam = family_for_weight(w);
    if (!fam)
      throw CapabilityError("no matrix model for weight " + w.str() +
                            "; supported families: exterior, spin, symmetric traceless");
    const RepBundle bundle = build_bundle(wb_args->n, *fam);
    const WeitzenbockBasis basis =
        weitzenbock_basis(bundle.proj, bundle.dec, wb_args->num_xi, wb_args->seed);
    emit(weitzenbock_report(bundle.dec, basis), wb_args->common);
    if (basis.dimension_anomaly) g_exit = 2;
  });

  // mu
  struct MuArgs {
    int n = 0;
    std::string weight;
    std::string coeffs;
    int num_xi = 6;
    unsigned long seed = 12345;
    CommonOpts common;
  };
  auto mu_args = std::make_shared<MuArgs>();
  CLI::App* mu_cmd = app.add_subcommand("mu", "Mass coefficient of a Weitzenbock formula");
  mu_cmd->add_option("--n", mu_args->n)->required();
  mu_cmd->add_option("--weight", mu_args->weight)->required();
  mu_cmd->add_option("--coeffs", mu_args->coeffs,
                     "Comma-separated rationals, 'universal', or 'basis:<k>'")
      ->required();
  mu_cmd->add_option("--num-xi", mu_args->num_xi);
  mu_cmd->add_option("--seed", mu_args->seed);
  add_common(mu_cmd, mu_args->common);
  mu_cmd->callback([mu_args] {
    const DominantWeight w = DominantWeight::parse(mu_args->n, mu_args->weight);
    const Decomposition dec = decompose(w);
    std::optional<RepBundle> bundle;
    if (mu_args->coeffs.rfind("basis:", 0) == 0) {
      const auto fam = family_for_weight(w);
      if (!fam) throw CapabilityError("no matrix model for weight " + w.str());
      bundle = build_bundle(mu_args->n, *fam);
    }
    const CoefficientVector a =
        resolve_coeffs(mu_args->coeffs, dec, bundle ? &bundle->proj : nullptr,
                       mu_args->num_xi, mu_args->seed);
    emit(mu_report(dec, a), mu_args->common);
  });

  // classify
  struct ClassifyArgs {
    int n = 0;
    std::string weight;
    std::string coeffs;
    bool check_span = false;
    int num_xi = 6;
    unsigned long seed = 12345;
    CommonOpts common;
  };
  auto cl_args = std::make_shared<ClassifyArgs>();
  CLI::App* cl_cmd =
      app.add_subcommand("classify", "Sign of mu(a) and the P+/P- coefficient split");
  cl_cmd->add_option("--n", cl_args->n)->required();
  cl_cmd->add_option("--weight", cl_args->weight)->required();
  cl_cmd->add_option("--coeffs", cl_args->coeffs)->required();
  cl_cmd->add_flag("--check-span", cl_args->check_span,
                   "Also verify membership in the vanishing-symbol space");
  cl_cmd->add_option("--num-xi", cl_args->num_xi);
  cl_cmd->add_option("--seed", cl_args->seed);
  add_common(cl_cmd, cl_args->common);
  cl_cmd->callback([cl_args] {
    const DominantWeight w = DominantWeight::parse(cl_args->n, cl_args->weight);
    const Decomposition dec = decompose(w);
    std::optional<RepBundle> bundle;
    std::optional<WeitzenbockBasis> basis;
    if (cl_args->check_span || cl_args->coeffs.rfind("basis:", 0) == 0) {
      const auto fam = family_for_weight(w);
      if (!fam) throw CapabilityError("no matrix model for weight " + w.str());
      bundle = build_bundle(cl_args->n, *fam);
      if (cl_args->check_span)
        basis = weitzenbock_basis(bundle->proj, dec, cl_args->num_xi, cl_args->seed);
    }
    const CoefficientVector a =
        resolve_coeffs(cl_args->coeffs, dec, bundle ? &bundle->proj : nullptr,
                       cl_args->num_xi, cl_args->seed);
    const ClassifyReport rep = classify(dec, a, basis ? &*basis : nullptr);
    emit(classification_report(dec, a, rep), cl_args->common);
    if (rep.span_checked && !rep.in_span) g_exit = 2;
  });

  // verify-rep
  struct VerifyArgs {
    int n = 0;
    std::string family;
    int p = 1;
    int k = 2;
    int num_xi = 8;
    unsigned long seed = 12345;
    CommonOpts common;
  };
  auto vr_args = std::make_shared<VerifyArgs>();
  CLI::App* vr_cmd =
      app.add_subcommand("verify-rep", "Spectral cross-check suite for one family");
  vr_cmd->add_option("--n", vr_args->n)->required();
  vr_cmd->add_option("--family", vr_args->family)
      ->check(CLI::IsMember({"exterior", "spin", "symmetric-traceless"}))
      ->required();
  vr_cmd->add_option("--p", vr_args->p, "Exterior power");
  vr_cmd->add_option("--k", vr_args->k, "Symmetric degree");
  vr_cmd->add_option("--num-xi", vr_args->num_xi);
  vr_cmd->add_option("--seed", vr_args->seed);
  add_common(vr_cmd, vr_args->common);
  vr_cmd->callback([vr_args] {
    const RepVerification v =
        verify_rep(vr_args->n, parse_family(vr_args->family, vr_args->p, vr_args->k),
                   vr_args->num_xi, vr_args->seed);
    emit(verification_report(v), vr_args->common);
    if (!v.all_passed) g_exit = 2;
  });

  // mass
  struct MassArgs {
    std::string metric = "schwarzschild";
    int n = 3;
    double M = 1.0;
    std::vector<double> radii;
    int order = 16;
    CommonOpts common;
  };
  auto mass_args = std::make_shared<MassArgs>();
  CLI::App* mass_cmd = app.add_subcommand("mass", "ADM mass integrals over spheres");
  mass_cmd->add_option("--metric", mass_args->metric)
      ->check(CLI::IsMember({"flat", "schwarzschild"}));
  mass_cmd->add_option("--n", mass_args->n)->required();
  mass_cmd->add_option("--M", mass_args->M, "Mass parameter");
  mass_cmd->add_option("--radii", mass_args->radii, "Sphere radii")
      ->delimiter(',')
      ->required();
  mass_cmd->add_option("--order", mass_args->order, "Quadrature order");
  add_common(mass_cmd, mass_args->common);
  mass_cmd->callback([mass_args] {
    const MetricChart chart = parse_chart(mass_args->metric, mass_args->n, mass_args->M);
    const MassReport rep = mass_quadrature(chart, mass_args->radii, mass_args->order);
    emit(mass_report_json(rep, mass_args->n, mass_args->order), mass_args->common);
    if (rep.flagged) g_exit = 2;
  });

  // boundary / theorem-check share their argument block
  struct BoundaryArgs {
    std::string metric = "schwarzschild";
    int n = 3;
    double M = 1.0;
    std::string family;
    int p = 1;
    int k = 2;
    std::string coeffs = "universal";
    std::vector<double> radii;
    int order = 16;
    bool exact_frame = false;
    int num_xi = 6;
    unsigned long seed = 12345;
    double tol = 0.01;
    CommonOpts common;
  };
  const auto add_boundary_options = [](CLI::App* cmd, BoundaryArgs& a) {
    cmd->add_option("--metric", a.metric)->check(CLI::IsMember({"flat", "schwarzschild"}));
    cmd->add_option("--n", a.n)->required();
    cmd->add_option("--M", a.M, "Mass parameter");
    cmd->add_option("--family", a.family)
        ->check(CLI::IsMember({"exterior", "spin", "symmetric-traceless"}))
        ->required();
    cmd->add_option("--p", a.p, "Exterior power");
    cmd->add_option("--k", a.k, "Symmetric degree");
    cmd->add_option("--coeffs", a.coeffs,
                    "Comma-separated rationals, 'universal', or 'basis:<k>'");
    cmd->add_option("--radii", a.radii)->delimiter(',')->required();
    cmd->add_option("--order", a.order, "Quadrature order");
    cmd->add_flag("--exact-frame", a.exact_frame,
                  "Integrate with the metric frame, normal, and volume");
    cmd->add_option("--num-xi", a.num_xi);
    cmd->add_option("--seed", a.seed);
  };

  auto bd_args = std::make_shared<BoundaryArgs>();
  CLI::App* bd_cmd =
      app.add_subcommand("boundary", "Boundary pairing of the mass formula over spheres");
  add_boundary_options(bd_cmd, *bd_args);
  add_common(bd_cmd, bd_args->common);
  bd_cmd->callback([bd_args] {
    const FamilySpec fam = parse_family(bd_args->family, bd_args->p, bd_args->k);
    const MetricChart chart = parse_chart(bd_args->metric, bd_args->n, bd_args->M);
    const RepBundle bundle = build_bundle(bd_args->n, fam);
    const CoefficientVector a = resolve_coeffs(bd_args->coeffs, bundle.dec, &bundle.proj,
                                               bd_args->num_xi, bd_args->seed);
    const MassReport rep =
        boundary_term_report(chart, bundle.rep, bundle.proj, a, bd_args->radii,
                             bd_args->order, bd_args->exact_frame);
    emit(boundary_report_json(rep, bd_args->n, fam.str(), a, bd_args->order,
                              bd_args->exact_frame),
         bd_args->common);
    if (rep.flagged) g_exit = 2;
  });

  auto tc_args = std::make_shared<BoundaryArgs>();
  CLI::App* tc_cmd = app.add_subcommand(
      "theorem-check", "Extrapolated boundary term over extrapolated mass against mu(a)");
  add_boundary_options(tc_cmd, *tc_args);
  tc_cmd->add_option("--tol", tc_args->tol, "Relative deviation tolerance");
  add_common(tc_cmd, tc_args->common);
  tc_cmd->callback([tc_args] {
    const FamilySpec fam = parse_family(tc_args->family, tc_args->p, tc_args->k);
    const MetricChart chart = parse_chart(tc_args->metric, tc_args->n, tc_args->M);
    const RepBundle bundle = build_bundle(tc_args->n, fam);
    const CoefficientVector a = resolve_coeffs(tc_args->coeffs, bundle.dec, &bundle.proj,
                                               tc_args->num_xi, tc_args->seed);
    const MassReport mass = mass_quadrature(chart, tc_args->radii, tc_args->order);
    const MassReport bnd =
        boundary_term_report(chart, bundle.rep, bundle.proj, a, tc_args->radii,
                             tc_args->order, tc_args->exact_frame);
    const Rational mu = mass_coefficient(bundle.dec, a);
    const nlohmann::json report = theorem_report(
        mass_report_json(mass, tc_args->n, tc_args->order),
        boundary_report_json(bnd, tc_args->n, fam.str(), a, tc_args->order,
                             tc_args->exact_frame),
        mu, tc_args->tol);
    emit(report, tc_args->common);
    if (!report.at("passed").get<bool>()) g_exit = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
