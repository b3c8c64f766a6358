#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mmspace/bench.h"
#include "mmspace/error.h"
#include "mmspace/family.h"
#include "mmspace/json_io.h"
#include "mmspace/separation.h"
#include "mmspace/spectral.h"
#include "mmspace/transport.h"

namespace mmspace {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, const std::string& separators) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (separators.find(c) != std::string::npos) {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_scalar(const std::string& token) {
  auto plain = [&token](const std::string& s) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + token + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + token + "'");
    return v;
  };
  const auto slash = token.find('/');
  if (slash == std::string::npos) return plain(token);
  const double den = plain(token.substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator: '" + token + "'");
  return plain(token.substr(0, slash)) / den;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  for (const std::string& t : split(text, ",")) {
    if (t.empty()) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(parse_scalar(t));
  }
  return out;
}

std::vector<int> parse_indices(const Space& space, const std::string& text) {
  std::vector<int> out;
  for (const std::string& t : split(text, ",")) {
    const double v = parse_scalar(t);
    if (v != std::floor(v) || v < 0 || v >= space.size()) {
      throw UsageError("bad point index '" + t + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// Sets are separated by '/' or ';', members by ','.
std::vector<Subset> parse_sets(const Space& space, const std::string& text) {
  std::vector<Subset> sets;
  for (const std::string& part : split(text, "/;")) {
    sets.push_back(Subset::from_indices(space, parse_indices(space, part)));
  }
  return sets;
}

// "mu", "delta:i", "set:i,j,..." (normalized restriction of mu) or a
// comma-separated weight list.
Measure parse_measure(const Space& space, const std::string& text) {
  if (text == "mu") return Measure::reference(space);
  if (text.rfind("delta:", 0) == 0) {
    const auto idx = parse_indices(space, text.substr(6));
    if (idx.size() != 1) throw UsageError("delta takes one index");
    return Measure::delta(space, idx[0]);
  }
  if (text.rfind("set:", 0) == 0) {
    return restrict_normalize(space,
                              Subset::from_indices(space, parse_indices(space, text.substr(4))));
  }
  std::vector<double> w = parse_numbers(text);
  if (static_cast<int>(w.size()) != space.size()) {
    throw UsageError("measure has " + std::to_string(w.size()) + " weights, space has " +
                     std::to_string(space.size()) + " points");
  }
  return Measure::from_weights(std::move(w));
}

Json weights_json(const Measure& m) {
  return Json(std::vector<double>(m.weights().begin(), m.weights().end()));
}

struct Io {
  std::string space_path;
  std::string out_path;
};

class Tool {
 public:
  Tool(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  void add_io(CLI::App* sub, bool reads_space = true) {
    if (reads_space) {
      sub->add_option("--space", io_.space_path, "Space JSON file (default: stdin)");
    }
    sub->add_option("--out", io_.out_path, "Write output here instead of stdout");
  }

  Space load_space() const {
    if (!io_.space_path.empty()) return read_space(io_.space_path);
    Json doc;
    try {
      doc = Json::parse(in_);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("could not parse space JSON on stdin: ") + e.what());
    }
    return space_from_json(doc);
  }

  void emit(const Json& value) const {
    const std::string text = canonical_dump(value);
    if (io_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(io_.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + io_.out_path);
    file << text;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  Io io_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite metric measure space toolkit", "mmtool"};
  app.require_subcommand(1);
  Tool tool(in, out);
  std::vector<std::pair<CLI::App*, std::function<int()>>> actions;

  // gen
  std::string kind;
  FamilyParams params;
  {
    auto* sub = app.add_subcommand("gen", "Generate a space from a named family");
    sub->add_option("kind", kind, "two_point, cycle, path, torus, hypercube or random")->required();
    sub->add_option("--d", params.d, "two_point distance");
    sub->add_option("--n", params.n, "point count");
    sub->add_option("--n1", params.n1, "torus side");
    sub->add_option("--n2", params.n2, "torus side");
    sub->add_option("--dim", params.dim, "hypercube dimension");
    sub->add_option("--seed", params.seed, "random seed");
    sub->add_flag("--random-mu", params.random_mu, "random weights (random kind)");
    tool.add_io(sub, false);
    actions.emplace_back(sub, [&] {
      tool.emit(space_to_json(family(kind, params)));
      return 0;
    });
  }

  // sep
  std::string kappas_text;
  bool heuristic = false;
  int exact_limit = kDefaultExactLimit;
  {
    auto* sub = app.add_subcommand("sep", "Separation distance with a witnessing family");
    sub->add_option("--kappas", kappas_text, "comma-separated kappas")->required();
    sub->add_flag("--heuristic", heuristic, "greedy lower bound instead of exact search");
    sub->add_option("--limit", exact_limit, "largest space searched exactly");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      SeparationOptions options;
      options.mode = heuristic ? SepMode::kHeuristic : SepMode::kExact;
      options.exact_limit = exact_limit;
      tool.emit(certificate_to_json(
          separation_distance(space, parse_numbers(kappas_text), options)));
      return 0;
    });
  }

  // conc
  std::string r_text;
  {
    auto* sub = app.add_subcommand("conc", "Concentration function at radius r");
    sub->add_option("--r", r_text, "radius")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const ConcentrationValue v = concentration_function(space, parse_scalar(r_text));
      tool.emit(Json{{"r", v.r}, {"alpha", v.alpha}, {"witness", v.witness.indices()}});
      return 0;
    });
  }

  // levy
  std::string kappa_text;
  {
    auto* sub = app.add_subcommand("levy", "Certified bounds on the Levy radius");
    sub->add_option("--kappa", kappa_text, "level in (0, 1)")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const LevyInterval v = levy_radius_bounds(space, parse_scalar(kappa_text));
      tool.emit(Json{{"kappa", v.kappa}, {"lower", v.lower}, {"upper", v.upper}});
      return 0;
    });
  }

  // Measure pair shared by w2, prohorov, transport, cd.
  std::string nu0_text = "mu";
  std::string nu1_text = "mu";
  auto add_measures = [&](CLI::App* sub, bool required) {
    auto* a = sub->add_option("--nu0", nu0_text, "mu, delta:i, set:i,j,... or weights");
    auto* b = sub->add_option("--nu1", nu1_text, "mu, delta:i, set:i,j,... or weights");
    if (required) {
      a->required();
      b->required();
    }
  };

  {
    auto* sub = app.add_subcommand("w2", "L2-Wasserstein distance and optimal coupling");
    add_measures(sub, true);
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const W2Result r = wasserstein2(space, parse_measure(space, nu0_text),
                                      parse_measure(space, nu1_text));
      tool.emit(Json{{"value", r.value}, {"plan", plan_to_json(r.plan)}});
      return 0;
    });
  }

  std::string lambda_text;
  {
    auto* sub = app.add_subcommand("prohorov", "Prohorov distance di_lambda(nu0, nu1)");
    sub->add_option("--lambda", lambda_text, "lambda > 0")->required();
    add_measures(sub, false);
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const double lambda = parse_scalar(lambda_text);
      tool.emit(Json{{"lambda", lambda},
                     {"value", prohorov(space, parse_measure(space, nu0_text),
                                        parse_measure(space, nu1_text), lambda)}});
      return 0;
    });
  }
  {
    auto* sub = app.add_subcommand("transport", "Transportation distance tra_lambda(nu0, nu1)");
    sub->add_option("--lambda", lambda_text, "lambda > 0")->required();
    add_measures(sub, false);
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const double lambda = parse_scalar(lambda_text);
      const TransportDistance r = transportation_distance(
          space, parse_measure(space, nu0_text), parse_measure(space, nu1_text), lambda);
      tool.emit(Json{{"lambda", lambda}, {"value", r.value}, {"plan", plan_to_json(r.plan)}});
      return 0;
    });
  }

  std::string nu_text;
  {
    auto* sub = app.add_subcommand("entropy", "Relative entropy of nu with respect to mu");
    sub->add_option("--nu", nu_text, "mu, delta:i, set:i,j,... or weights")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const Measure nu = parse_measure(space, nu_text);
      tool.emit(Json{{"nu", weights_json(nu)}, {"value", relative_entropy(space, nu)}});
      return 0;
    });
  }

  std::string tgrid_text = "0,0.25,0.5,0.75,1";
  std::string curvature_text = "0";
  {
    auto* sub = app.add_subcommand("cd", "Entropy convexity diagnostic along an interpolation");
    add_measures(sub, true);
    sub->add_option("--K", curvature_text, "curvature bound");
    sub->add_option("--tgrid", tgrid_text, "interpolation times in [0, 1]");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const CheckReport report = cd_convexity_check(
          space, parse_measure(space, nu0_text), parse_measure(space, nu1_text),
          parse_scalar(curvature_text), parse_numbers(tgrid_text));
      tool.emit(report_to_json(report, false));
      return report.passed() ? 0 : 1;
    });
  }

  // spectral
  int kmax = -1;
  {
    auto* sub = app.add_subcommand("spectrum", "Eigenvalues of the weighted Laplacian");
    sub->add_option("--kmax", kmax, "emit lambda_0 .. lambda_kmax");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      tool.emit(spectrum_to_json(spectrum(space), kmax < 0 ? -1 : kmax + 1));
      return 0;
    });
  }

  std::string t_text;
  std::optional<int> hx, hy;
  {
    auto* sub = app.add_subcommand("heatkernel", "Heat kernel p_t(x, y) as (x, y, value) triples");
    sub->add_option("--t", t_text, "time > 0")->required();
    sub->add_option("--x", hx, "restrict to this source point");
    sub->add_option("--y", hy, "restrict to this target point");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const HeatKernel p = heat_kernel(space, parse_scalar(t_text));
      Json triples = Json::array();
      for (int x = 0; x < space.size(); ++x) {
        if (hx && *hx != x) continue;
        for (int y = 0; y < space.size(); ++y) {
          if (hy && *hy != y) continue;
          triples.push_back(Json{x, y, p.values(x, y)});
        }
      }
      if (triples.empty()) throw UsageError("no point matches --x/--y");
      tool.emit(Json{{"t", p.t}, {"values", std::move(triples)}});
      return 0;
    });
  }

  std::string a_text, b_text;
  std::string dg_grid = "0.1,1";
  {
    auto* sub = app.add_subcommand("dg", "Davies-Gaffney heat kernel diagnostic");
    sub->add_option("--A", a_text, "indices of A")->required();
    sub->add_option("--B", b_text, "indices of B")->required();
    sub->add_option("--tgrid", dg_grid, "times");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const CheckReport report = davies_gaffney_check(
          space, Subset::from_indices(space, parse_indices(space, a_text)),
          Subset::from_indices(space, parse_indices(space, b_text)), parse_numbers(dg_grid));
      tool.emit(report_to_json(report, false));
      return 0;
    });
  }

  std::string sets_text;
  {
    auto* sub = app.add_subcommand("cgy", "Empirical constant of the k = l eigenvalue bound");
    sub->add_option("--sets", sets_text, "sets separated by '/', members by ','")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const auto sets = parse_sets(space, sets_text);
      tool.emit(Json{{"k", static_cast<int>(sets.size()) - 1},
                     {"c_emp", cgy_constant(space, sets)}});
      return 0;
    });
  }

  int order = 0;
  {
    auto* sub = app.add_subcommand("thm1", "Empirical constant of the eigenvalue bound at order k");
    sub->add_option("--sets", sets_text, "sets separated by '/', members by ','")->required();
    sub->add_option("--k", order, "eigenvalue index")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const auto sets = parse_sets(space, sets_text);
      tool.emit(Json{{"k", order},
                     {"l", static_cast<int>(sets.size()) - 1},
                     {"c_emp", thm1_constant(space, sets, order)}});
      return 0;
    });
  }

  {
    auto* sub = app.add_subcommand("ratios", "Consecutive eigenvalue ratios");
    sub->add_option("--kmax", kmax, "largest k in lambda_{k+1} / lambda_k")->required();
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const Spectrum spec = spectrum(space);
      tool.emit(Json{{"space", space.name()},
                     {"kmax", kmax},
                     {"eigenvalues", spectrum_to_json(spec, kmax + 2)["eigenvalues"]},
                     {"ratios", eigen_ratio_probe(spec, kmax)}});
      return 0;
    });
  }

  std::string grid_text;
  {
    auto* sub = app.add_subcommand("probe32", "Separation-reduction probe (k vs k+1 sets)");
    sub->add_option("--k", order, "number of sets k >= 2")->required();
    sub->add_option("--grid", grid_text, "kappa grid in (0, 1/2); default: atom partial sums");
    tool.add_io(sub);
    actions.emplace_back(sub, [&] {
      const Space space = tool.load_space();
      const std::vector<double> grid =
          grid_text.empty() ? default_kappa_grid(space) : parse_numbers(grid_text);
      Json doc = probe_to_json(sep_reduction_probe(space, order, grid));
      doc["space"] = space.name();
      tool.emit(doc);
      return 0;
    });
  }

  std::string suite;
  SuiteConfig config;
  std::string lambdas_text, cycles_text;
  bool no_runtime = false;
  {
    auto* sub = app.add_subcommand("verify", "Run a verification suite");
    sub->add_option("suite", suite, "suite name")->required();
    sub->add_option("--seeds", config.seeds, "instances per randomized suite");
    sub->add_option("--base-seed", config.base_seed, "first seed");
    sub->add_option("--lambdas", lambdas_text, "lambda values for strassen");
    sub->add_option("--cycles", cycles_text, "cycle sizes for cgy_family and cd_diagnostic");
    sub->add_flag("--no-runtime", no_runtime, "omit runtime_ms from the report");
    tool.add_io(sub, false);
    actions.emplace_back(sub, [&] {
      if (!lambdas_text.empty()) config.lambdas = parse_numbers(lambdas_text);
      if (!cycles_text.empty()) {
        config.cycle_sizes.clear();
        for (double v : parse_numbers(cycles_text)) config.cycle_sizes.push_back(static_cast<int>(v));
      }
      const CheckReport report = verify_suite(suite, config);
      tool.emit(report_to_json(report, !no_runtime));
      return report.passed() ? 0 : 1;
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [sub, action] : actions) {
      if (sub->parsed()) return action();
    }
  } catch (const UsageError& e) {
    err << "mmtool: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "mmtool: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "mmtool: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace mmspace
