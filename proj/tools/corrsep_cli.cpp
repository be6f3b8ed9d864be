// Command-line front end over the corrsep C API.
//
// Exit codes: 0 success / not detected, 2 detected (detect only), 1 error.
// Machine output goes to stdout, diagnostics to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrsep/corrsep.h"

namespace {

using Json = nlohmann::json;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cs_status s) {
  if (s != CS_OK) throw Failure(std::string(cs_status_name(s)) + ": " + cs_last_error());
}

using StatePtr = std::unique_ptr<cs_state, decltype(&cs_state_destroy)>;
using WitnessPtr = std::unique_ptr<cs_witness, decltype(&cs_witness_destroy)>;

StatePtr own(cs_state* s) { return StatePtr(s, &cs_state_destroy); }

std::string take(char* s) {
  std::string out(s);
  cs_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw Failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StatePtr load_state(const std::string& path, bool rounded) {
  cs_state* s = nullptr;
  check(cs_state_from_json(read_text(path).c_str(), rounded ? 1 : 0, &s));
  return own(s);
}

const std::map<std::string, cs_criterion> kCriteria = {
    {"dv", CS_CRIT_DV},     {"ccnr", CS_CRIT_CCNR}, {"esic", CS_CRIT_ESIC},
    {"fei", CS_CRIT_FEI},   {"ppt", CS_CRIT_PPT},   {"filtered-dv", CS_CRIT_FILTERED_DV},
    {"family", CS_CRIT_POINT}};

// --x/--y select an explicit family member and take precedence over --criterion.
cs_criterion pick_criterion(const std::string& name, const std::optional<double>& x,
                            const std::optional<double>& y) {
  if (x || y) {
    if (!x || !y) throw Failure("--x and --y must be given together");
    return CS_CRIT_POINT;
  }
  auto it = kCriteria.find(name);
  if (it == kCriteria.end()) throw Failure("unknown criterion '" + name + "'");
  return it->second;
}

Json report_json(const cs_report& r) {
  return Json{{"criterion", r.criterion},
              {"params", std::vector<double>(r.params, r.params + r.n_params)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"gap", r.gap},
              {"detected", r.detected != 0}};
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<double> axis(double lo, double hi, int steps) {
  if (steps < 1) throw Failure("--steps must be positive");
  if (steps > 1 && !(hi > lo)) throw Failure("scan range must have positive length");
  std::vector<double> v;
  for (int i = 0; i < steps; ++i) {
    v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-tensor separability criteria"};
  app.require_subcommand(1);

  std::string state_path;
  std::string criterion = "ccnr";
  std::optional<double> x_opt;
  std::optional<double> y_opt;
  bool rounded = false;
  double x = 1, y = 1;

  // detect
  auto* detect = app.add_subcommand("detect", "Evaluate a criterion or a witness on a state");
  std::string witness_path;
  std::vector<double> xs_multi;
  std::string multi_method = "kyfan";
  detect->add_option("state", state_path, "State JSON file ('-' for stdin)")->required();
  detect->add_option("--criterion", criterion,
                     "dv, ccnr, esic, fei, ppt, filtered-dv, kyfan, nuclear");
  detect->add_option("--x", x_opt, "Scaling of party A");
  detect->add_option("--y", y_opt, "Scaling of party B");
  detect->add_option("--xs", xs_multi, "Per-party scalings (kyfan / nuclear)");
  detect->add_option("--witness", witness_path, "Evaluate this witness JSON instead");
  detect->add_flag("--rounded", rounded, "Accept matrices printed to ~4 decimals");

  // scan
  auto* scan = app.add_subcommand("scan", "Grid of family gaps f(x, y) as CSV");
  double xmin = 0, xmax = 10, ymin = 0, ymax = 10;
  int steps = 101;
  scan->add_option("state", state_path, "State JSON file ('-' for stdin)")->required();
  scan->add_option("--xmin", xmin);
  scan->add_option("--xmax", xmax);
  scan->add_option("--ymin", ymin);
  scan->add_option("--ymax", ymax);
  scan->add_option("--steps", steps, "Points per axis");
  scan->add_flag("--rounded", rounded);

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Noise threshold p* by bisection");
  std::string family;
  double tol = 1e-5;
  threshold->add_option("family", family, "pp, tiles or chessboard")->required();
  threshold->add_option("--criterion", criterion);
  threshold->add_option("--x", x_opt);
  threshold->add_option("--y", y_opt);
  threshold->add_option("--tol", tol, "Bisection bracket width");

  // state
  auto* state = app.add_subcommand("state", "Write a generated state as JSON");
  std::string generator;
  double r = 0, s = 0, t = 0;
  std::optional<double> p_opt;
  int n = 3, terms = 4;
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 2};
  state->add_option("generator", generator,
                    "rudolph, chessboard, pp, tiles, bell, ghz, w, mixed, random-product, "
                    "random-separable")
      ->required();
  state->add_option("--r", r);
  state->add_option("--s", s);
  state->add_option("--t", t);
  state->add_option("--p", p_opt, "White-noise mixing level");
  state->add_option("--n", n, "Number of qubits (ghz, w)");
  state->add_option("--dims", dims, "Subsystem dimensions");
  state->add_option("--terms", terms, "Product terms (random-separable)");
  state->add_option("--seed", seed);

  // witness
  auto* witness = app.add_subcommand("witness", "Build the witness for a state at (x, y)");
  witness->add_option("state", state_path)->required();
  witness->add_option("--x", x)->required();
  witness->add_option("--y", y)->required();
  witness->add_flag("--rounded", rounded);

  // filter
  auto* filter = app.add_subcommand("filter", "Local filtering to maximally mixed marginals");
  filter->add_option("state", state_path)->required();
  filter->add_flag("--rounded", rounded);

  // bases-validate
  auto* bases = app.add_subcommand("bases-validate", "Check orthonormality of the bases");
  std::vector<int> bases_dims{2, 3, 4};
  bases->add_option("--dims", bases_dims, "Dimensions to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (detect->parsed()) {
      StatePtr rho = load_state(state_path, rounded);
      cs_report rep{};
      Json out;
      if (!witness_path.empty()) {
        cs_witness* w = nullptr;
        check(cs_witness_from_json(read_text(witness_path).c_str(), &w));
        WitnessPtr wp(w, &cs_witness_destroy);
        double value = 0;
        check(cs_witness_expectation(w, rho.get(), &value));
        out = Json{{"criterion", "witness"}, {"value", value}, {"detected", value < -1e-10}};
        std::cerr << "witness: Tr(W rho) = " << value
                  << (value < -1e-10 ? "  entangled" : "  not detected") << "\n";
        print_json(out);
        return value < -1e-10 ? 2 : 0;
      }
      if (criterion == "kyfan" || criterion == "nuclear") {
        if (xs_multi.empty()) throw Failure("--xs is required for " + criterion);
        check(cs_multipartite(rho.get(), xs_multi.data(), static_cast<int>(xs_multi.size()),
                              criterion == "kyfan" ? CS_MULTI_KY_FAN : CS_MULTI_NUCLEAR_LB,
                              &rep));
      } else {
        const cs_criterion c = pick_criterion(criterion, x_opt, y_opt);
        check(cs_detect(rho.get(), c, x_opt.value_or(1), y_opt.value_or(1), &rep));
      }
      char line[256];
      std::snprintf(line, sizeof line, "%s: lhs = %.10g, rhs = %.10g, gap = %.6e  %s",
                    rep.criterion, rep.lhs, rep.rhs, rep.gap,
                    rep.detected ? "entangled" : "not detected");
      std::cerr << line << "\n";
      print_json(report_json(rep));
      return rep.detected ? 2 : 0;
    }

    if (scan->parsed()) {
      StatePtr rho = load_state(state_path, rounded);
      const std::vector<double> xv = axis(xmin, xmax, steps);
      const std::vector<double> yv = axis(ymin, ymax, steps);
      std::vector<double> gaps(xv.size() * yv.size());
      check(cs_scan(rho.get(), xv.data(), static_cast<int>(xv.size()), yv.data(),
                    static_cast<int>(yv.size()), gaps.data()));
      std::printf("x,y,f\n");
      for (std::size_t i = 0; i < xv.size(); ++i) {
        for (std::size_t k = 0; k < yv.size(); ++k) {
          std::printf("%.12g,%.12g,%.12g\n", xv[i], yv[k], gaps[i * yv.size() + k]);
        }
      }
      return 0;
    }

    if (threshold->parsed()) {
      const cs_criterion c = pick_criterion(criterion, x_opt, y_opt);
      double p_star = 1;
      int detected = 0;
      check(cs_threshold(family.c_str(), c, x_opt.value_or(1), y_opt.value_or(1), tol, &p_star,
                         &detected));
      const std::string label =
          c == CS_CRIT_POINT ? "family(" + std::to_string(*x_opt) + "," + std::to_string(*y_opt) + ")"
                             : criterion;
      if (detected) {
        std::printf("%s,%s,%.4f\n", family.c_str(), label.c_str(), p_star);
      } else {
        std::printf("%s,%s,none\n", family.c_str(), label.c_str());
      }
      return 0;
    }

    if (state->parsed()) {
      cs_state* out = nullptr;
      if (generator == "rudolph") {
        check(cs_state_rudolph(r, s, t, &out));
      } else if (generator == "chessboard") {
        check(cs_state_chessboard(p_opt.value_or(0.8062), &out));
      } else if (generator == "pp" || generator == "tiles") {
        check(cs_state_upb(generator.c_str(), p_opt.value_or(1.0), &out));
      } else if (generator == "bell") {
        check(cs_state_bell(&out));
      } else if (generator == "ghz") {
        check(cs_state_ghz(n, &out));
      } else if (generator == "w") {
        check(cs_state_w(n, &out));
      } else if (generator == "mixed") {
        check(cs_state_maximally_mixed(dims.data(), static_cast<int>(dims.size()), &out));
      } else if (generator == "random-product") {
        check(cs_state_random_product(dims.data(), static_cast<int>(dims.size()), seed, &out));
      } else if (generator == "random-separable") {
        check(cs_state_random_separable(dims.data(), static_cast<int>(dims.size()), terms, seed,
                                        &out));
      } else {
        throw Failure("unknown generator '" + generator + "'");
      }
      StatePtr owned = own(out);
      if (p_opt && generator != "chessboard" && generator != "pp" && generator != "tiles") {
        cs_state* mixed = nullptr;
        check(cs_state_mix_noise(owned.get(), *p_opt, &mixed));
        owned = own(mixed);
      }
      char* text = nullptr;
      check(cs_state_to_json(owned.get(), &text));
      std::cout << take(text) << "\n";
      return 0;
    }

    if (witness->parsed()) {
      StatePtr rho = load_state(state_path, rounded);
      cs_witness* w = nullptr;
      check(cs_witness_build(rho.get(), x, y, &w));
      WitnessPtr wp(w, &cs_witness_destroy);
      char* text = nullptr;
      check(cs_witness_to_json(w, &text));
      std::cout << take(text) << "\n";
      return 0;
    }

    if (filter->parsed()) {
      StatePtr rho = load_state(state_path, rounded);
      char* text = nullptr;
      check(cs_filter(rho.get(), &text));
      const Json j = Json::parse(take(text));
      std::cerr << "filter: residual = " << j.at("residual").get<double>()
                << " after " << j.at("iterations").get<int>() << " iterations\n";
      print_json(j);
      return 0;
    }

    if (bases->parsed()) {
      Json all = Json::array();
      for (int d : bases_dims) {
        for (const char* kind : {"canonical", "sic_minus", "sic_plus"}) {
          char* text = nullptr;
          check(cs_validate_basis(kind, d, &text));
          all.push_back(Json::parse(take(text)));
        }
      }
      print_json(all);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
