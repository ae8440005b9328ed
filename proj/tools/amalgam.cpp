// amalgam: norms, operators and verification suites from the command line.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "amalgam/amalgam.hpp"
#include "amalgam/config.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/harness.hpp"
#include "amalgam/operators.hpp"
#include "json.hpp"

namespace {

using namespace amalgam;
using nlohmann::json;

// "name" or "name:key=v1,v2:key=v"
FieldSpec parse_field(const std::string& text) {
  FieldSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream items(text.substr(colon + 1));
  std::string item;
  while (std::getline(items, item, ':')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("field parameter '" + item + "' needs key=value");
    std::vector<double> vals;
    std::stringstream vs(item.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(v, &used));
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw DomainError("field parameter '" + item + "' is not numeric");
      }
    }
    spec.params[item.substr(0, eq)] = vals;
  }
  return spec;
}

Grid load_grid(const std::string& path) {
  const Config cfg = load_config(path);
  const std::vector<Interval> bounds = cfg.intervals("grid.bounds", {});
  std::vector<long long> counts;
  for (double c : cfg.numbers("grid.counts", {})) {
    if (c != std::floor(c)) throw DomainError("invalid config: grid.counts must be integers");
    counts.push_back(static_cast<long long>(c));
  }
  return make_grid(bounds, counts);
}

Exponents exponents(const std::vector<double>& v, int n) {
  std::vector<double> w = v;
  if (w.size() == 1 && n > 1) w.assign(static_cast<std::size_t>(n), w.front());
  if (static_cast<int>(w.size()) != n) {
    throw DomainError("exponent list must have " + std::to_string(n) + " entries");
  }
  return Exponents(w.begin(), w.end());
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

void write_csv(const GridFunction& f, std::ostream& out) {
  const Grid& g = f.grid();
  for (int a = 0; a < g.dim(); ++a) out << "x" << (a + 1) << ",";
  out << (f.is_complex() ? "re,im\n" : "value\n");
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = g.midpoint(i);
    for (int a = 0; a < g.dim(); ++a) {
      put(x[a]);
      out << ",";
    }
    put(f.real(i));
    if (f.is_complex()) {
      out << ",";
      put(f.imag(i));
    }
    out << "\n";
  }
}

template <class Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  fn(out);
}

std::vector<SuiteReport> read_reports(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DomainError("not a directory: '" + dir + "'");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SuiteReport> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(SuiteReport::from_json(ss.str()));
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amalgam norms, fractional operators and verification suites"};
  app.require_subcommand(1);

  // norm
  auto* norm = app.add_subcommand("norm", "Print an amalgam norm of a sampled field as JSON");
  std::string grid_file, field_text;
  std::vector<double> p_list, s_list, radii;
  double alpha = 0.0;
  bool discrete = false;
  norm->add_option("--grid", grid_file, "TOML file with grid.bounds and grid.counts")->required();
  norm->add_option("--field", field_text, "name or name:key=v1,v2:key=v")->required();
  norm->add_option("--p", p_list, "local exponents")->required()->delimiter(',');
  norm->add_option("--s", s_list, "global exponents")->required()->delimiter(',');
  norm->add_option("--alpha", alpha, "scale index; omit for the plain amalgam norm");
  norm->add_option("--radii", radii, "window radii (cube sides with --discrete)")->delimiter(',');
  norm->add_flag("--discrete", discrete, "cube lattice instead of ball windows");

  // apply
  auto* apply = app.add_subcommand("apply", "Apply an operator and write CSV samples");
  std::string op, apply_grid, apply_field, b_field, out_path, variant = "uncentered";
  double gamma = 0.5, t = 2.0, r = 2.0, st_alpha = 2.0;
  std::vector<double> apply_radii;
  apply->add_option("--op", op, "igamma, mgamma, commutator, dilate or st")
      ->required()
      ->check(CLI::IsMember({"igamma", "mgamma", "commutator", "dilate", "st"}));
  apply->add_option("--grid", apply_grid, "TOML grid file")->required();
  apply->add_option("--field", apply_field, "input field, name:key=v1,v2:key=v")->required();
  apply->add_option("--b", b_field, "commutator symbol field");
  apply->add_option("--gamma", gamma, "order of I_gamma / M_gamma");
  apply->add_option("--t", t, "dilation factor for delta_t");
  apply->add_option("--r", r, "dyadic scale for St_r");
  apply->add_option("--alpha", st_alpha, "scale index for St_r");
  apply->add_option("--radii", apply_radii, "M_gamma radius sweep")->delimiter(',');
  apply->add_option("--variant", variant, "M_gamma variant")
      ->check(CLI::IsMember({"centered", "uncentered"}));
  apply->add_option("--out", out_path, "CSV path (stdout if omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, config_path, verify_out;
  long long seed = -1;
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--config", config_path, "TOML config");
  verify->add_option("--seed", seed, "seed override");
  verify->add_option("--out", verify_out, "report path (stdout if omitted)");

  // report
  auto* report = app.add_subcommand("report", "Aggregate suite reports");
  std::string in_dir, format = "csv", report_out;
  report->add_option("--in", in_dir, "directory of report JSON files")->required();
  report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", report_out, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*norm) {
      const Grid g = load_grid(grid_file);
      const GridFunction f = sample(parse_field(field_text), g);
      const int n = g.dim();
      const Exponents p = exponents(p_list, n);
      const Exponents s = exponents(s_list, n);
      json out;
      if (norm->count("--alpha")) {
        const ExponentSystem sys = validate_exponents(p, s, alpha, n);
        RadiusSweep sweep = radii.empty() ? RadiusSweep::dyadic(-2, 2) : RadiusSweep{radii};
        sweep.validate();
        const SupResult res = discrete ? discrete_alpha_norm(f, sys, sweep)
                                       : alpha_amalgam_norm(f, sys, sweep);
        out["norm"] = discrete ? "discrete-alpha" : "alpha";
        out["value"] = number(res.value);
        out["argmax"] = res.argmax;
        out["radii"] = sweep.radii;
        json terms = json::array();
        for (double x : res.terms) terms.push_back(number(x));
        out["terms"] = terms;
        out["boundary"] = sys.boundary;
      } else {
        const double rho = radii.empty() ? 1.0 : radii.front();
        out["norm"] = discrete ? "discrete-amalgam" : "amalgam";
        out["radius"] = rho;
        out["value"] = number(discrete ? discrete_amalgam_norm(f, p, s, rho)
                                       : global_amalgam_norm(f, p, s, rho));
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*apply) {
      const Grid g = load_grid(apply_grid);
      const GridFunction f = sample(parse_field(apply_field), g);
      GridFunction result = f;
      if (op == "igamma") {
        result = fractional_integral(f, gamma);
      } else if (op == "mgamma") {
        RadiusSweep sweep = apply_radii.empty() ? RadiusSweep::dyadic(-2, 2) : RadiusSweep{apply_radii};
        sweep.validate();
        MaximalOptions opt;
        opt.variant = variant == "centered" ? MaximalVariant::Centered : MaximalVariant::Uncentered;
        result = fractional_maximal(f, gamma, sweep, opt);
      } else if (op == "commutator") {
        if (b_field.empty()) throw DomainError("commutator needs --b");
        result = commutator(sample(parse_field(b_field), g), f, gamma);
      } else if (op == "dilate") {
        result = dilate(f, t);
      } else {
        result = st_dilation(f, r, st_alpha);
      }
      with_output(out_path, [&](std::ostream& o) { write_csv(result, o); });
      return 0;
    }

    if (*verify) {
      Config cfg = config_path.empty() ? Config{} : load_config(config_path);
      if (seed >= 0) cfg.set("seed", ConfigValue::of(static_cast<double>(seed)));
      const SuiteReport rep = run_suite(suite, cfg);
      with_output(verify_out, [&](std::ostream& o) { o << rep.to_json() << "\n"; });
      std::cerr << suite << ": " << rep.records().size() - rep.failures() << "/"
                << rep.records().size() << " records pass\n";
      return rep.pass() ? 0 : 1;
    }

    if (*report) {
      const std::vector<SuiteReport> reps = read_reports(in_dir);
      with_output(report_out, [&](std::ostream& o) {
        if (format == "csv") {
          o << "suite,id,anchor,lhs,rhs,ratio,pass\n";
          char buf[64];
          auto put = [&](double x) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            o << buf;
          };
          for (const SuiteReport& rep : reps) {
            for (const Record& rec : rep.records()) {
              o << csv_escape(rep.suite()) << "," << csv_escape(rec.id) << ","
                << csv_escape(rec.anchor) << ",";
              put(rec.lhs);
              o << ",";
              put(rec.rhs);
              o << ",";
              put(rec.ratio);
              o << "," << (rec.pass ? "true" : "false") << "\n";
            }
          }
        } else {
          json rows = json::array();
          for (const SuiteReport& rep : reps) {
            for (const Record& rec : rep.records()) {
              rows.push_back({{"suite", rep.suite()},
                              {"id", rec.id},
                              {"anchor", rec.anchor},
                              {"lhs", number(rec.lhs)},
                              {"rhs", number(rec.rhs)},
                              {"ratio", number(rec.ratio)},
                              {"pass", rec.pass}});
            }
          }
          o << rows.dump(2) << "\n";
        }
      });
      bool all = true;
      for (const SuiteReport& rep : reps) all = all && rep.pass();
      return all ? 0 : 1;
    }
  } catch (const amalgam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
