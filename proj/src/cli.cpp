#include "ihat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "ihat/errors.hpp"
#include "ihat/json_io.hpp"
#include "ihat/mellin.hpp"

namespace ihat {
namespace {

constexpr double kDefaultTol = 1e-12;  // matches contour_for
constexpr double kPointwiseThreshold = 1e-4;

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string spec2_path;
  std::string z_grid;
  std::string s_grid;
  std::string y_grid;
  std::string op = "product";
  std::string output = "json";
  std::optional<std::size_t> n;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  bool verify = false;
};

// Statistical failure after the output has been written.
struct Exit4 {};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

// "a:b:n" or a single number.
std::vector<double> parse_grid(const std::string& text, bool log_spaced, const char* flag) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw DomainError(std::string(flag) + ": cannot read \"" + s + "\"");
    }
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {number(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw DomainError(std::string(flag) + " expects a:b:n");
  const double a = number(text.substr(0, c1));
  const double b = number(text.substr(c1 + 1, c2 - c1 - 1));
  const double nd = number(text.substr(c2 + 1));
  if (nd < 1 || nd != std::floor(nd)) throw DomainError(std::string(flag) + ": n must be >= 1");
  const int n = static_cast<int>(nd);
  if (log_spaced) return log_grid(a, b, n);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

double resolve_tol(const RunConfig& cfg) {
  double tol = kDefaultTol;
  if (cfg.tol) {
    tol = *cfg.tol;
  } else if (const char* env = std::getenv("IHAT_TOL")) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0') throw DomainError("IHAT_TOL is not a number");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive");
  return tol;
}

bool is_density(const Json& j) { return j.is_object() && j.contains("Z"); }

// A density file is taken as written; base parameters are turned into a
// checked base density.
IhatDensity density_input(const Json& j) {
  if (is_density(j)) return density_from_json(j);
  return make_base_dist(base_from_json(j));
}

ScaledIhat scaled_input(const Json& j) {
  if (j.is_object() && j.contains("spec")) {
    ScaledIhat f{spec_from_json(j.at("spec")), 1.0, 1.0};
    if (j.contains("z")) f.z = j.at("z").get<double>();
    if (j.contains("power")) f.power = j.at("power").get<double>();
    return f;
  }
  return {spec_from_json(j), 1.0, 1.0};
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const IhatSpec spec = spec_from_json(load(cfg.spec_path));
  const std::vector<double> zs = parse_grid(cfg.z_grid, true, "--z");
  const double scale = resolve_tol(cfg) / kDefaultTol;
  Json rows = Json::array();
  if (cfg.output == "csv") out << "z,value,error\n";
  for (double z : zs) {
    Contour c = contour_for(spec, z);
    c.abs_tol *= scale;
    const Evaluation e = ihat_evaluate(spec, z, c);
    if (cfg.output == "csv") {
      out << num(z) << ',' << num(e.value) << ',' << num(e.error) << '\n';
    } else {
      rows.push_back({{"z", z}, {"value", e.value}, {"error", e.error}});
    }
  }
  if (cfg.output == "json") out << Json{{"rows", rows}}.dump(2) << '\n';
  return 0;
}

int cmd_mellin(const RunConfig& cfg, std::ostream& out) {
  const ScaledIhat f1 = scaled_input(load(cfg.spec_path));
  std::optional<ScaledIhat> f2;
  if (!cfg.spec2_path.empty()) f2 = scaled_input(load(cfg.spec2_path));
  const std::vector<double> ss = parse_grid(cfg.s_grid, false, "--s");
  const double rel = 1e3 * resolve_tol(cfg);
  Json rows = Json::array();
  if (cfg.output == "csv") out << "s,closed_form,quadrature_oracle,rel_err\n";
  for (double s : ss) {
    double closed = 0.0;
    double oracle = 0.0;
    if (f2) {
      closed = mellin_ihat_product(f1, *f2, s);
      oracle = mellin_product_quadrature(f1, *f2, s, rel).value;
    } else {
      closed = mellin_ihat(f1, s).real();
      oracle = mellin_quadrature(f1, s, rel).value;
    }
    const double err = std::abs(closed - oracle) / std::abs(oracle);
    if (cfg.output == "csv") {
      out << num(s) << ',' << num(closed) << ',' << num(oracle) << ',' << num(err) << '\n';
    } else {
      rows.push_back(
          {{"s", s}, {"closed_form", closed}, {"quadrature_oracle", oracle}, {"rel_err", err}});
    }
  }
  if (cfg.output == "json") out << Json{{"rows", rows}}.dump(2) << '\n';
  return 0;
}

// Quantile-based grid: 25 points between the 0.1% and 99.9% quantiles.
std::vector<double> default_y_grid(const CdfTable& t) {
  return log_grid(t.quantile(1e-3), t.quantile(1.0 - 1e-3), 25);
}

struct Verification {
  std::vector<VerificationReport> reports;
  std::vector<double> ys;
  std::vector<double> oracle;
};

Verification run_pair_verification(const IhatDensity& d1, const IhatDensity& d2,
                                   const IhatDensity& target, bool quotient,
                                   const RunConfig& cfg) {
  Verification v;
  const CdfTable t1 = tabulate_cdf(d1);
  const CdfTable t2 = tabulate_cdf(d2);
  const CdfTable tt = tabulate_cdf(target);
  v.ys = cfg.y_grid.empty() ? default_y_grid(tt) : parse_grid(cfg.y_grid, true, "--y");
  auto oracle = [&](double y) {
    return quotient ? quotient_oracle(d1, d2, y) : convolution_oracle_product(d1, d2, y);
  };
  auto recorded = [&](double y) {
    v.oracle.push_back(oracle(y));
    return v.oracle.back();
  };
  v.reports.push_back(compare_pointwise([&](double y) { return pdf(target, y); }, recorded, v.ys,
                                        kPointwiseThreshold));
  const std::size_t n = cfg.n.value_or(100000);
  v.reports.push_back(quotient ? mc_quotient_check(t1, t2, tt, n, cfg.seed)
                               : mc_product_check(t1, t2, tt, n, cfg.seed));
  v.reports.back().seed = cfg.seed;
  v.reports[0].seed = cfg.seed;
  return v;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

Json reports_json(const std::vector<VerificationReport>& reports) {
  Json a = Json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return a;
}

void write_reports_csv(const std::vector<VerificationReport>& reports, std::ostream& out) {
  out << "kind,statistic,threshold,passed,seed,n\n";
  for (const auto& r : reports) {
    out << to_string(r.kind) << ',' << num(r.statistic()) << ',' << num(r.threshold) << ','
        << (r.passed ? "true" : "false") << ',' << r.seed << ',' << r.n << '\n';
  }
}

// dist, product and quotient: the density, an optional pdf table and, for
// the two-variate commands, optional verification.
int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool two = cfg.command != "dist";
  const bool quotient = cfg.command == "quotient";
  if (two && cfg.spec2_path.empty()) throw DomainError(cfg.command + " needs --spec2");
  const BaseParams b1 = base_from_json(load(cfg.spec_path));
  std::optional<BaseParams> b2;
  if (two) b2 = base_from_json(load(cfg.spec2_path));

  IhatDensity d;
  if (!two) {
    d = make_base_dist(b1);
  } else {
    d = quotient ? quotient_dist(b1, *b2) : product_dist(b1, *b2);
  }
  if (!d.validated) err << "density failed validation (normalization or sign check)\n";

  std::vector<double> ys;
  if (!cfg.y_grid.empty()) ys = parse_grid(cfg.y_grid, true, "--y");
  std::optional<Verification> ver;
  if (two && cfg.verify && d.validated) {
    const IhatDensity d1 = make_base_dist(b1);
    const IhatDensity d2 = make_base_dist(*b2);
    if (!d1.validated || !d2.validated) throw ValidationError("a factor density is not validated");
    ver = run_pair_verification(d1, d2, d, quotient, cfg);
    ys = ver->ys;
  }

  if (cfg.output == "csv") {
    out << (ver ? "y,pdf,oracle\n" : "y,pdf\n");
    for (std::size_t i = 0; i < ys.size(); ++i) {
      out << num(ys[i]) << ',' << num(pdf(d, ys[i]));
      if (ver) out << ',' << num(ver->oracle[i]);
      out << '\n';
    }
    if (ver) {
      for (const auto& r : ver->reports) {
        err << to_string(r.kind) << ": " << (r.passed ? "passed" : "FAILED") << " (" << r.details
            << ")\n";
      }
    }
  } else {
    Json j{{"density", density_to_json(d)}};
    if (!ys.empty()) {
      Json table = Json::array();
      for (double y : ys) table.push_back({{"y", y}, {"pdf", pdf(d, y)}});
      j["pdf"] = table;
    }
    if (ver) j["verification"] = reports_json(ver->reports);
    out << j.dump(2) << '\n';
  }
  if (!d.validated || (ver && !all_passed(ver->reports))) throw Exit4{};
  return 0;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.n) throw DomainError("sample needs --n");
  const IhatDensity d = density_input(load(cfg.spec_path));
  const SampleBatch b = sample(d, *cfg.n, cfg.seed);
  if (cfg.output == "csv") {
    out << "value\n";
    for (double v : b.values) out << num(v) << '\n';
  } else {
    out << Json{{"seed", b.seed}, {"n", b.n}, {"values", b.values}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<VerificationReport> reports;
  if (cfg.spec2_path.empty()) {
    // One density: draws from its own table must pass KS against it.
    const IhatDensity d = density_input(load(cfg.spec_path));
    const CdfTable t = tabulate_cdf(d);
    reports.push_back(ks_compare(sample(t, cfg.n.value_or(100000), cfg.seed), t));
  } else {
    if (cfg.op != "product" && cfg.op != "quotient") {
      throw DomainError("--op must be product or quotient");
    }
    const bool quotient = cfg.op == "quotient";
    const BaseParams b1 = base_from_json(load(cfg.spec_path));
    const BaseParams b2 = base_from_json(load(cfg.spec2_path));
    const IhatDensity target = quotient ? quotient_dist(b1, b2) : product_dist(b1, b2);
    const IhatDensity d1 = make_base_dist(b1);
    const IhatDensity d2 = make_base_dist(b2);
    for (const IhatDensity* d : {&d1, &d2, &target}) {
      if (!d->validated) throw ValidationError("density failed validation");
    }
    reports = run_pair_verification(d1, d2, target, quotient, cfg).reports;
  }
  if (cfg.output == "csv") {
    write_reports_csv(reports, out);
  } else {
    out << Json{{"reports", reports_json(reports)}, {"passed", all_passed(reports)}}.dump(2)
        << '\n';
  }
  if (!all_passed(reports)) throw Exit4{};
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Ihat-function evaluation, Mellin transforms and product/quotient densities",
               "ihat"};
  app.require_subcommand(1, 1);

  auto spec = [&](CLI::App* c, bool second) {
    c->add_option("--spec", cfg.spec_path, "input JSON file")->required();
    if (second) c->add_option("--spec2", cfg.spec2_path, "second input JSON file");
  };
  auto output = [&](CLI::App* c) {
    c->add_option("--out", cfg.output, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto tol = [&](CLI::App* c) {
    c->add_option("--tol", cfg.tol, "relative accuracy target (env IHAT_TOL)");
  };
  auto stats = [&](CLI::App* c) {
    c->add_option("--n", cfg.n, "number of draws");
    c->add_option("--seed", cfg.seed, "64-bit seed");
  };

  CLI::App* eval = app.add_subcommand("eval", "Ihat(z) on a log-spaced z grid");
  spec(eval, false);
  eval->add_option("--z", cfg.z_grid, "a:b:n (log-spaced) or a single z")->required();
  tol(eval);
  output(eval);

  CLI::App* mellin = app.add_subcommand("mellin", "Mellin transform, closed form vs quadrature");
  spec(mellin, true);
  mellin->add_option("--s", cfg.s_grid, "a:b:n (linear) or a single s")->required();
  tol(mellin);
  output(mellin);

  CLI::App* dist = app.add_subcommand("dist", "base density from base parameters");
  spec(dist, false);
  dist->add_option("--y", cfg.y_grid, "pdf table grid a:b:n (log-spaced)");
  output(dist);

  for (const char* name : {"product", "quotient"}) {
    CLI::App* c = app.add_subcommand(name, std::string("density of the ") + name +
                                               " of two independent base variates");
    spec(c, true);
    c->add_option("--y", cfg.y_grid, "pdf table grid a:b:n (log-spaced)");
    c->add_flag("--verify", cfg.verify, "run the quadrature oracle and a KS check");
    stats(c);
    output(c);
  }

  CLI::App* samp = app.add_subcommand("sample", "inverse-CDF draws from a density");
  spec(samp, false);
  stats(samp);
  output(samp);

  CLI::App* verify = app.add_subcommand("verify", "oracle and Monte Carlo checks");
  spec(verify, true);
  verify->add_option("--op", cfg.op, "product or quotient (with --spec2)");
  verify->add_option("--y", cfg.y_grid, "pointwise grid a:b:n (log-spaced)");
  stats(verify);
  output(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "eval") return cmd_eval(cfg, out);
    if (cfg.command == "mellin") return cmd_mellin(cfg, out);
    if (cfg.command == "sample") return cmd_sample(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    return cmd_density(cfg, out, err);
  } catch (const Exit4&) {
    return 4;
  } catch (const ValidationError& e) {
    err << "validation: " << e.what() << '\n';
    return 4;
  } catch (const ConvergenceError& e) {
    err << "convergence: " << e.what() << '\n';
    return 2;
  } catch (const PoleError& e) {
    err << "pole: " << e.what() << '\n';
    return 2;
  } catch (const BranchCutError& e) {
    err << "branch cut: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "input: " << e.what() << '\n';
    return 3;
  } catch (const Json::exception& e) {
    err << "input: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace ihat
