#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "specsep/projectors.hpp"
#include "specsep/serialize.hpp"
#include "specsep/verification.hpp"

namespace fs = std::filesystem;
using namespace specsep;

namespace {

enum Exit { kPass = 0, kSuiteFailure = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flag values; optionals record which flags were given.
struct Flags {
  std::string name;
  std::optional<int> n, r, k, p, p_max, c_max, m_max, a_bound, workers, box;
  std::optional<double> lambda_max, tol;
  std::optional<std::string> reg, out, config, data, mode, form;
  std::optional<std::uint64_t> seed;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Regularization parse_reg(const std::string& s) {
  if (s == "abel") return Regularization::abel;
  if (s == "cesaro") return Regularization::cesaro;
  if (s == "sharp") return Regularization::sharp;
  throw UsageError("--reg must be abel, cesaro or sharp");
}

const char* reg_name(Regularization r) {
  switch (r) {
    case Regularization::abel: return "abel";
    case Regularization::cesaro: return "cesaro";
    case Regularization::sharp: return "sharp";
  }
  return "abel";
}

/// Fills unset flags from a flat JSON config; explicit flags win.
void merge_config(Flags& f) {
  if (!f.config) return;
  std::ifstream in(*f.config);
  if (!in) throw UsageError("cannot read config file " + *f.config);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a flat JSON object");
  static const std::set<std::string> known{"name", "n", "r", "k", "p", "p_max", "c_max", "m_max", "lambda_max",
                                           "a_bound", "reg", "tol", "workers", "seed", "out"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
      auto take_int = [&](std::optional<int>& slot) {
        if (!slot) slot = value.get<int>();
      };
      if (key == "name" && f.name.empty()) f.name = value.get<std::string>();
      if (key == "n") take_int(f.n);
      if (key == "r") take_int(f.r);
      if (key == "k") take_int(f.k);
      if (key == "p") take_int(f.p);
      if (key == "p_max") take_int(f.p_max);
      if (key == "c_max") take_int(f.c_max);
      if (key == "m_max") take_int(f.m_max);
      if (key == "a_bound") take_int(f.a_bound);
      if (key == "workers") take_int(f.workers);
      if (key == "lambda_max" && !f.lambda_max) f.lambda_max = value.get<double>();
      if (key == "tol" && !f.tol) f.tol = value.get<double>();
      if (key == "reg" && !f.reg) f.reg = value.get<std::string>();
      if (key == "out" && !f.out) f.out = value.get<std::string>();
      if (key == "seed" && !f.seed) f.seed = value.get<std::uint64_t>();
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config value has the wrong type: ") + e.what());
  }
}

SuiteConfig to_suite_config(const Flags& f) {
  SuiteConfig c;
  c.n = f.n;
  c.r = f.r;
  c.k = f.k;
  c.p = f.p;
  if (f.p_max) c.p_max = *f.p_max;
  if (f.c_max) c.trunc.c_max = *f.c_max;
  if (f.m_max) c.trunc.m_max = *f.m_max;
  if (f.lambda_max) c.trunc.lambda_max = *f.lambda_max;
  if (f.a_bound) c.a_bound = *f.a_bound;
  if (f.reg) c.reg = parse_reg(*f.reg);
  c.tol = f.tol;
  if (f.workers) c.workers = *f.workers;
  if (f.seed) c.seed = *f.seed;
  if (c.trunc.c_max < 1 || c.trunc.m_max < 1 || !(c.trunc.lambda_max > 0.0) || c.a_bound < 1 || c.p_max < 1)
    throw UsageError("truncation bounds must be positive");
  if (c.tol && !(*c.tol > 0.0 && *c.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  if (c.workers < 1) throw UsageError("--workers must be at least 1");
  return c;
}

Json config_snapshot(const SuiteConfig& c) {
  Json j = {{"p_max", c.p_max},     {"truncation", to_json(c.trunc)}, {"a_bound", c.a_bound},
            {"reg", reg_name(c.reg)}, {"workers", c.workers},          {"seed", c.seed}};
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["r"] = c.r ? Json(*c.r) : Json(nullptr);
  j["k"] = c.k ? Json(*c.k) : Json(nullptr);
  j["p"] = c.p ? Json(*c.p) : Json(nullptr);
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  return j;
}

fs::path output_dir(const Flags& f) {
  if (f.out) return *f.out;
  if (const char* env = std::getenv("SPECSEP_OUT_DIR"); env && *env) return env;
  return "reports";
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string report_csv(const SuiteResult& s) {
  std::ostringstream csv;
  csv << "case,index,lhs_re,lhs_im,rhs_re,rhs_im\n";
  for (std::size_t c = 0; c < s.cases.size(); ++c) {
    const auto& rep = s.cases[c];
    for (std::size_t i = 0; i < rep.lhs.size(); ++i)
      csv << c << ',' << i << ',' << fmt17(rep.lhs[i].real()) << ',' << fmt17(rep.lhs[i].imag()) << ','
          << fmt17(rep.rhs[i].real()) << ',' << fmt17(rep.rhs[i].imag()) << '\n';
  }
  return csv.str();
}

int cmd_suite(const Flags& flags) {
  const SuiteConfig cfg = to_suite_config(flags);
  if (flags.name.empty()) throw UsageError("--name is required");
  std::vector<std::string> names;
  if (flags.name == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), flags.name) == known.end())
      throw UsageError("unknown suite '" + flags.name + "'");
    names = {flags.name};
  }
  const fs::path dir = output_dir(flags);
  Json summary = {{"config", config_snapshot(cfg)}, {"suites", Json::array()}};
  bool all_pass = true;
  for (const auto& name : names) {
    SuiteResult result;
    try {
      result = run_suite(name, cfg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Json j = to_json(result);
    j["config"] = config_snapshot(cfg);
    write_file(dir / (name + ".json"), j.dump(2) + "\n");
    write_file(dir / (name + ".csv"), report_csv(result));
    summary["suites"].push_back({{"name", name}, {"pass", result.pass()}});
    all_pass = all_pass && result.pass();
    std::cout << "suite " << name << ": " << (result.pass() ? "PASS" : "FAIL") << '\n';
  }
  summary["pass"] = all_pass;
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return all_pass ? kPass : kSuiteFailure;
}

std::string unit_name(int m) {
  static const char* names[] = {"1", "-i", "-1", "i"};
  return names[m % 4];
}

std::string factor_text(const Distribution& d, const DistTerm& t) {
  const auto& names = d.domain().angles();
  std::vector<std::string> parts;
  for (int c : t.cots) parts.push_back("cot(" + names[static_cast<std::size_t>(c)] + "/2)");
  for (const auto& f : t.deltas) {
    std::string arg;
    for (std::size_t i = 0; i < f.angle_coeffs.size(); ++i) {
      const int a = f.angle_coeffs[i];
      if (a == 0) continue;
      if (!arg.empty() || a < 0) arg += a < 0 ? "-" : "+";
      if (std::abs(a) != 1) arg += std::to_string(std::abs(a));
      arg += names[i];
    }
    parts.push_back("delta(" + arg + ")");
  }
  if (parts.empty()) return "1";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

int cmd_lambda(const Flags& flags) {
  if (!flags.p || *flags.p < 0) throw UsageError("--p must be given and non-negative");
  const int p = *flags.p;
  const std::string mode = flags.mode.value_or("terms");
  const fs::path dir = output_dir(flags);
  if (mode == "terms") {
    const std::string form = flags.form.value_or("sigma");
    if (form != "sigma" && form != "matching") throw UsageError("--form must be sigma or matching");
    const Distribution d = form == "sigma" ? build_lambda_sigma_sum(p) : build_lambda(p);
    const int m = p / 2;
    long long rational_den = 1;
    if (form == "sigma") {
      rational_den = 1LL << m;
      for (int i = 2; i <= m; ++i) rational_den *= i;
    }
    const cplx common = std::pow(cplx{0.0, -1.0}, m) / (std::pow(2.0 * std::numbers::pi, m) * static_cast<double>(rational_den));
    std::ostringstream csv;
    csv << "term,sign,unit,two_pi_power,rational,coeff_re,coeff_im,factors\n";
    for (std::size_t i = 0; i < d.terms().size(); ++i) {
      const auto& t = d.terms()[i];
      const int sign = p == 0 ? 1 : static_cast<int>(std::lround((t.coeff / common).real()));
      csv << i << ',' << sign << ',' << (p == 0 ? "1" : unit_name(m)) << ',' << (p == 0 ? 0 : -m) << ",1/"
          << rational_den << ',' << fmt17(t.coeff.real()) << ',' << fmt17(t.coeff.imag()) << ','
          << factor_text(d, t) << '\n';
    }
    const fs::path path = dir / ("lambda_p" + std::to_string(p) + "_" + form + "_terms.csv");
    write_file(path, csv.str());
    std::cout << path.string() << '\n';
    return kPass;
  }
  if (mode == "fourier") {
    const int box = flags.box.value_or(3);
    if (box < 0) throw UsageError("--box must be non-negative");
    const Distribution d = build_lambda(p);
    const LcalPartial lcal(p, std::max(flags.a_bound.value_or(200), std::max(box, 1)),
                           flags.reg ? parse_reg(*flags.reg) : Regularization::abel);
    std::ostringstream csv;
    for (int j = 1; j <= p; ++j) csv << 'a' << j << ',';
    csv << "lambda_re,lambda_im,lcal_re,lcal_im\n";
    std::vector<int> a(static_cast<std::size_t>(p), -box);
    while (true) {
      const cplx v = fourier_coefficient(d, a);
      const cplx w = p == 0 ? cplx{1.0} : lcal.pair_exponential(a);
      for (int x : a) csv << x << ',';
      csv << fmt17(v.real()) << ',' << fmt17(v.imag()) << ',' << fmt17(w.real()) << ',' << fmt17(w.imag()) << '\n';
      std::size_t i = 0;
      while (i < a.size() && a[i] == box) a[i++] = -box;
      if (i == a.size()) break;
      ++a[i];
    }
    const fs::path path = dir / ("lambda_p" + std::to_string(p) + "_fourier.csv");
    write_file(path, csv.str());
    std::cout << path.string() << '\n';
    return kPass;
  }
  throw UsageError("--mode must be terms or fourier");
}

int cmd_theta(const Flags& flags) {
  if (!flags.n || !flags.r) throw UsageError("--n and --r are required");
  ThetaKernel kernel;
  try {
    kernel = build_theta(*flags.n, *flags.r);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::map<int, ExpPoly> data;
  if (flags.data) {
    std::ifstream in(*flags.data);
    if (!in) throw UsageError("cannot read data file " + *flags.data);
    try {
      const Json j = Json::parse(in);
      if (!j.is_object() || !j.contains("charts") || !j["charts"].is_object())
        throw UsageError("data file must be an object with a 'charts' object");
      for (const auto& [key, value] : j["charts"].items()) {
        std::size_t used = 0;
        const int k = std::stoi(key, &used);
        if (used != key.size()) throw UsageError("chart keys must be integers");
        data.emplace(k, exppoly_from_json(value));
      }
    } catch (const Json::exception& e) {
      throw UsageError(std::string("data file schema violation: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("data file schema violation: ") + e.what());
    }
  }
  cplx value;
  try {
    value = apply_theta(kernel, data);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json audit = to_json(kernel);
  for (auto& chart : audit["charts"]) {
    const int k = chart["k"].get<int>();
    const auto it = data.find(k);
    const cplx paired = it == data.end() ? cplx{0.0} : pair(kernel.charts[static_cast<std::size_t>(k)].distribution, it->second);
    chart["pairing"] = to_json(paired);
    chart["contribution"] = to_json(kernel.charts[static_cast<std::size_t>(k)].weight.value() * paired);
    chart["data_supplied"] = it != data.end();
  }
  audit["value"] = to_json(value);
  const fs::path path = output_dir(flags) / ("theta_n" + std::to_string(*flags.n) + "_r" + std::to_string(*flags.r) + ".json");
  write_file(path, audit.dump(2) + "\n");
  std::cout << fmt17(value.real()) << ' ' << fmt17(value.imag()) << '\n';
  return kPass;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "GL(n) rank");
  cmd->add_option("--r", f.r, "projector index r");
  cmd->add_option("--k", f.k, "chart index k");
  cmd->add_option("--p", f.p, "torus dimension p");
  cmd->add_option("--out", f.out, "output directory (default $SPECSEP_OUT_DIR or ./reports)");
  cmd->add_option("--config", f.config, "flat JSON config; flags override it");
  cmd->add_option("--a-bound", f.a_bound, "Fourier truncation bound for the regularized sum");
  cmd->add_option("--reg", f.reg, "regularization: abel, cesaro or sharp");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projector distributions and identity suites"};
  app.require_subcommand(1);
  Flags flags;

  auto* suite = app.add_subcommand("suite", "identity suites");
  suite->require_subcommand(1);
  auto* run = suite->add_subcommand("run", "run one suite or all");
  run->add_option("--name", flags.name, "suite name or 'all'");
  add_common(run, flags);
  run->add_option("--p-max", flags.p_max, "largest matching size");
  run->add_option("--c-max", flags.c_max, "bound on |c_j|");
  run->add_option("--m-max", flags.m_max, "bound on |m|");
  run->add_option("--lambda-max", flags.lambda_max, "λ quadrature cutoff");
  run->add_option("--tol", flags.tol, "tolerance override in (0, 1)");
  run->add_option("--workers", flags.workers, "worker threads");
  run->add_option("--seed", flags.seed, "random seed");

  auto* lambda = app.add_subcommand("lambda", "Λ_p term table or Fourier coefficients");
  add_common(lambda, flags);
  lambda->add_option("--mode", flags.mode, "terms or fourier");
  lambda->add_option("--form", flags.form, "sigma (default) or matching");
  lambda->add_option("--box", flags.box, "Fourier table box |a_j| <= box");

  auto* theta = app.add_subcommand("theta", "apply Θ_r to chart data");
  add_common(theta, flags);
  theta->add_option("--data", flags.data, "JSON file {\"charts\": {k: ExpPoly}}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    merge_config(flags);
    if (run->parsed()) return cmd_suite(flags);
    if (lambda->parsed()) return cmd_lambda(flags);
    if (theta->parsed()) return cmd_theta(flags);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}
