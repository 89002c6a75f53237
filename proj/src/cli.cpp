#include "sigcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "sigcorr/mc.hpp"
#include "sigcorr/optimize.hpp"
#include "sigcorr/phi.hpp"
#include "sigcorr/series.hpp"

namespace sigcorr::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kReferenceEta = 0.228;

// Thrown for semantically invalid flag combinations; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump_value(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump_value(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_value(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out += prefix + ": ";
  if (j.is_array()) {
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ", ";
      first = false;
      if (e.is_object()) {
        std::string row;
        for (const auto& [k, v] : e.items())
          row += (row.empty() ? "" : " ") + k + "=" + (v.is_number_float() ? format_double(v.get<double>()) : v.dump());
        out += "(" + row + ")";
      } else {
        out += e.is_number_float() ? format_double(e.get<double>()) : e.dump();
      }
    }
  } else if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else if (j.is_string()) {
    out += j.get<std::string>();
  } else {
    out += j.dump();
  }
  out += "\n";
}

Json to_json(const OddSeries<double>& s) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < s.coeffs().size(); ++i) arr.push_back(s.coeffs()(i));
  return arr;
}

struct Output {
  std::string format;
  std::string path;
};

void emit(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + o.path + "'");
  file << text;
}

void emit_report(const Json& report, const Output& o, std::ostream& out) {
  if (o.format == "text") {
    std::string text;
    flatten(report, "", text);
    emit(text, o, out);
  } else if (o.format == "json") {
    emit(dump_report(report), o, out);
  } else {
    throw UsageError("format '" + o.format + "' is only available for sweep");
  }
}

Json header(const char* command, Json inputs) {
  Json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  return j;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  double eta = kReferenceEta;
  std::string method = "bessel";
  double tol = 1e-9;
};

int cmd_verify(const VerifyArgs& a, const Output& o, std::ostream& out) {
  if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
  const PhiMethod method = parse_phi_method(a.method);
  const auto rep = verify_theorem(RotationFamily(a.eta), method, a.tol);
  Json j = header("verify", {{"eta", a.eta}, {"method", a.method}, {"tol", a.tol}});
  j["value"] = rep.phi_i_value;
  j["error_estimate"] = rep.error_estimate;
  j["threshold"] = rep.threshold;
  j["margin"] = rep.margin;
  j["pass"] = rep.pass;
  j["version"] = kVersion;
  emit_report(j, o, out);
  return rep.pass ? kOk : kNotPassing;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  double lo = 0.0;
  double hi = 0.5;
  int steps = 10;
  double tol = 1e-9;
};

int cmd_sweep(const SweepArgs& a, const Output& o, std::ostream& out) {
  if (!(a.lo <= a.hi)) throw UsageError("--lo must not exceed --hi");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (a.lo != a.hi && a.steps < 1) throw UsageError("--steps must be >= 1");
  const auto scan = grid_scan(a.lo, a.hi, a.steps, a.tol);

  if (o.format == "csv") {
    std::string text = "eta,value,error_estimate\n";
    for (const auto& p : scan.points)
      text += format_double(p.eta) + "," + format_double(p.value) + "," +
              format_double(p.error_estimate) + "\n";
    emit(text, o, out);
    return kOk;
  }

  Json points = Json::array();
  double best_err = 0.0;
  for (const auto& p : scan.points) {
    points.push_back({{"eta", p.eta}, {"value", p.value}, {"error_estimate", p.error_estimate}});
    if (p.eta == scan.best_eta) best_err = p.error_estimate;
  }
  Json j = header("sweep", {{"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}, {"tol", a.tol}});
  j["value"] = scan.best_value;
  j["error_estimate"] = best_err;
  j["threshold"] = Constants::threshold();
  j["result"] = {{"best_eta", scan.best_eta}, {"points", std::move(points)}};
  j["version"] = kVersion;
  emit_report(j, o, out);
  return kOk;
}

// --- series -----------------------------------------------------------------

struct SeriesArgs {
  double eta = kReferenceEta;
  int order = 11;
  double tol = 1e-9;
};

int cmd_series(const SeriesArgs& a, const Output& o, std::ostream& out) {
  if (a.order < 1 || a.order % 2 == 0) throw UsageError("--order must be a positive odd integer");
  if (a.order > kMaxMehlerOrder) throw UsageError("--order must not exceed 15");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
  const RotationFamily family(a.eta);
  const auto c = mehler_coefficients(family, a.order, a.tol);
  const auto b = revert_odd_series(c);
  const auto verdict = alternation_check(b);
  const auto v = phi_i_bessel(family, a.tol);

  Json result;
  result["c"] = to_json(c);
  result["b"] = to_json(b);
  result["alternating"] = verdict.alternating;
  if (verdict.first_violation) result["first_violation"] = *verdict.first_violation;
  result["signs"] = verdict.signs;
  result["conditional_bound"] = conditional_bound(v.value);
  result["krivine_bound"] = Constants::krivine_bound();

  Json j = header("series", {{"eta", a.eta}, {"order", a.order}, {"tol", a.tol}});
  j["value"] = v.value;
  j["error_estimate"] = v.error_estimate;
  j["threshold"] = Constants::threshold();
  j["result"] = std::move(result);
  j["version"] = kVersion;
  emit_report(j, o, out);
  return kOk;
}

// --- mc ---------------------------------------------------------------------

struct McArgs {
  std::string family;
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::string target = "phi-i";
  std::optional<double> t;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

int cmd_mc(const McArgs& a, const Output& o, std::ostream& out, const Environment& env) {
  if (a.samples < 1) throw UsageError("--samples must be >= 1");
  if (a.target != "phi-i" && a.target != "phi-t")
    throw UsageError("--target must be phi-i or phi-t");
  if (a.target == "phi-t" && !a.t) throw UsageError("--t is required for --target phi-t");
  if (a.t && !(std::abs(*a.t) <= 1.0)) throw UsageError("--t must lie in [-1, 1]");

  const FamilyKind kind = parse_family_kind(a.family);
  Json inputs = {{"family", a.family}};
  Family family = identity1();
  double param = 0.0;
  if (kind == FamilyKind::Rotation3) {
    param = a.eta.value_or(kReferenceEta);
    family = rotation3(param);
    inputs["eta"] = param;
  } else if (kind == FamilyKind::Hermite5) {
    param = a.epsilon.value_or(0.0);
    if (!(param >= 0.0)) throw UsageError("--epsilon must be >= 0");
    family = hermite5(param);
    inputs["epsilon"] = param;
  }
  inputs["target"] = a.target;
  if (a.target == "phi-t") inputs["t"] = *a.t;

  const McOptions opts{env.threads};
  const McEstimate est = a.target == "phi-i"
                             ? estimate_phi_i(family, a.samples, a.seed, opts)
                             : estimate_phi_t(family, *a.t, a.samples, a.seed, opts);

  // Deterministic reference where one exists.
  std::optional<QuadResult<double>> reference;
  const bool sign_of_x0 = kind == FamilyKind::Identity1 || (kind == FamilyKind::Hermite5 && param == 0.0);
  if (a.target == "phi-i") {
    if (sign_of_x0)
      reference = QuadResult<double>{Constants::threshold(), 0.0, 1, QuadMethod::Adaptive1d};
    else if (kind == FamilyKind::Rotation3)
      reference = phi_i_bessel(RotationFamily(param), a.tol);
  } else {
    if (sign_of_x0)
      reference = QuadResult<double>{2.0 / std::numbers::pi * std::asin(*a.t), 0.0, 1,
                                     QuadMethod::Adaptive1d};
    else if (kind == FamilyKind::Rotation3 && std::abs(*a.t) < 1.0)
      reference = phi_real_t(RotationFamily(param), *a.t, a.tol);
  }

  Json j = header("mc", std::move(inputs));
  j["value"] = est.mean;
  j["seed"] = est.seed;
  j["samples"] = est.samples;
  j["stderr"] = est.std_error;
  if (reference) {
    Json result;
    result["reference"] = reference->value;
    result["reference_error"] = reference->error_estimate;
    if (est.std_error > 0.0) result["z_score"] = (est.mean - reference->value) / est.std_error;
    j["result"] = std::move(result);
  }
  j["version"] = kVersion;
  emit_report(j, o, out);
  return kOk;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeArgs {
  double lo = 0.0;
  double hi = 0.5;
  double xtol = 1e-4;
  double tol = 1e-9;
};

int cmd_optimize(const OptimizeArgs& a, const Output& o, std::ostream& out) {
  if (!(a.lo < a.hi)) throw UsageError("--lo must be below --hi");
  if (!(a.xtol > 0.0) || !(a.tol > 0.0)) throw UsageError("tolerances must be > 0");
  const auto opt = maximize_eta(a.lo, a.hi, a.xtol, a.tol);
  const auto ref = phi_i_bessel(RotationFamily(kReferenceEta), a.tol);
  const double threshold = Constants::threshold();

  Json j = header("optimize", {{"lo", a.lo}, {"hi", a.hi}, {"xtol", a.xtol}, {"tol", a.tol}});
  j["value"] = opt.value_star;
  j["error_estimate"] = opt.error_estimate;
  j["threshold"] = threshold;
  j["margin"] = opt.value_star - threshold;
  j["result"] = {{"eta_star", opt.eta_star},
                 {"unimodal_precheck", opt.unimodal_precheck},
                 {"evaluations", opt.evaluations},
                 {"reference_eta", kReferenceEta},
                 {"reference_value", ref.value},
                 {"improvement", opt.value_star - ref.value}};
  j["version"] = kVersion;
  emit_report(j, o, out);
  return kOk;
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* t = std::getenv("SIGCORR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(t, &end, 10);
    if (end != t && *end == '\0' && n >= 1) env.threads = static_cast<unsigned>(n);
  }
  if (const char* f = std::getenv("SIGCORR_FORMAT")) {
    const std::string s = f;
    if (s == "json" || s == "csv" || s == "text") env.default_format = s;
  }
  return env;
}

std::string dump_report(const nlohmann::ordered_json& report) {
  std::string out;
  dump_value(report, out, 0);
  out += "\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Sign-correlation functional toolkit for the rotation family", "sigcorr"};
  app.require_subcommand(1);

  std::optional<std::string> format;
  std::string output_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", output_path, "Write the report to this file");
  app.set_version_flag("--version", std::string(kVersion));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check Phi(i)/i against (2/pi) ln(1 + sqrt 2)");
  verify->add_option("--eta", va.eta, "Family parameter eta")->capture_default_str();
  verify->add_option("--method", va.method, "polar | cartesian | bessel")
      ->check(CLI::IsMember({"polar", "cartesian", "bessel"}))
      ->capture_default_str();
  verify->add_option("--tol", va.tol, "Quadrature tolerance")->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Grid scan of Phi(i)/i over eta");
  sweep->add_option("--lo", sa.lo)->capture_default_str();
  sweep->add_option("--hi", sa.hi)->capture_default_str();
  sweep->add_option("--steps", sa.steps)->capture_default_str();
  sweep->add_option("--tol", sa.tol)->capture_default_str();

  SeriesArgs sea;
  auto* series = app.add_subcommand("series", "Taylor and inverse series of Phi(t)");
  series->add_option("--eta", sea.eta)->capture_default_str();
  series->add_option("--order", sea.order, "Odd maximum order")->capture_default_str();
  series->add_option("--tol", sea.tol)->capture_default_str();

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of Phi(t) or Phi(i)/i");
  mc->add_option("--family", ma.family, "identity1 | rotation3 | hermite5")->required();
  mc->add_option("--eta", ma.eta, "rotation3 parameter");
  mc->add_option("--epsilon", ma.epsilon, "hermite5 parameter");
  mc->add_option("--target", ma.target, "phi-i | phi-t")->capture_default_str();
  mc->add_option("--t", ma.t, "Correlation for --target phi-t");
  mc->add_option("--samples", ma.samples)->capture_default_str();
  mc->add_option("--seed", ma.seed)->required();
  mc->add_option("--tol", ma.tol, "Tolerance of the quadrature reference")->capture_default_str();

  OptimizeArgs oa;
  auto* optimize = app.add_subcommand("optimize", "Maximise Phi(i)/i over eta");
  optimize->add_option("--lo", oa.lo)->capture_default_str();
  optimize->add_option("--hi", oa.hi)->capture_default_str();
  optimize->add_option("--xtol", oa.xtol)->capture_default_str();
  optimize->add_option("--tol", oa.tol)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Output o{format.value_or(env.default_format), output_path};
  // CSV is only defined for sweep; an environment default of csv falls back
  // to JSON elsewhere.
  if (!format && o.format == "csv" && !sweep->parsed()) o.format = "json";

  try {
    if (verify->parsed()) return cmd_verify(va, o, out);
    if (sweep->parsed()) return cmd_sweep(sa, o, out);
    if (series->parsed()) return cmd_series(sea, o, out);
    if (mc->parsed()) return cmd_mc(ma, o, out, env);
    if (optimize->parsed()) return cmd_optimize(oa, o, out);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace sigcorr::cli
