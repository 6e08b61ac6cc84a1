// Command-line front end: each subcommand runs one verification suite and writes a report.
// Exit status: 0 all assertions pass, 1 an assertion failed, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlab/json_io.hpp"
#include "curvlab/verify.hpp"
#include "curvlab/version.hpp"

namespace {

using namespace curvlab;
using ojson = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct RunConfig {
  std::uint64_t seed = 1;
  long trials = 100;
  std::vector<std::string> tol_overrides;
  std::string format = "json";
  std::string out;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Report {
 public:
  Report(std::string command, const RunConfig& cfg, const Tolerances& tol) : command_(std::move(command)) {
    config_["seed"] = cfg.seed;
    config_["trials"] = cfg.trials;
    config_["format"] = cfg.format;
    config_["tolerances"] = tol.all();
  }

  void arg(const std::string& k, const ojson& v) { args_[k] = v; }
  void add(const std::string& section, const SuiteResult& r) { sections_.emplace_back(section, r); }
  void note(const std::string& k, const ojson& v) { notes_[k] = v; }

  bool passed() const {
    for (const auto& [_, r] : sections_)
      if (!r.passed()) return false;
    return true;
  }

  std::string render(Format f) const {
    switch (f) {
      case Format::json: return json_text();
      case Format::csv: return csv_text();
      case Format::text: return plain_text();
    }
    return {};
  }

 private:
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& [s, r] : sections_)
      for (const auto& name : r.failures()) out.push_back(s + "/" + name);
    return out;
  }

  std::string json_text() const {
    ojson j;
    j["tool"] = "curvlab";
    j["versions"] = {{"curvlab", kVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    j["command"] = command_;
    ojson cfg = config_;
    cfg["args"] = args_;
    j["config"] = cfg;
    ojson secs = ojson::object();
    for (const auto& [s, r] : sections_) {
      ojson checks = ojson::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"samples", c.samples},
                          {"violations", c.violations}});
      }
      secs[s] = {{"checks", checks}, {"values", r.values}};
    }
    j["sections"] = secs;
    if (!notes_.empty()) j["notes"] = notes_;
    j["failures"] = failures();
    j["status"] = passed() ? "pass" : "fail";
    return j.dump(2) + "\n";
  }

  std::string csv_text() const {
    std::ostringstream os;
    os << "section,kind,name,value,tolerance,pass,samples\n";
    os << "meta,info,tool,curvlab,,,\n";
    os << "meta,info,version," << kVersion << ",,,\n";
    os << "meta,info,command," << command_ << ",,,\n";
    os << "meta,info,seed," << config_["seed"].get<std::uint64_t>() << ",,,\n";
    os << "meta,info,trials," << config_["trials"].get<long>() << ",,,\n";
    for (const auto& [s, r] : sections_) {
      for (const auto& c : r.checks)
        os << s << ",check," << c.name << "," << num(c.value) << "," << num(c.tolerance) << "," << (c.pass ? 1 : 0)
           << "," << c.samples << "\n";
      for (const auto& [k, v] : r.values) os << s << ",value," << k << "," << num(v) << ",,,\n";
    }
    os << "meta,info,status," << (passed() ? "pass" : "fail") << ",,,\n";
    return os.str();
  }

  std::string plain_text() const {
    std::ostringstream os;
    os << "curvlab " << kVersion << " " << command_ << " seed=" << config_["seed"].get<std::uint64_t>()
       << " trials=" << config_["trials"].get<long>() << "\n";
    for (const auto& [s, r] : sections_) {
      os << "[" << s << "]\n";
      for (const auto& c : r.checks)
        os << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << "  value=" << num(c.value)
           << " tol=" << num(c.tolerance) << " n=" << c.samples << "\n";
      for (const auto& [k, v] : r.values) os << "  " << k << " = " << num(v) << "\n";
    }
    for (const auto& [k, v] : notes_.items()) os << "  " << k << ": " << v.dump() << "\n";
    os << (passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }

  std::string command_;
  ojson config_;
  ojson args_ = ojson::object();
  ojson notes_ = ojson::object();
  std::vector<std::pair<std::string, SuiteResult>> sections_;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw InputError("unknown format '" + s + "'");
}

Tolerances build_tolerances(const std::vector<std::string>& overrides) {
  Tolerances t;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects name=value, got '" + o + "'");
    t.set(o.substr(0, eq), detail::parse_double(o.substr(eq + 1), o));
  }
  return t;
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

/// Curvature tensor from a JSON operator file or, failing that, a model spec string.
CurvatureTensor curvature_argument(const std::string& arg, Report& rep) {
  if (is_file(arg)) {
    rep.arg("input", arg);
    return CurvatureTensor(operator_from_json(read_json_file(arg)), 1e-9);
  }
  const ModelSpec spec = parse_model_spec(arg);
  rep.arg("model", spec.describe());
  return model_curvature(spec).R;
}

SuiteResult pinch_section(const CurvatureTensor& r) {
  SuiteResult out;
  const int n = r.n();
  const CurvatureDecomposition dec = decompose(r);
  auto put = [&out](const std::string& pre, const PinchVerdict& v) {
    out.values[pre + ".condition"] = v.condition_value;
    out.values[pre + ".threshold"] = v.threshold;
    out.values[pre + ".satisfied"] = v.satisfied ? 1.0 : 0.0;
    out.values[pre + ".strict"] = v.strict ? 1.0 : 0.0;
  };
  out.values["scalar"] = dec.S;
  out.values["weyl_norm"] = norm(dec.weyl);
  out.values["e_norm"] = norm(dec.E);
  if (n == 4) {
    const SelfDualSplit sd = split_self_dual(dec.weyl);
    const double omega = sd.Wplus.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
    out.values["omega_plus"] = omega;
    put("dim4", pinch_verdict_dim4(omega, dec.S));
  } else {
    const PointwiseVerdicts pv = pinch_verdict_pointwise(dec.weyl.op(), dec.E, dec.S);
    put("pointwise", pv.magnitude);
    if (pv.signed_max) put("pointwise_signed", *pv.signed_max);
    put("norm", pinch_verdict_norm(dec.weyl.op(), dec.E, dec.S));
  }
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

VecL parse_center(const std::string& s, int n) {
  const auto parts = detail::split(s, ',');
  if (static_cast<int>(parts.size()) != n) throw InputError("--center needs " + std::to_string(n) + " coordinates");
  VecL c(n);
  for (int i = 0; i < n; ++i) c(i) = detail::parse_double(parts[static_cast<std::size_t>(i)], s);
  return c;
}

int run(int argc, char** argv) {
  CLI::App app{"curvlab: curvature identity and pinching verification"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--trials", cfg.trials, "random trials per dimension")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", cfg.tol_overrides, "tolerance override name=value")->take_all();
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.set_version_flag("--version", std::string(kVersion));

  std::vector<int> id_ns;
  std::string id_input;
  auto* identities = app.add_subcommand("identities", "random algebraic identity suite");
  identities->add_option("--n", id_ns, "dimensions (default 4..8)")->check(CLI::Range(4, 12));
  identities->add_option("--input", id_input, "evaluate the identities on one operator JSON file instead");

  std::string model_spec;
  auto* model = app.add_subcommand("model", "model space curvature package and symmetric-space residuals");
  model->add_option("spec", model_spec, "e.g. sphere:4:1 or product:sphere:2:1,sphere:2:1")->required();

  std::string dim4_input;
  long dim4_samples = 100000;
  double dim4_scalar = 0.0;
  auto* dim4 = app.add_subcommand("dim4", "self-dual split, normal form, determinant identities");
  dim4->add_option("input", dim4_input, "operator JSON file, or 'random' for the sampled suite")->required();
  dim4->add_option("--samples", dim4_samples, "samples for the sqrt6 estimate (random mode)")->check(CLI::NonNegativeNumber);
  auto* dim4_s_opt = dim4->add_option("--scalar", dim4_scalar, "scalar curvature for the pinching verdict");

  std::vector<int> bounds_ns;
  long bounds_samples = -1;
  auto* bounds = app.add_subcommand("bounds", "random audit of the cubic Weyl bounds plus the optimizer oracle");
  bounds->add_option("--n", bounds_ns, "dimensions (default 5..8)")->check(CLI::Range(5, 12));
  bounds->add_option("--samples", bounds_samples, "Weyl samples per dimension (default --trials)");

  int const_n = 0;
  bool const_asym = false;
  auto* cons = app.add_subcommand("constants", "pinching constants table");
  cons->add_option("n", const_n, "dimension >= 4")->required();
  cons->add_flag("--asymptotic", const_asym, "also check the large-n ratios at n = 10000");

  std::string pinch_input;
  auto* pinch = app.add_subcommand("pinch", "pointwise and norm pinching verdicts");
  pinch->add_option("input", pinch_input, "operator JSON file of a curvature tensor, or a model spec")->required();

  double gap_w = 0, gap_e = 0, gap_l = 0, gap_d = 0;
  int gap_n = 0;
  auto* gap = app.add_subcommand("gap", "integral gap verdict from user-supplied norms");
  gap->add_option("normW", gap_w, "L^(n/2) norm of W")->required();
  gap->add_option("normE", gap_e, "L^(n/2) norm of E")->required();
  gap->add_option("lambda", gap_l, "Yamabe invariant")->required();
  gap->add_option("n", gap_n, "dimension")->required();
  auto* gap_d_opt = gap->add_option("--d", gap_d, "free parameter d for the rigidity terms");

  std::string chart_arg, chart_center, chart_record;
  double chart_h = 1e-3;
  int chart_order = 2;
  auto* chart = app.add_subcommand("chart", "finite-difference curvature of a coordinate metric");
  chart->set_help_flag("--help", "print this help message and exit");  // -h is the step option here
  chart->add_option("metric", chart_arg, "preset (euclidean:n, sphere-stereo:n, product-spheres:p:q:r1:r2, "
                                         "perturbed:n:amp) or grid JSON file")->required();
  chart->add_option("--h", chart_h, "step size")->check(CLI::PositiveNumber);
  chart->add_option("--order", chart_order, "stencil order")->check(CLI::IsMember({2, 4}));
  chart->add_option("--center", chart_center, "comma-separated center coordinates");
  chart->add_option("--record", chart_record, "write the evaluated nodes as a grid JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format fmt = parse_format(cfg.format);
    const Tolerances tol = build_tolerances(cfg.tol_overrides);
    auto* sub = app.get_subcommands().front();
    Report rep(sub->get_name(), cfg, tol);

    if (sub == identities) {
      if (!id_input.empty()) {
        rep.arg("input", id_input);
        rep.add("identities", identities_on_operator(operator_from_json(read_json_file(id_input), kAlgebraicTol, false), tol));
      } else {
        if (id_ns.empty()) id_ns = range(4, 8);
        rep.arg("n", id_ns);
        rep.add("identities", identities_suite(id_ns, cfg.trials, cfg.seed, tol));
      }
    } else if (sub == model) {
      const ModelSpec spec = parse_model_spec(model_spec);
      rep.arg("spec", spec.describe());
      rep.add("model", model_suite(spec, tol));
    } else if (sub == dim4) {
      if (dim4_input == "random") {
        rep.arg("samples", dim4_samples);
        rep.add("dim4", dim4_suite(cfg.trials, dim4_samples, cfg.seed, tol));
      } else {
        rep.arg("input", dim4_input);
        const AlgebraicOperator2Forms op = operator_from_json(read_json_file(dim4_input), kAlgebraicTol, false);
        SuiteResult r = dim4_on_operator(op, tol);
        if (r.passed()) {
          const CurvatureTensor w = CurvatureTensor::assume_valid(AlgebraicOperator2Forms::self_adjoint(4, op.matrix(), 1.0));
          rep.note("normal_form", ojson::parse(to_json(berger_normal_form(w)).dump()));
        }
        if (r.passed() && *dim4_s_opt) {
          rep.arg("scalar", dim4_scalar);
          const PinchVerdict v = pinch_verdict_dim4(r.values.at("omega_plus"), dim4_scalar);
          r.values["pinch.condition"] = v.condition_value;
          r.values["pinch.threshold"] = v.threshold;
          r.values["pinch.satisfied"] = v.satisfied ? 1.0 : 0.0;
          r.values["pinch.strict"] = v.strict ? 1.0 : 0.0;
        }
        rep.add("dim4", r);
      }
    } else if (sub == bounds) {
      if (bounds_ns.empty()) bounds_ns = range(5, 8);
      const long samples = bounds_samples >= 0 ? bounds_samples : cfg.trials;
      rep.arg("n", bounds_ns);
      rep.arg("samples", samples);
      rep.add("bounds", bounds_suite(bounds_ns, samples, cfg.seed, tol));
      rep.add("wcubic", wcubic_suite(range(2, 10), {0.5, 1.0, 2.0}, cfg.seed, tol));
    } else if (sub == cons) {
      rep.arg("n", const_n);
      rep.add("constants", constants_suite(const_n, tol));
      if (const_asym) rep.add("asymptotic", asymptotics_suite(10000, tol));
    } else if (sub == pinch) {
      const CurvatureTensor r = curvature_argument(pinch_input, rep);
      rep.add("pinch", pinch_section(r));
    } else if (sub == gap) {
      rep.arg("normW", gap_w);
      rep.arg("normE", gap_e);
      rep.arg("lambda", gap_l);
      rep.arg("n", gap_n);
      SuiteResult r;
      const PinchVerdict v = gap_verdict_integral(gap_w, gap_e, gap_l, gap_n);
      r.values["condition"] = v.condition_value;
      r.values["threshold"] = v.threshold;
      r.values["satisfied"] = v.satisfied ? 1.0 : 0.0;
      r.values["strict"] = v.strict ? 1.0 : 0.0;
      rep.note("verdict_kind", to_string(v.which));
      if (*gap_d_opt) {
        rep.arg("d", gap_d);
        const IntegralRigidityTerms t = integral_rigidity_terms(gap_w, gap_e, gap_l, gap_n, gap_d);
        r.values["rigidity.c1"] = t.c1;
        r.values["rigidity.c2"] = t.c2;
        r.values["rigidity.lhs"] = t.lhs;
        r.values["rigidity.rhs"] = t.rhs;
        r.values["rigidity.hypothesis_holds"] = t.hypothesis_holds ? 1.0 : 0.0;
        r.values["rigidity.gradient_factor"] = t.gradient_factor;
        r.values["rigidity.scalar_factor"] = t.scalar_factor;
      }
      rep.add("gap", r);
    } else if (sub == chart) {
      ChartMetric m = is_file(chart_arg) ? grid_file_metric(read_json_file(chart_arg), chart_arg) : chart_preset(chart_arg);
      require_min_dim(m.n, 4, "chart");
      GridSpec grid = default_grid(m, chart_h, chart_order);
      if (!chart_center.empty()) grid.center = parse_center(chart_center, m.n).cast<double>();
      auto log = std::make_shared<std::vector<std::pair<VecL, MatL>>>();
      if (!chart_record.empty()) m = recording_metric(m, log);
      rep.arg("metric", m.tag);
      rep.arg("h", chart_h);
      rep.arg("order", chart_order);
      rep.arg("center", std::vector<double>(grid.center.data(), grid.center.data() + grid.center.size()));
      rep.note("harmonic_weyl", m.harmonic_weyl);
      rep.add("chart", chart_suite(m, grid, tol));
      if (!chart_record.empty()) {
        std::ofstream rec(chart_record);
        if (!rec) throw InputError("cannot write '" + chart_record + "'");
        rec << grid_file_json(m.n, *log).dump() << "\n";
      }
    }

    const std::string text = rep.render(fmt);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(cfg.out, std::ios::binary);
      if (!os) throw InputError("cannot write '" + cfg.out + "'");
      os << text;
    }
    if (!rep.passed()) std::cerr << "curvlab: assertion failure\n";
    return rep.passed() ? 0 : 1;
  } catch (const InvariantError& e) {
    nlohmann::ordered_json j{{"tool", "curvlab"}, {"status", "fail"}, {"failures", {std::string("invariant: ") + e.what()}}};
    if (cfg.out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream(cfg.out, std::ios::binary) << j.dump(2) << "\n";
    }
    std::cerr << "curvlab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "curvlab: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
