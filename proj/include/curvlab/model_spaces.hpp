#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "curvlab/contractions.hpp"

namespace curvlab {

enum class ModelKind { sphere, hyperbolic, euclidean, product, fubini_study };

struct ModelFactor {
  ModelKind kind;  // sphere or hyperbolic
  int dim;
  double radius;
};

/// Homogeneous model metric; curvature is evaluated at one point in an adapted orthonormal frame.
struct ModelSpec {
  ModelKind kind = ModelKind::sphere;
  int n = 0;
  double radius = 1.0;
  std::vector<ModelFactor> factors;  // product only
  int complex_dim = 0;               // fubini_study only

  std::string describe() const;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline int parse_int(const std::string& s, const std::string& ctx) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InputError("model spec '" + ctx + "': expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw InputError("model spec '" + ctx + "': trailing characters in '" + s + "'");
  return v;
}

inline double parse_double(const std::string& s, const std::string& ctx) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("model spec '" + ctx + "': expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw InputError("model spec '" + ctx + "': trailing characters in '" + s + "'");
  return v;
}

inline std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline ModelFactor parse_factor(const std::string& s, const std::string& ctx) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw InputError("model spec '" + ctx + "': factor must be kind:dim:radius");
  ModelFactor f{};
  if (parts[0] == "sphere") {
    f.kind = ModelKind::sphere;
  } else if (parts[0] == "hyperbolic") {
    f.kind = ModelKind::hyperbolic;
  } else {
    throw InputError("model spec '" + ctx + "': product factors must be sphere or hyperbolic");
  }
  f.dim = parse_int(parts[1], ctx);
  f.radius = parse_double(parts[2], ctx);
  if (f.dim < 2) throw InputError("model spec '" + ctx + "': product factors need dimension >= 2");
  if (!(f.radius > 0)) throw InputError("model spec '" + ctx + "': radius must be positive");
  return f;
}

}  // namespace detail

/// Parses "sphere:n:r", "hyperbolic:n:r", "euclidean:n", "fubini_study:m" and
/// "product:kind:dim:r,kind:dim:r,...".
inline ModelSpec parse_model_spec(const std::string& text) {
  ModelSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto parts = detail::split(rest, ':');
  if (head == "sphere" || head == "hyperbolic") {
    if (parts.size() != 2) throw InputError("model spec '" + text + "': expected " + head + ":n:radius");
    spec.kind = head == "sphere" ? ModelKind::sphere : ModelKind::hyperbolic;
    spec.n = detail::parse_int(parts[0], text);
    spec.radius = detail::parse_double(parts[1], text);
    if (!(spec.radius > 0)) throw InputError("model spec '" + text + "': radius must be positive");
  } else if (head == "euclidean") {
    if (parts.size() != 1) throw InputError("model spec '" + text + "': expected euclidean:n");
    spec.kind = ModelKind::euclidean;
    spec.n = detail::parse_int(parts[0], text);
  } else if (head == "fubini_study") {
    if (parts.size() != 1) throw InputError("model spec '" + text + "': expected fubini_study:m");
    spec.kind = ModelKind::fubini_study;
    spec.complex_dim = detail::parse_int(parts[0], text);
    if (spec.complex_dim < 2) throw InputError("model spec '" + text + "': complex dimension must be >= 2");
    spec.n = 2 * spec.complex_dim;
  } else if (head == "product") {
    spec.kind = ModelKind::product;
    if (rest.empty()) throw InputError("model spec '" + text + "': product needs factors");
    for (const auto& f : detail::split(rest, ',')) spec.factors.push_back(detail::parse_factor(f, text));
    if (spec.factors.size() < 2) throw InputError("model spec '" + text + "': product needs at least two factors");
    for (const auto& f : spec.factors) spec.n += f.dim;
  } else {
    throw InputError("model spec '" + text + "': unknown kind '" + head + "'");
  }
  if (spec.n < 3) throw InputError("model spec '" + text + "': total dimension must be >= 3");
  return spec;
}

inline std::string ModelSpec::describe() const {
  auto kind_name = [](ModelKind k) { return k == ModelKind::sphere ? std::string("sphere") : std::string("hyperbolic"); };
  switch (kind) {
    case ModelKind::sphere:
    case ModelKind::hyperbolic:
      return kind_name(kind) + ":" + std::to_string(n) + ":" + detail::fmt_num(radius);
    case ModelKind::euclidean:
      return "euclidean:" + std::to_string(n);
    case ModelKind::fubini_study:
      return "fubini_study:" + std::to_string(complex_dim);
    case ModelKind::product: {
      std::string s = "product:";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += kind_name(factors[i].kind) + ":" + std::to_string(factors[i].dim) + ":" + detail::fmt_num(factors[i].radius);
      }
      return s;
    }
  }
  return "";
}

struct CurvaturePackage {
  CurvatureTensor R;
  SymmetricForm2 Rc;
  double S;
  bool is_locally_symmetric;
};

namespace detail {

/// (kappa/2) g_B o g_B for the block of coordinates [begin, begin + dim).
inline AlgebraicOperator2Forms block_space_form(int n, int begin, int dim, double kappa) {
  SymmetricForm2 gb(n);
  for (int i = begin; i < begin + dim; ++i) gb.set(i, i, 1.0);
  return (0.5 * kappa) * kulkarni_nomizu(gb, gb).op();
}

inline double sectional(ModelKind k, double radius) {
  return (k == ModelKind::sphere ? 1.0 : -1.0) / (radius * radius);
}

}  // namespace detail

inline CurvaturePackage model_curvature(const ModelSpec& spec) {
  const int n = spec.n;
  if (n < 3) throw InputError("model_curvature: dimension must be >= 3");
  AlgebraicOperator2Forms r(n);
  switch (spec.kind) {
    case ModelKind::sphere:
    case ModelKind::hyperbolic:
      if (!(spec.radius > 0)) throw InputError("model_curvature: radius must be positive");
      r = detail::block_space_form(n, 0, n, detail::sectional(spec.kind, spec.radius));
      break;
    case ModelKind::euclidean:
      break;
    case ModelKind::product: {
      int begin = 0;
      for (const auto& f : spec.factors) {
        if (f.dim < 2 || !(f.radius > 0)) throw InputError("model_curvature: invalid product factor");
        r += detail::block_space_form(n, begin, f.dim, detail::sectional(f.kind, f.radius));
        begin += f.dim;
      }
      if (begin != n) throw InputError("model_curvature: factor dimensions do not add up to n");
      break;
    }
    case ModelKind::fubini_study: {
      // R = g_ik g_jl - g_il g_jk + w_ik w_jl - w_il w_jk + 2 w_ij w_kl, holomorphic sectional curvature 4.
      if (n != 2 * spec.complex_dim) throw InputError("model_curvature: fubini_study needs n = 2m");
      Eigen::MatrixXd om = Eigen::MatrixXd::Zero(n, n);
      for (int a = 0; a < spec.complex_dim; ++a) {
        om(2 * a, 2 * a + 1) = -1.0;
        om(2 * a + 1, 2 * a) = 1.0;
      }
      const auto& ps = r.indexing().pairs();
      for (int p = 0; p < r.pairs(); ++p) {
        const auto [i, j] = ps[static_cast<std::size_t>(p)];
        for (int q = 0; q < r.pairs(); ++q) {
          const auto [k, l] = ps[static_cast<std::size_t>(q)];
          const double gg = (i == k && j == l ? 1.0 : 0.0) - (i == l && j == k ? 1.0 : 0.0);
          r.mutable_matrix()(p, q) = gg + om(i, k) * om(j, l) - om(i, l) * om(j, k) + 2.0 * om(i, j) * om(k, l);
        }
      }
      break;
    }
  }
  CurvatureTensor rt(std::move(r));
  SymmetricForm2 rc = ricci_contraction(rt.op());
  const double s = rc.trace();
  return {std::move(rt), std::move(rc), s, true};
}

struct SymmetricSpaceResiduals {
  double r1;  // 2<W, W^2 + W#> - <Rc o g, W^2>
  double r2;  // W(E,E) - (n/(n-2)) E^3 - S|E|^2/(n-1)
  double weyl_norm_sq;
  double e_norm_sq;
};

/// Pointwise residuals that must vanish on a locally symmetric space.
inline SymmetricSpaceResiduals symmetric_space_identity_report(const CurvaturePackage& pkg) {
  if (!pkg.is_locally_symmetric) {
    throw InvariantError("symmetric_space_identity_report: package is not locally symmetric");
  }
  const int n = pkg.R.n();
  const SymmetricForm2 g = SymmetricForm2::identity(n);
  const SymmetricForm2 e = pkg.Rc.trace_free();
  CurvatureTensor w = CurvatureTensor::zero(n);
  if (n >= 4) w = decompose(pkg.R).weyl;
  const AlgebraicOperator2Forms w2 = square(w.op());
  const double r1 = 2.0 * inner(w.op(), w2 + sharp(w.op())) - inner(kulkarni_nomizu(pkg.Rc, g).op(), w2);
  const QuadraticForms qf = quadratic_forms(w.op(), e);
  const double r2 = qf.W_AA - (static_cast<double>(n) / (n - 2)) * qf.A_cubed - pkg.S * norm_sq(e) / (n - 1);
  return {r1, r2, norm_sq(w), norm_sq(e)};
}

}  // namespace curvlab
