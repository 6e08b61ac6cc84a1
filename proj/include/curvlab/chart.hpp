#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/derivative_tensors.hpp"
#include "curvlab/model_spaces.hpp"

namespace curvlab {

using real_t = long double;
using MatL = Eigen::Matrix<real_t, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<real_t, Eigen::Dynamic, 1>;

/// Metric on a coordinate chart, evaluated pointwise.
struct ChartMetric {
  int n = 0;
  std::string tag;
  bool harmonic_weyl = false;  // true only for presets known to have harmonic Weyl curvature
  std::function<MatL(const VecL&)> eval;
  VecL default_center;
  std::optional<double> reference_scalar;  // analytic S where constant
  std::optional<ModelSpec> reference_model;
};

struct GridSpec {
  Eigen::VectorXd center;
  double h = 1e-3;
  int order = 2;  // 2 or 4
};

struct ChartOptions {
  bool laplacian = true;       // Delta |W|^2 from second differences of |W|^2
  bool ricci_identity = true;  // commutator check on nabla^2 Rc
};

/// Curvature data at the grid center in the Gram-orthonormalized coordinate frame.
struct ChartCurvatureField {
  int n;
  double h;
  int order;
  std::string tag;
  bool harmonic_weyl;
  Eigen::MatrixXd frame;  // row a: coordinate components of the frame vector e_a
  CurvatureTensor R;
  SymmetricForm2 Rc;
  double S;
  CurvatureDecomposition decomposition;
  CovDerivCurvature nabla_R;
  DerivativePack pack;
  std::optional<double> laplacian_w_sq;
  std::optional<double> ricci_identity_residual;
};

namespace detail {

using Arr = std::vector<real_t>;
using Off = std::vector<int>;

inline void axpy(Arr& y, real_t a, const Arr& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

struct Stencil {
  std::vector<std::pair<int, real_t>> d1;
  std::vector<std::pair<int, real_t>> d2;
};

inline Stencil make_stencil(int order) {
  if (order == 2) return {{{-1, -0.5L}, {1, 0.5L}}, {{-1, 1.0L}, {0, -2.0L}, {1, 1.0L}}};
  if (order == 4) {
    return {{{-2, 1.0L / 12}, {-1, -8.0L / 12}, {1, 8.0L / 12}, {2, -1.0L / 12}},
            {{-2, -1.0L / 12}, {-1, 16.0L / 12}, {0, -30.0L / 12}, {1, 16.0L / 12}, {2, -1.0L / 12}}};
  }
  throw InputError("stencil order must be 2 or 4");
}

/// Rotates every slot of a flattened n^k coordinate tensor by T'[a..] = sum_i F(a, i) T[i..].
inline Arr to_frame(const Arr& t, const MatL& f, int n, int rank) {
  Arr cur = t;
  std::size_t stride = 1;
  for (int r = 0; r < rank - 1; ++r) stride *= static_cast<std::size_t>(n);
  for (int slot = 0; slot < rank; ++slot) {
    // slot 0 is the slowest index; rotate index `slot` by reshaping around it
    std::size_t inner = 1;
    for (int r = slot + 1; r < rank; ++r) inner *= static_cast<std::size_t>(n);
    const std::size_t outer = cur.size() / (inner * static_cast<std::size_t>(n));
    Arr next(cur.size(), 0.0L);
    for (std::size_t o = 0; o < outer; ++o)
      for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) {
          const real_t w = f(a, i);
          if (w == 0) continue;
          const std::size_t src = (o * n + static_cast<std::size_t>(i)) * inner;
          const std::size_t dst = (o * n + static_cast<std::size_t>(a)) * inner;
          for (std::size_t q = 0; q < inner; ++q) next[dst + q] += w * cur[src + q];
        }
    cur.swap(next);
  }
  (void)stride;
  return cur;
}

/// Lazily evaluated lattice center + h * offset with cached geometric data.
class ChartLattice {
 public:
  ChartLattice(const ChartMetric& m, const GridSpec& grid)
      : metric_(m), n_(m.n), h_(grid.h), st_(make_stencil(grid.order)), center_(grid.center.cast<real_t>()) {
    if (!(grid.h > 0)) throw InputError("grid step h must be positive");
    if (grid.center.size() != n_) throw DimensionError("grid center has the wrong dimension");
  }

  int n() const { return n_; }

  struct Geo {
    MatL g;
    MatL ginv;
    Arr gamma;    // Gamma^c_{il}, index (c, i, l)
    Arr riem;     // R_ijkl, coordinate components
    Arr ric;      // Rc_jk
    real_t scal;
    std::optional<real_t> wsq;
  };

  const MatL& metric(const Off& o) {
    auto it = g_.find(o);
    if (it != g_.end()) return it->second;
    VecL x = center_;
    for (int i = 0; i < n_; ++i) x(i) += h_ * o[static_cast<std::size_t>(i)];
    MatL g = metric_.eval(x);
    if (g.rows() != n_ || g.cols() != n_) throw DimensionError("metric evaluator returned a matrix of the wrong size");
    g = (0.5L * (g + g.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<MatL> es(g, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0)) throw InvariantError("metric is not positive definite at a stencil node");
    return g_.emplace(o, std::move(g)).first->second;
  }

  Arr metric_arr(const Off& o) {
    const MatL& g = metric(o);
    Arr a(static_cast<std::size_t>(n_ * n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a[static_cast<std::size_t>(i * n_ + j)] = g(i, j);
    return a;
  }

  template <class F>
  Arr diff1(const Off& o, int c, F&& f) {
    Arr out;
    for (const auto& [k, w] : st_.d1) {
      Off p = o;
      p[static_cast<std::size_t>(c)] += k;
      Arr v = f(p);
      if (out.empty()) out.assign(v.size(), 0.0L);
      axpy(out, w / h_, v);
    }
    return out;
  }

  template <class F>
  Arr diff2(const Off& o, int a, int b, F&& f) {
    Arr out;
    if (a == b) {
      for (const auto& [k, w] : st_.d2) {
        Off p = o;
        p[static_cast<std::size_t>(a)] += k;
        Arr v = f(p);
        if (out.empty()) out.assign(v.size(), 0.0L);
        axpy(out, w / (h_ * h_), v);
      }
      return out;
    }
    for (const auto& [k, wk] : st_.d1)
      for (const auto& [l, wl] : st_.d1) {
        Off p = o;
        p[static_cast<std::size_t>(a)] += k;
        p[static_cast<std::size_t>(b)] += l;
        Arr v = f(p);
        if (out.empty()) out.assign(v.size(), 0.0L);
        axpy(out, wk * wl / (h_ * h_), v);
      }
    return out;
  }

  Geo& geo(const Off& o) {
    auto it = geo_.find(o);
    if (it != geo_.end()) return it->second;
    const int n = n_;
    const auto N = static_cast<std::size_t>(n);
    auto gfun = [this](const Off& p) { return metric_arr(p); };
    std::vector<Arr> dg(N);
    for (int c = 0; c < n; ++c) dg[static_cast<std::size_t>(c)] = diff1(o, c, gfun);
    std::vector<Arr> ddg(N * N);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        ddg[static_cast<std::size_t>(a * n + b)] = diff2(o, a, b, gfun);
        ddg[static_cast<std::size_t>(b * n + a)] = ddg[static_cast<std::size_t>(a * n + b)];
      }
    auto DG = [&](int c, int a, int b) { return dg[static_cast<std::size_t>(c)][static_cast<std::size_t>(a * n + b)]; };
    auto DDG = [&](int c, int d, int a, int b) {
      return ddg[static_cast<std::size_t>(c * n + d)][static_cast<std::size_t>(a * n + b)];
    };
    Geo geo;
    geo.g = metric(o);
    geo.ginv = geo.g.inverse();
    // Gamma_{b,il} = (d_i g_bl + d_l g_bi - d_b g_il)/2
    Arr g1(N * N * N);
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          g1[(static_cast<std::size_t>(b) * N + i) * N + l] = 0.5L * (DG(i, b, l) + DG(l, b, i) - DG(b, i, l));
    geo.gamma.assign(N * N * N, 0.0L);
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          real_t s = 0;
          for (int b = 0; b < n; ++b) s += geo.ginv(c, b) * g1[(static_cast<std::size_t>(b) * N + i) * N + l];
          geo.gamma[(static_cast<std::size_t>(c) * N + i) * N + l] = s;
        }
    auto G1 = [&](int b, int i, int l) { return g1[(static_cast<std::size_t>(b) * N + i) * N + l]; };
    auto G2 = [&](int c, int i, int l) { return geo.gamma[(static_cast<std::size_t>(c) * N + i) * N + l]; };
    // R_ijkl = (d_i d_l g_jk + d_j d_k g_il - d_i d_k g_jl - d_j d_l g_ik)/2
    //          + g^{bc}(Gamma_{b,il} Gamma_{c,jk} - Gamma_{b,jl} Gamma_{c,ik})
    geo.riem.assign(N * N * N * N, 0.0L);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            real_t v = 0.5L * (DDG(i, l, j, k) + DDG(j, k, i, l) - DDG(i, k, j, l) - DDG(j, l, i, k));
            for (int b = 0; b < n; ++b) v += G1(b, i, l) * G2(b, j, k) - G1(b, j, l) * G2(b, i, k);
            geo.riem[((static_cast<std::size_t>(i) * N + j) * N + k) * N + l] = v;
          }
    geo.ric.assign(N * N, 0.0L);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        real_t s = 0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) s += geo.ginv(p, q) * geo.riem[((static_cast<std::size_t>(j) * N + p) * N + k) * N + q];
        geo.ric[static_cast<std::size_t>(j) * N + k] = s;
      }
    geo.scal = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) geo.scal += geo.ginv(j, k) * geo.ric[static_cast<std::size_t>(j) * N + k];
    return geo_.emplace(o, std::move(geo)).first->second;
  }

  /// Frame rows: e_a = sum_i F(a, i) d_i with F = L^{-1}, g = L L^T.
  MatL frame(const Off& o) {
    Eigen::LLT<MatL> llt(metric(o));
    const MatL l = llt.matrixL();
    return l.inverse();
  }

  AlgebraicOperator2Forms frame_curvature(const Off& o) {
    const Arr rf = to_frame(geo(o).riem, frame(o), n_, 4);
    return pair_operator_from(rf);
  }

  AlgebraicOperator2Forms pair_operator_from(const Arr& t) const {
    const auto N = static_cast<std::size_t>(n_);
    AlgebraicOperator2Forms op(n_);
    for (int a = 0; a < op.pairs(); ++a) {
      const auto [i, j] = op.indexing().pair(a);
      for (int b = 0; b < op.pairs(); ++b) {
        const auto [k, l] = op.indexing().pair(b);
        op.mutable_matrix()(a, b) = static_cast<double>(t[((static_cast<std::size_t>(i) * N + j) * N + k) * N + l]);
      }
    }
    op.mutable_matrix() = 0.5 * (op.matrix() + op.matrix().transpose()).eval();
    return op;
  }

  /// |W|^2 at an offset, from the frame curvature there.
  real_t weyl_norm_sq(const Off& o) {
    Geo& gg = geo(o);
    if (!gg.wsq) {
      CurvatureTensor r = bianchi_project(frame_curvature(o)).kerb;
      gg.wsq = static_cast<real_t>(norm_sq(decompose(r).weyl));
    }
    return *gg.wsq;
  }

  /// nabla_a Rc_jk in coordinates, index (a, j, k).
  Arr nabla_ric(const Off& o) {
    auto it = nric_.find(o);
    if (it != nric_.end()) return it->second;
    const int n = n_;
    const auto N = static_cast<std::size_t>(n);
    const Geo& gc = geo(o);
    const Arr gam = gc.gamma;
    const Arr ric = gc.ric;
    Arr out(N * N * N, 0.0L);
    for (int a = 0; a < n; ++a) {
      Arr d = diff1(o, a, [this](const Off& p) { return geo(p).ric; });
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          real_t v = d[static_cast<std::size_t>(j) * N + k];
          for (int q = 0; q < n; ++q)
            v -= gam[(static_cast<std::size_t>(q) * N + a) * N + j] * ric[static_cast<std::size_t>(q) * N + k] +
                 gam[(static_cast<std::size_t>(q) * N + a) * N + k] * ric[static_cast<std::size_t>(j) * N + q];
          out[(static_cast<std::size_t>(a) * N + j) * N + k] = v;
        }
    }
    return nric_.emplace(o, std::move(out)).first->second;
  }

  real_t step() const { return h_; }

 private:
  const ChartMetric& metric_;
  int n_;
  real_t h_;
  Stencil st_;
  VecL center_;
  std::map<Off, MatL> g_;
  std::map<Off, Geo> geo_;
  std::map<Off, Arr> nric_;
};

}  // namespace detail

/// Finite-difference curvature calculus at the grid center.
inline ChartCurvatureField curvature_field(const ChartMetric& metric, const GridSpec& grid, const ChartOptions& opt = {}) {
  const int n = metric.n;
  require_min_dim(n, 4, "curvature_field");
  detail::ChartLattice lat(metric, grid);
  const auto N = static_cast<std::size_t>(n);
  const detail::Off zero(N, 0);
  const auto& g0 = lat.geo(zero);
  const detail::Arr gam = g0.gamma;
  const detail::Arr riem = g0.riem;
  const MatL f = lat.frame(zero);

  // nabla_m R_ijkl = d_m R_ijkl - Gamma^p_mi R_pjkl - Gamma^p_mj R_ipkl - Gamma^p_mk R_ijpl - Gamma^p_ml R_ijkp
  detail::Arr dr(N * N * N * N * N, 0.0L);
  auto R4 = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return riem[((i * N + j) * N + k) * N + l]; };
  auto GM = [&](std::size_t c, std::size_t i, std::size_t l) { return gam[(c * N + i) * N + l]; };
  for (std::size_t m = 0; m < N; ++m) {
    const detail::Arr d = lat.diff1(zero, static_cast<int>(m), [&lat](const detail::Off& p) { return lat.geo(p).riem; });
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
          for (std::size_t l = 0; l < N; ++l) {
            real_t v = d[((i * N + j) * N + k) * N + l];
            for (std::size_t p = 0; p < N; ++p)
              v -= GM(p, m, i) * R4(p, j, k, l) + GM(p, m, j) * R4(i, p, k, l) + GM(p, m, k) * R4(i, j, p, l) +
                   GM(p, m, l) * R4(i, j, k, p);
            dr[(((m * N + i) * N + j) * N + k) * N + l] = v;
          }
  }
  const detail::Arr drf = detail::to_frame(dr, f, n, 5);
  std::vector<AlgebraicOperator2Forms> slices;
  const std::size_t n4 = N * N * N * N;
  for (std::size_t m = 0; m < N; ++m) {
    detail::Arr part(drf.begin() + static_cast<std::ptrdiff_t>(m * n4), drf.begin() + static_cast<std::ptrdiff_t>((m + 1) * n4));
    slices.push_back(lat.pair_operator_from(part));
  }
  CovDerivCurvature nabla_r(std::move(slices));

  CurvatureTensor r = bianchi_project(lat.frame_curvature(zero)).kerb;
  SymmetricForm2 rc = ricci_contraction(r.op());
  CurvatureDecomposition dec = decompose(r);
  DerivativePack pack = derivative_pack(nabla_r);

  std::optional<double> lap;
  if (opt.laplacian) {
    auto wfun = [&lat](const detail::Off& p) { return detail::Arr{lat.weyl_norm_sq(p)}; };
    real_t acc = 0;
    std::vector<real_t> grad(N);
    for (int c = 0; c < n; ++c) grad[static_cast<std::size_t>(c)] = lat.diff1(zero, c, wfun)[0];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        real_t hess = lat.diff2(zero, a, b, wfun)[0];
        for (int c = 0; c < n; ++c) hess -= GM(static_cast<std::size_t>(c), static_cast<std::size_t>(a), static_cast<std::size_t>(b)) * grad[static_cast<std::size_t>(c)];
        acc += g0.ginv(a, b) * hess;
      }
    lap = static_cast<double>(acc);
  }

  std::optional<double> ricci_res;
  if (opt.ricci_identity) {
    // T_bajk = nabla_b nabla_a Rc_jk; [nabla_b, nabla_a] Rc_jk = R_baj^p Rc_pk + R_bak^p Rc_jp
    const detail::Arr nr0 = lat.nabla_ric(zero);
    const detail::Arr ric = g0.ric;
    auto NR = [&](std::size_t a, std::size_t j, std::size_t k) { return nr0[(a * N + j) * N + k]; };
    detail::Arr t(N * N * N * N, 0.0L);
    for (std::size_t b = 0; b < N; ++b) {
      const detail::Arr d = lat.diff1(zero, static_cast<int>(b), [&lat](const detail::Off& p) { return lat.nabla_ric(p); });
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = 0; k < N; ++k) {
            real_t v = d[(a * N + j) * N + k];
            for (std::size_t q = 0; q < N; ++q)
              v -= GM(q, b, a) * NR(q, j, k) + GM(q, b, j) * NR(a, q, k) + GM(q, b, k) * NR(a, j, q);
            t[((b * N + a) * N + j) * N + k] = v;
          }
    }
    real_t worst = 0;
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = 0; k < N; ++k) {
            real_t rhs = 0;
            for (std::size_t p = 0; p < N; ++p)
              for (std::size_t q = 0; q < N; ++q)
                rhs += g0.ginv(static_cast<int>(p), static_cast<int>(q)) *
                       (R4(b, a, j, q) * ric[p * N + k] + R4(b, a, k, q) * ric[j * N + p]);
            const real_t lhs = t[((b * N + a) * N + j) * N + k] - t[((a * N + b) * N + j) * N + k];
            worst = std::max(worst, std::abs(lhs - rhs));
          }
    ricci_res = static_cast<double>(worst);
  }

  Eigen::MatrixXd frame = f.cast<double>();
  const double s = rc.trace();
  return {n, grid.h, grid.order, metric.tag, metric.harmonic_weyl, std::move(frame), std::move(r), std::move(rc), s,
          std::move(dec), std::move(nabla_r), std::move(pack), lap, ricci_res};
}

struct WeylDerivativePack {
  TwoFormOneForm deltaW;
  TwoFormOneForm P;
  TwoFormOneForm Q;
  ThreeTwoTensor B_W;
  ThreeTwoTensor B_R;
};

inline WeylDerivativePack weyl_derivative_pack(const ChartCurvatureField& f) {
  return {f.pack.delta_w, f.pack.p, f.pack.q, f.pack.b_w, f.pack.b_r};
}

/// |nabla |W||^2 with nabla_m |W| = <nabla_m W, W>/|W|; zero where |W| vanishes.
inline double grad_norm_of_weyl_norm_sq(const CovDerivCurvature& dw, const CurvatureTensor& w) {
  const double wn = norm(w);
  if (wn <= 1e-300) return 0.0;
  double s = 0.0;
  for (int m = 0; m < dw.n(); ++m) {
    const double c = inner(dw.slice(m), w.op()) / wn;
    s += c * c;
  }
  return s;
}

struct ChartResiduals {
  std::map<std::string, double> values;
  bool classical_kato_holds = true;
  std::optional<bool> improved_kato_holds;  // harmonic-Weyl presets, or delta W below the floor
  std::optional<double> bochner;            // harmonic-Weyl presets only
};

/// Residual map over the identities that hold on every chart, plus the Bochner residual when allowed.
inline ChartResiduals identity_residual_report(const ChartCurvatureField& f, double delta_w_floor = 1e-6) {
  const int n = f.n;
  const auto& pk = f.pack;
  const CurvatureTensor& w = f.decomposition.weyl;
  ChartResiduals out;
  auto& v = out.values;
  const double grad_w_sq = norm_sq(pk.nabla_w);
  const double grad_abs_sq = grad_norm_of_weyl_norm_sq(pk.nabla_w, w);
  const ThreeTwoTensor expected_bw = (1.0 / (n - 3)) * circ_prime(pk.delta_w);
  v["weyl_norm"] = norm(w);
  v["scalar"] = f.S;
  v["second_bianchi_R"] = norm(pk.b_r);
  v["bw_minus_circ_prime"] = norm(pk.b_w - expected_bw);
  v["bw_norm_gap"] = norm_sq(pk.b_w) - norm_sq(pk.delta_w) / (n - 3);
  v["bw_vs_grad_margin"] = 3.0 * grad_w_sq - norm_sq(pk.b_w);
  v["delta_w_formula"] = norm(pk.delta_w + ((n - 3.0) / (n - 2.0)) * (pk.p + (1.0 / (2.0 * (n - 1))) * pk.q));
  v["delta_w_norm"] = norm(pk.delta_w);
  v["grad_w_sq"] = grad_w_sq;
  v["grad_abs_w_sq"] = grad_abs_sq;
  v["kato_classical_margin"] = grad_w_sq - grad_abs_sq;
  out.classical_kato_holds = grad_w_sq >= grad_abs_sq - 1e-12 * std::max(1.0, grad_w_sq);
  if (f.harmonic_weyl || norm(pk.delta_w) <= delta_w_floor) {
    const double m = grad_w_sq - (n + 1.0) / (n - 1.0) * grad_abs_sq;
    v["kato_improved_margin"] = m;
    out.improved_kato_holds = m >= -1e-10;
  }
  if (f.ricci_identity_residual) v["ricci_identity"] = *f.ricci_identity_residual;
  if (f.harmonic_weyl && f.laplacian_w_sq) {
    const AlgebraicOperator2Forms w2 = square(w.op());
    const double b = *f.laplacian_w_sq - 2.0 * grad_w_sq + 4.0 * inner(w.op(), w2 + sharp(w.op())) -
                     2.0 * inner(kulkarni_nomizu(f.Rc, SymmetricForm2::identity(n)).op(), w2);
    out.bochner = b;
    v["bochner"] = b;
  }
  return out;
}

/// Delta|W|^2 - 2|nabla W|^2 + 4<W, W^2 + W#> - 2<Rc o g, W^2>; refused unless the metric is tagged harmonic-Weyl.
inline double bochner_residual(const ChartCurvatureField& f) {
  if (!f.harmonic_weyl) throw InvariantError("bochner_residual: metric is not tagged harmonic-Weyl");
  if (!f.laplacian_w_sq) throw InvariantError("bochner_residual: field computed without the Laplacian");
  return *identity_residual_report(f).bochner;
}

// ---- presets ----

inline ChartMetric euclidean_chart(int n) {
  ChartMetric m;
  m.n = n;
  m.tag = "euclidean:" + std::to_string(n);
  m.harmonic_weyl = true;
  m.eval = [n](const VecL&) { return MatL(MatL::Identity(n, n)); };
  m.default_center = VecL::Zero(n);
  m.reference_scalar = 0.0;
  m.reference_model = parse_model_spec("euclidean:" + std::to_string(n));
  return m;
}

/// Unit sphere in stereographic coordinates: g = 4/(1+|x|^2)^2 delta.
inline ChartMetric sphere_stereo_chart(int n) {
  ChartMetric m;
  m.n = n;
  m.tag = "sphere-stereo:" + std::to_string(n);
  m.harmonic_weyl = true;
  m.eval = [n](const VecL& x) {
    const real_t f = 2.0L / (1.0L + x.squaredNorm());
    return MatL(f * f * MatL::Identity(n, n));
  };
  m.default_center = VecL(n);
  for (int i = 0; i < n; ++i) m.default_center(i) = 0.05L * (i + 2) * (i % 2 == 0 ? 1 : -1);
  m.reference_scalar = static_cast<double>(n) * (n - 1);
  m.reference_model = parse_model_spec("sphere:" + std::to_string(n) + ":1");
  return m;
}

/// S^p(r1) x S^q(r2) in spherical coordinates on each factor.
inline ChartMetric product_spheres_chart(int p, int q, double r1, double r2) {
  if (p < 2 || q < 2) throw InputError("product-spheres: factor dimensions must be >= 2");
  if (!(r1 > 0) || !(r2 > 0)) throw InputError("product-spheres: radii must be positive");
  ChartMetric m;
  m.n = p + q;
  m.tag = "product-spheres:" + std::to_string(p) + ":" + std::to_string(q) + ":" + detail::fmt_num(r1) + ":" +
          detail::fmt_num(r2);
  m.harmonic_weyl = true;
  const real_t a = r1;
  const real_t b = r2;
  m.eval = [p, q, a, b](const VecL& x) {
    MatL g = MatL::Zero(p + q, p + q);
    real_t w = a * a;
    for (int k = 0; k < p; ++k) {
      g(k, k) = w;
      w *= std::sin(x(k)) * std::sin(x(k));
    }
    w = b * b;
    for (int k = 0; k < q; ++k) {
      g(p + k, p + k) = w;
      w *= std::sin(x(p + k)) * std::sin(x(p + k));
    }
    return g;
  };
  m.default_center = VecL(p + q);
  for (int k = 0; k < p; ++k) m.default_center(k) = 1.0L + 0.1L * k;
  for (int k = 0; k < q; ++k) m.default_center(p + k) = 1.1L + 0.1L * k;
  m.reference_scalar = p * (p - 1.0) / (r1 * r1) + q * (q - 1.0) / (r2 * r2);
  m.reference_model = parse_model_spec("product:sphere:" + std::to_string(p) + ":" + detail::fmt_num(r1) + ",sphere:" +
                                       std::to_string(q) + ":" + detail::fmt_num(r2));
  return m;
}

/// g_ij = delta_ij + amp sin((i+1) x_j + (j+1) x_i + 0.3 (i+j+1)); generic, not harmonic-Weyl.
inline ChartMetric perturbed_chart(int n, double amp) {
  ChartMetric m;
  m.n = n;
  m.tag = "perturbed:" + std::to_string(n) + ":" + detail::fmt_num(amp);
  m.harmonic_weyl = false;
  const real_t ea = amp;
  m.eval = [n, ea](const VecL& x) {
    MatL g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = (i == j ? 1.0L : 0.0L) + ea * std::sin((i + 1) * x(j) + (j + 1) * x(i) + 0.3L * (i + j + 1));
    return g;
  };
  m.default_center = VecL(n);
  for (int i = 0; i < n; ++i) m.default_center(i) = 0.1L * (i + 1);
  return m;
}

/// "euclidean:n", "sphere-stereo:n", "product-spheres:p:q:r1:r2", "perturbed:n:amp".
inline ChartMetric chart_preset(const std::string& text) {
  const auto parts = detail::split(text, ':');
  if (parts.empty()) throw InputError("empty chart preset");
  const std::string& k = parts[0];
  if (k == "euclidean" && parts.size() == 2) return euclidean_chart(detail::parse_int(parts[1], text));
  if (k == "sphere-stereo" && parts.size() == 2) return sphere_stereo_chart(detail::parse_int(parts[1], text));
  if (k == "product-spheres" && parts.size() == 5) {
    return product_spheres_chart(detail::parse_int(parts[1], text), detail::parse_int(parts[2], text),
                                 detail::parse_double(parts[3], text), detail::parse_double(parts[4], text));
  }
  if (k == "perturbed" && parts.size() == 3) {
    return perturbed_chart(detail::parse_int(parts[1], text), detail::parse_double(parts[2], text));
  }
  throw InputError("unknown chart preset '" + text + "'");
}

inline GridSpec default_grid(const ChartMetric& m, double h = 1e-3, int order = 2) {
  return {m.default_center.cast<double>(), h, order};
}

}  // namespace curvlab
