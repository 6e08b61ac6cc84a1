#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curvlab/chart.hpp"
#include "curvlab/dim4.hpp"

namespace curvlab {

using json = nlohmann::json;

inline json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const AlgebraicOperator2Forms& op) {
  return {{"n", op.n()}, {"basis", "lex-pairs"}, {"matrix", to_json(op.matrix())}};
}

/// {"a": [..], "b": [..], "residual": r}
inline json to_json(const BergerNormalForm& bn) {
  return {{"a", {bn.a(0), bn.a(1), bn.a(2)}}, {"b", {bn.b(0), bn.b(1), bn.b(2)}}, {"residual", bn.residual}};
}

inline Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a non-empty array of rows");
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InputError(std::string(what) + ": ragged matrix");
    for (int c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw InputError(std::string(what) + ": non-numeric entry");
      m(i, c) = v.get<double>();
    }
  }
  return m;
}

inline SymmetricForm2 symmetric_form_from_json(const json& j) {
  return SymmetricForm2::from_matrix(matrix_from_json(j, "symmetric form"));
}

/// Accepts {"n", "basis": "lex-pairs", "matrix"} or the sparse {"n", "components": {"i,j,k,l": v}}
/// with 1-based indices. Sparse entries are completed by antisymmetry and pair symmetry; conflicting
/// entries are rejected. With validate = false a dense matrix is taken as is, asymmetry included.
inline AlgebraicOperator2Forms operator_from_json(const json& j, double tol = kAlgebraicTol, bool validate = true) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) throw InputError("operator: missing integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 2 || n > 64) throw InputError("operator: unsupported dimension " + std::to_string(n));
  if (j.contains("matrix")) {
    if (j.contains("basis") && j["basis"] != "lex-pairs") throw InputError("operator: unknown basis");
    const Eigen::MatrixXd m = matrix_from_json(j["matrix"], "operator matrix");
    const int np = n * (n - 1) / 2;
    if (m.rows() != np || m.cols() != np) throw InputError("operator: matrix must be N x N with N = n(n-1)/2");
    if (!validate) return AlgebraicOperator2Forms(n, m);
    return AlgebraicOperator2Forms::self_adjoint(n, m, tol);
  }
  if (!j.contains("components") || !j["components"].is_object())
    throw InputError("operator: expected 'matrix' or 'components'");
  AlgebraicOperator2Forms op(n);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(op.pairs(), op.pairs());
  for (const auto& [key, val] : j["components"].items()) {
    std::vector<int> ix;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        ix.push_back(std::stoi(tok) - 1);
      } catch (const std::exception&) {
        throw InputError("operator: bad component key '" + key + "'");
      }
    }
    if (ix.size() != 4) throw InputError("operator: component key '" + key + "' needs four indices");
    for (int v : ix)
      if (v < 0 || v >= n) throw InputError("operator: component index out of range in '" + key + "'");
    if (!val.is_number()) throw InputError("operator: non-numeric component '" + key + "'");
    const double x = val.get<double>();
    if (ix[0] == ix[1] || ix[2] == ix[3]) {
      if (std::abs(x) > tol) throw InvariantError("operator: component '" + key + "' violates antisymmetry");
      continue;
    }
    const int a = op.indexing().position(ix[0], ix[1]);
    const int b = op.indexing().position(ix[2], ix[3]);
    const double signed_x = TwoFormIndexing::sign(ix[0], ix[1]) * TwoFormIndexing::sign(ix[2], ix[3]) * x;
    if (seen(a, b) && std::abs(op.matrix()(a, b) - signed_x) > tol * std::max(1.0, std::abs(signed_x)))
      throw InvariantError("operator: component '" + key + "' contradicts an earlier entry");
    op.mutable_matrix()(a, b) = signed_x;
    seen(a, b) = 1;
  }
  for (int a = 0; a < op.pairs(); ++a)
    for (int b = a + 1; b < op.pairs(); ++b) {
      if (seen(a, b) && seen(b, a)) {
        if (std::abs(op.matrix()(a, b) - op.matrix()(b, a)) > tol * std::max(1.0, std::abs(op.matrix()(a, b))))
          throw InvariantError("operator: R_ijkl != R_klij in sparse input");
      } else if (seen(a, b)) {
        op.mutable_matrix()(b, a) = op.matrix()(a, b);
      } else if (seen(b, a)) {
        op.mutable_matrix()(a, b) = op.matrix()(b, a);
      }
    }
  return op;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

/// Wraps a metric so that every evaluated node is appended to `log`.
inline ChartMetric recording_metric(const ChartMetric& base, std::shared_ptr<std::vector<std::pair<VecL, MatL>>> log) {
  ChartMetric m = base;
  auto inner_eval = base.eval;
  m.eval = [inner_eval, log](const VecL& x) {
    MatL g = inner_eval(x);
    log->emplace_back(x, g);
    return g;
  };
  return m;
}

inline json grid_file_json(int n, const std::vector<std::pair<VecL, MatL>>& nodes) {
  json pts = json::array();
  json mats = json::array();
  for (const auto& [x, g] : nodes) {
    pts.push_back(to_json(Eigen::MatrixXd(x.cast<double>().transpose()))[0]);
    mats.push_back(to_json(Eigen::MatrixXd(g.cast<double>())));
  }
  return {{"n", n}, {"points", pts}, {"matrices", mats}};
}

/// Metric given only at the listed nodes; evaluation elsewhere is an error (no interpolation).
inline ChartMetric grid_file_metric(const json& j, const std::string& tag = "grid-file") {
  if (!j.contains("n") || !j.contains("points") || !j.contains("matrices")) {
    throw InputError("grid file: expected fields 'n', 'points', 'matrices'");
  }
  const int n = j["n"].get<int>();
  const json& pts = j["points"];
  const json& mats = j["matrices"];
  if (!pts.is_array() || !mats.is_array() || pts.size() != mats.size() || pts.empty())
    throw InputError("grid file: 'points' and 'matrices' must be equally long, non-empty arrays");
  constexpr double quantum = 1e-9;
  auto key_of = [](const VecL& x) {
    std::vector<long long> k(static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) k[static_cast<std::size_t>(i)] = std::llround(static_cast<double>(x(i)) / quantum);
    return k;
  };
  auto table = std::make_shared<std::map<std::vector<long long>, MatL>>();
  VecL first;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const Eigen::MatrixXd xm = matrix_from_json(json::array({pts[p]}), "grid point");
    if (xm.cols() != n) throw InputError("grid file: point has the wrong dimension");
    const Eigen::MatrixXd g = matrix_from_json(mats[p], "grid matrix");
    if (g.rows() != n || g.cols() != n) throw InputError("grid file: matrix has the wrong size");
    VecL x = xm.row(0).transpose().cast<real_t>();
    if (p == 0) first = x;
    (*table)[key_of(x)] = g.cast<real_t>();
  }
  ChartMetric m;
  m.n = n;
  m.tag = tag;
  m.harmonic_weyl = false;
  m.default_center = first;
  m.eval = [table, key_of](const VecL& x) {
    auto it = table->find(key_of(x));
    if (it == table->end()) throw InputError("grid file: stencil node not present in the file");
    return it->second;
  };
  return m;
}

}  // namespace curvlab
