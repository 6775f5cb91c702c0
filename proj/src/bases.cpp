#include "spikebasis/bases.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spikebasis {

std::string_view to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::orthonormal: return "orthonormal";
    case GroupTag::volume_preserving: return "volume_preserving";
    case GroupTag::general_invertible: return "general_invertible";
  }
  return "general_invertible";
}

GroupTag group_tag_from_string(std::string_view name) {
  if (name == "orthonormal") return GroupTag::orthonormal;
  if (name == "volume_preserving") return GroupTag::volume_preserving;
  if (name == "general_invertible") return GroupTag::general_invertible;
  throw std::invalid_argument("unknown group tag: " + std::string(name));
}

bool is_orthonormal(const Eigen::MatrixXd& q, double tol) {
  if (q.rows() != q.cols()) return false;
  const Eigen::MatrixXd gram = q.transpose() * q;
  return (gram - Eigen::MatrixXd::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff() <= tol;
}

Basis::Basis(Eigen::MatrixXd synthesis, GroupTag tag, Provenance provenance)
    : synthesis_(std::move(synthesis)), tag_(tag), provenance_(std::move(provenance)) {
  if (synthesis_.rows() == 0 || synthesis_.rows() != synthesis_.cols())
    throw std::invalid_argument("Basis: matrix must be square and non-empty");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(synthesis_);
  determinant_ = lu.determinant();
  if (!(std::abs(determinant_) > det_tolerance(dimension())))
    throw std::invalid_argument("Basis: matrix is singular");
  analysis_ = tag_ == GroupTag::orthonormal ? Eigen::MatrixXd(synthesis_.transpose())
                                            : Eigen::MatrixXd(lu.inverse());
  validate();
}

Basis Basis::from_pair(Eigen::MatrixXd synthesis, Eigen::MatrixXd analysis, GroupTag tag,
                       Provenance provenance) {
  if (synthesis.rows() == 0 || synthesis.rows() != synthesis.cols() ||
      analysis.rows() != synthesis.rows() || analysis.cols() != synthesis.cols())
    throw std::invalid_argument("Basis::from_pair: shape mismatch");
  const Index n = synthesis.rows();
  const double residual =
      (analysis * synthesis - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10))
    throw std::invalid_argument("Basis::from_pair: analysis·synthesis is not the identity");
  Basis basis;
  basis.determinant_ = Eigen::FullPivLU<Eigen::MatrixXd>(synthesis).determinant();
  if (!(std::abs(basis.determinant_) > det_tolerance(n)))
    throw std::invalid_argument("Basis::from_pair: matrix is singular");
  basis.synthesis_ = std::move(synthesis);
  basis.analysis_ = std::move(analysis);
  basis.tag_ = tag;
  basis.provenance_ = std::move(provenance);
  basis.validate();
  return basis;
}

Basis Basis::identity(Index n) {
  return Basis(Eigen::MatrixXd::Identity(n, n), GroupTag::orthonormal,
               {"identity", {{"n", n}}});
}

void Basis::validate() const {
  switch (tag_) {
    case GroupTag::orthonormal:
      if (!is_orthonormal(synthesis_))
        throw std::invalid_argument("Basis: tagged orthonormal but BᵀB ≠ I");
      break;
    case GroupTag::volume_preserving:
      if (std::abs(std::abs(determinant_) - 1.0) > kGroupTol)
        throw std::invalid_argument("Basis: tagged volume_preserving but |det| ≠ 1");
      break;
    case GroupTag::general_invertible:
      break;
  }
}

Eigen::VectorXd apply_analysis(const Basis& basis, const Eigen::VectorXd& x) {
  if (x.size() != basis.dimension())
    throw std::invalid_argument("apply_analysis: dimension mismatch");
  return basis.analysis() * x;
}

Eigen::VectorXd apply_synthesis(const Basis& basis, const Eigen::VectorXd& y) {
  if (y.size() != basis.dimension())
    throw std::invalid_argument("apply_synthesis: dimension mismatch");
  return basis.synthesis() * y;
}

bool values_equal(double u, double v, double rel_tol) {
  const double scale = std::max({1.0, std::abs(u), std::abs(v)});
  return std::abs(u - v) <= rel_tol * scale;
}

std::vector<std::vector<Index>> equality_classes(std::span<const double> values, double rel_tol) {
  std::vector<Index> order(values.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values[a] < values[b]; });
  std::vector<std::vector<Index>> classes;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos == 0 || !values_equal(values[order[pos - 1]], values[order[pos]], rel_tol))
      classes.emplace_back();
    classes.back().push_back(order[pos]);
  }
  return classes;
}

RowClassification classify_row(std::span<const double> row, double rel_tol) {
  RowClassification out;
  for (const auto& cls : equality_classes(row, rel_tol))
    out.index.push_back(static_cast<int>(cls.size()));
  std::sort(out.index.begin(), out.index.end());
  out.class_k = static_cast<int>(out.index.size());
  return out;
}

std::vector<double> row_values(const Eigen::MatrixXd& m, Index i) {
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
  return row;
}

Basis householder_dc(int n) {
  if (n < 2) throw std::invalid_argument("householder_dc: n must be at least 2");
  const double off = -2.0 / n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(n, n, off);
  h.diagonal().setConstant(static_cast<double>(n - 2) / n);
  return Basis(std::move(h), GroupTag::orthonormal, {"householder_dc", {{"n", n}}});
}

Eigen::VectorXd householder_dc_apply(const Eigen::VectorXd& x) {
  const double n = static_cast<double>(x.size());
  return x - Eigen::VectorXd::Constant(x.size(), 2.0 * x.sum() / n);
}

std::vector<Basis> lsdb_orthonormal(int n) {
  if (n < 2) throw std::invalid_argument("lsdb_orthonormal: n must be at least 2");
  const Provenance prov{"lsdb_orthonormal", {{"n", n}}};
  Eigen::MatrixXd m(n, n);
  switch (n) {
    case 2: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return {Basis(m, GroupTag::orthonormal, prov)};
    }
    case 3: {
      const double r3 = 1.0 / std::sqrt(3.0), r6 = 1.0 / std::sqrt(6.0), r2 = 1.0 / std::sqrt(2.0);
      m << r3, r6, r2,
           r3, r6, -r2,
           r3, -2.0 * r6, 0.0;
      return {Basis(m, GroupTag::orthonormal, prov)};
    }
    case 4:
      m << 1, 1, 1, 1,
           1, 1, -1, -1,
           1, -1, 1, -1,
           1, -1, -1, 1;
      m *= 0.5;
      return {Basis(m, GroupTag::orthonormal, prov)};
    default: {
      Basis standard(Eigen::MatrixXd::Identity(n, n), GroupTag::orthonormal,
                     {"lsdb_orthonormal", {{"n", n}, {"branch", "standard"}}});
      Basis reflection = householder_dc(n);
      return {std::move(standard), std::move(reflection)};
    }
  }
}

GlLsdbParams GlLsdbParams::uniform(int n, double a, double b, double c) {
  if (n < 2) throw std::invalid_argument("GlLsdbParams: n must be at least 2");
  GlLsdbParams p;
  p.a = a;
  p.b.assign(static_cast<std::size_t>(n - 1), b);
  p.c.assign(static_cast<std::size_t>(n - 1), c);
  return p;
}

Basis lsdb_gl_pair(const GlLsdbParams& params) {
  if (params.b.empty() || params.b.size() != params.c.size())
    throw std::invalid_argument("lsdb_gl_pair: b and c must have the same length n-1 >= 1");
  if (params.a == 0.0) throw std::invalid_argument("lsdb_gl_pair: a must be nonzero");
  for (std::size_t k = 0; k < params.b.size(); ++k)
    if (params.b[k] == params.c[k])
      throw std::invalid_argument("lsdb_gl_pair: b_k must differ from c_k");

  const Index n = static_cast<Index>(params.b.size()) + 1;
  Eigen::MatrixXd analysis(n, n);
  Eigen::MatrixXd synthesis = Eigen::MatrixXd::Zero(n, n);
  analysis.row(0).setConstant(params.a);
  double top_left = 1.0;
  for (Index k = 1; k < n; ++k) {
    const double b = params.b[static_cast<std::size_t>(k - 1)];
    const double c = params.c[static_cast<std::size_t>(k - 1)];
    const double d = 1.0 / (c - b);
    analysis.row(k).setConstant(b);
    analysis(k, k) = c;
    synthesis(0, k) = -d;
    synthesis(k, 0) = -b * d / params.a;
    synthesis(k, k) = d;
    top_left += b * d;
  }
  synthesis(0, 0) = top_left / params.a;

  double det = params.a;
  for (std::size_t k = 0; k < params.b.size(); ++k) det *= params.c[k] - params.b[k];
  const GroupTag tag = std::abs(std::abs(det) - 1.0) <= kGroupTol ? GroupTag::volume_preserving
                                                                   : GroupTag::general_invertible;
  Provenance prov{"lsdb_gl_pair", {{"n", n}, {"a", params.a}, {"b", params.b}, {"c", params.c}}};
  return Basis::from_pair(std::move(synthesis), std::move(analysis), tag, std::move(prov));
}

double gl_lsdb_sl_constraint(std::span<const double> b, std::span<const double> c) {
  if (b.size() != c.size()) throw std::invalid_argument("gl_lsdb_sl_constraint: size mismatch");
  double product = 1.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == c[k]) throw std::invalid_argument("gl_lsdb_sl_constraint: b_k equals c_k");
    product *= c[k] - b[k];
  }
  return 1.0 / product;
}

double delta_determinant(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("delta_determinant: n must be positive");
  return std::pow(a, n - 1) * (a + n * b);
}

namespace {

struct CanonicalColumn {
  Eigen::VectorXd values;
  Index peak = 0;
};

bool lexicographically_less(const Eigen::VectorXd& lhs, const Eigen::VectorXd& rhs,
                            double rel_tol) {
  for (Index i = 0; i < lhs.size(); ++i) {
    if (values_equal(lhs[i], rhs[i], rel_tol)) continue;
    return lhs[i] < rhs[i];
  }
  return false;
}

}  // namespace

Eigen::MatrixXd canonicalize(const Eigen::MatrixXd& basis, double rel_tol) {
  std::vector<CanonicalColumn> columns;
  columns.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index j = 0; j < basis.cols(); ++j) {
    CanonicalColumn col{basis.col(j), 0};
    const double peak = col.values.cwiseAbs().maxCoeff();
    for (Index i = 0; i < col.values.size(); ++i) {
      if (values_equal(std::abs(col.values[i]), peak, rel_tol)) {
        col.peak = i;
        break;
      }
    }
    if (col.values[col.peak] < 0) col.values = -col.values;
    columns.push_back(std::move(col));
  }
  std::stable_sort(columns.begin(), columns.end(),
                   [&](const CanonicalColumn& a, const CanonicalColumn& b) {
                     if (a.peak != b.peak) return a.peak > b.peak;
                     return lexicographically_less(a.values, b.values, rel_tol);
                   });
  Eigen::MatrixXd out(basis.rows(), basis.cols());
  for (Index j = 0; j < out.cols(); ++j) out.col(j) = columns[static_cast<std::size_t>(j)].values;
  return out;
}

bool equal_up_to_signed_permutation(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs,
                                    double tol) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
  return (canonicalize(lhs) - canonicalize(rhs)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace spikebasis
