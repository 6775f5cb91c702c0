#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spikebasis {

using Eigen::Index;

/// Default relative tolerance for deciding that two transform entries are equal.
inline constexpr double kDefaultRelTol = 1e-9;
/// Tolerance for BᵀB = I and for |det B| = 1 checks at construction.
inline constexpr double kGroupTol = 1e-10;

/// Singularity threshold for an n×n matrix.
inline double det_tolerance(Index n) { return 1e-12 * static_cast<double>(n); }

enum class GroupTag { orthonormal, volume_preserving, general_invertible };

std::string_view to_string(GroupTag tag);
GroupTag group_tag_from_string(std::string_view name);

struct Provenance {
  std::string constructor;
  nlohmann::json params = nlohmann::json::object();
};

/// An invertible change of coordinates.
///
/// `synthesis()` holds the basis vectors as columns (B); `analysis()` is
/// B⁻¹, so coordinates are y = B⁻¹x. Both matrices are fixed at
/// construction, which also checks invertibility and the declared group.
class Basis {
 public:
  Basis(Eigen::MatrixXd synthesis, GroupTag tag, Provenance provenance = {});

  /// Builds a basis from an explicit analysis/synthesis pair; the product
  /// must be the identity within 1e-10.
  static Basis from_pair(Eigen::MatrixXd synthesis, Eigen::MatrixXd analysis, GroupTag tag,
                         Provenance provenance = {});

  static Basis identity(Index n);

  Index dimension() const { return synthesis_.rows(); }
  const Eigen::MatrixXd& synthesis() const { return synthesis_; }
  const Eigen::MatrixXd& analysis() const { return analysis_; }
  GroupTag tag() const { return tag_; }
  const Provenance& provenance() const { return provenance_; }
  double determinant() const { return determinant_; }

 private:
  Basis() = default;
  void validate() const;

  Eigen::MatrixXd synthesis_;
  Eigen::MatrixXd analysis_;
  GroupTag tag_ = GroupTag::general_invertible;
  Provenance provenance_;
  double determinant_ = 0.0;
};

Eigen::VectorXd apply_analysis(const Basis& basis, const Eigen::VectorXd& x);
Eigen::VectorXd apply_synthesis(const Basis& basis, const Eigen::VectorXd& y);

/// True when ‖QᵀQ − I‖∞ ≤ tol.
bool is_orthonormal(const Eigen::MatrixXd& q, double tol = kGroupTol);

// ---------------------------------------------------------------------------
// Row classes

/// |u − v| ≤ rel_tol·max(1, |u|, |v|).
bool values_equal(double u, double v, double rel_tol = kDefaultRelTol);

/// Groups entries into equality classes: entries are sorted and a new class
/// starts whenever an entry is not equal to its predecessor. Returns the
/// original positions in each class, classes ordered by value.
std::vector<std::vector<Index>> equality_classes(std::span<const double> values,
                                                 double rel_tol = kDefaultRelTol);

struct RowClassification {
  int class_k = 0;              ///< number of distinct values
  std::vector<int> index;       ///< multiplicities, ascending
};

RowClassification classify_row(std::span<const double> row, double rel_tol = kDefaultRelTol);

/// Row `i` of `m` as a contiguous vector.
std::vector<double> row_values(const Eigen::MatrixXd& m, Index i);

// ---------------------------------------------------------------------------
// Closed-form least-dependent bases

/// I_n − (2/n)·1·1ᵀ, the reflection through the hyperplane orthogonal to 1_n.
Basis householder_dc(int n);

/// Applies householder_dc(n) to x without forming the matrix.
Eigen::VectorXd householder_dc_apply(const Eigen::VectorXd& x);

/// Orthonormal optima for the spike process: one basis for n ∈ {2,3,4},
/// {standard, householder_dc(n)} for n ≥ 5.
std::vector<Basis> lsdb_orthonormal(int n);

struct GlLsdbParams {
  double a = 1.0;
  std::vector<double> b;  ///< b_2..b_n
  std::vector<double> c;  ///< c_2..c_n

  /// Same b and c for every k.
  static GlLsdbParams uniform(int n, double a, double b, double c);
  int dimension() const { return static_cast<int>(b.size()) + 1; }
};

/// Analysis matrix: first row all a, row k has c_k on the diagonal and b_k
/// elsewhere. The synthesis matrix is its explicit inverse with
/// d_k = 1/(c_k − b_k). Rejects a = 0 and b_k = c_k.
Basis lsdb_gl_pair(const GlLsdbParams& params);

/// The value of a giving |det(analysis)| = 1, i.e. ∏(c_k − b_k)⁻¹.
double gl_lsdb_sl_constraint(std::span<const double> b, std::span<const double> c);

/// det(a·I + b·J) for n×n matrices, a^{n−1}(a + n b).
double delta_determinant(double a, double b, int n);

// ---------------------------------------------------------------------------
// Equality modulo column permutations and sign flips

/// Flips each column so its (first) largest-magnitude entry is positive,
/// then sorts columns by descending position of that entry, ties broken
/// lexicographically.
Eigen::MatrixXd canonicalize(const Eigen::MatrixXd& basis, double rel_tol = kDefaultRelTol);

bool equal_up_to_signed_permutation(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs,
                                    double tol = 1e-10);

}  // namespace spikebasis
