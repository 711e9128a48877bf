#pragma once

// Algebra of 3x6 configuration matrices (six lines in the projective plane):
// 3x3 minors, bracket pairs x<J>, the six normal forms nu_ij, the association
// involution and the inversion of the bracket (Pluecker) map.

#include <Eigen/Core>

#include <array>
#include <string>
#include <utility>

#include "k3/types.hpp"

namespace k3 {

using Config36 = Eigen::Matrix<Complex, 3, 6>;
using Mat3 = Eigen::Matrix<Complex, 3, 3>;

/// An unordered (3,3)-partition {J, J^c} of {1..6}. The stored key is the
/// member containing 1; labels and the canonical order use the member that
/// avoids 6 (123, 124, 125, 134, 135, 145, 234, 235, 245, 345).
class Partition33 {
 public:
  static constexpr std::size_t kCount = 10;

  /// Partition by canonical position 0..9.
  static Partition33 at(std::size_t index);
  /// Partition containing the given three distinct labels in 1..6 (any order).
  static Partition33 of(int i, int j, int k);
  static const std::array<Partition33, kCount>& all();

  std::size_t index() const { return index_; }
  /// Sorted member containing label 1.
  const std::array<int, 3>& key() const { return key_; }
  /// Sorted member avoiding label 6, e.g. "135".
  std::array<int, 3> display() const;
  std::array<int, 3> complement_of_key() const;
  std::string label() const;

  /// The five (2,2,2)-standard tableaux: 123, 124, 125, 134, 135.
  bool is_standard() const { return index_ < 5; }

  friend bool operator==(const Partition33& a, const Partition33& b) { return a.index_ == b.index_; }

 private:
  Partition33(std::size_t index, std::array<int, 3> key) : index_(index), key_(key) {}
  std::size_t index_;
  std::array<int, 3> key_;
};

using BracketVector = std::array<Complex, Partition33::kCount>;

struct BracketSet {
  std::array<Complex, 20> minors{};  ///< D(ijk), i<j<k, lexicographic
  BracketVector pairs{};             ///< x<J>, canonical partition order
  bool generic = false;              ///< all 20 minors nonzero (relative 1e-10)

  /// D(ijk) for distinct labels in any order (antisymmetric).
  Complex minor(int i, int j, int k) const;
  Complex pair(const Partition33& p) const { return pairs[p.index()]; }
};

BracketSet brackets(const Config36& x);

/// D(ijk) of a matrix directly, labels 1..6 in any order.
Complex minor_of(const Config36& x, int i, int j, int k);

/// Relative distance of a from the complex line through b:
/// min_l |a - l b| / |a|. Zero iff a and b are proportional.
double projective_distance(const BracketVector& a, const BracketVector& b);

/// Expand values on the standard tableaux (123,124,125,134,135) to all ten
/// bracket pairs through the linear Pluecker relations.
BracketVector expand_standard(const std::array<Complex, 5>& standard);

// Normal forms ------------------------------------------------------------

/// The normal form nu_ij(z): four constant frame columns and two columns
/// (1, -z1, -z2), (1, -z3, -z4).
Config36 nu(PeriodIndex ij, const ZMatrix& z);

/// Column positions (0-based) of nu_ij carrying (1,-z1,-z2) and (1,-z3,-z4).
std::pair<int, int> nu_variable_columns(PeriodIndex ij);

/// Coordinates z' with nu_ij(z') equivalent to x under GL3 x column scaling.
ZMatrix normal_form_coords(const Config36& x, PeriodIndex ij);

// Association involution ----------------------------------------------------

/// (y1, y2) -> (t(y1^-1 y2 y1), t y1) for x = (y1 | y2).
Config36 association(const Config36& x);

Complex q_invariant(const Config36& x);
/// T(ijklmn) = D(ijk) D(klm) D(mni) D(nlj).
Complex t_invariant(const Config36& x, const std::array<int, 6>& labels);
/// {ij;kl} = D(ijm) D(ijn) D(mkl) D(nkl), {m,n} the two remaining labels.
Complex curly_invariant(const Config36& x, const std::array<int, 4>& labels);

struct AssocInvariants {
  Complex q;
  Complex t;
  Complex curly;
};
AssocInvariants assoc_invariants(const Config36& x, const std::array<int, 6>& t_labels,
                                 const std::array<int, 4>& curly_labels);

/// Same {ij;kl}, computed from bracket pairs alone (signs from sorting).
Complex curly_from_pairs(const BracketVector& pairs, const std::array<int, 4>& labels);

struct PluckerInverse {
  std::array<Config36, 2> forms;  ///< [E3 | (1,1,1) | (1,x1,x2) | (1,y1,y2)]
  std::array<Complex, 2> t_roots; ///< the two values of T(125364), sorted
};

/// Coordinates (x1, x2, y1, y2) of the form [E3 | (1,1,1) | (1,x1,x2) | (1,y1,y2)]
/// equivalent to x. FrameDegenerate if columns 1-4 are not in general position.
std::array<Complex, 4> standard_frame_coords(const Config36& x);

/// Rebuild the two configurations with the given standard-tableau brackets.
PluckerInverse invert_plucker(const std::array<Complex, 5>& standard);

// Degenerations and special loci ------------------------------------------

/// The two configurations with x<123> = 0 and
/// (x<124>, x<125>, x<134>, x<135>) = (c4^2, c3^2, c2^2, c1^2).
std::array<Config36, 2> preimage_d4(const MeanState& c);

struct KummerPoint {
  ZMatrix z;
  Config36 x;
  double q1 = 0.0;
  Complex c0sq;
};

/// Configuration on the Kummer locus whose brackets at 123,135,134,125,124
/// are proportional to c0^2, c1^2, c2^2, c3^2, c4^2.
KummerPoint kummer_point(const MeanState& c);

}  // namespace k3
