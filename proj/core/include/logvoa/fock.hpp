#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logvoa/partition.hpp"
#include "logvoa/rational.hpp"

namespace logvoa {

/// Finite-dimensional vacuum space with the h(0)-action given in Jordan
/// form: a single eigenvalue and a list of block sizes. In the fixed
/// basis e_1..e_dim each block reads h(0) e_i = lambda e_i + e_{i-1},
/// with e at a block start mapped to lambda e.
class OmegaSpec {
 public:
  OmegaSpec(Rational eigenvalue, std::vector<int> block_sizes);

  static OmegaSpec trivial() { return OmegaSpec(Rational(0), {1}); }

  int dim() const { return dim_; }
  const Rational& eigenvalue() const { return eigenvalue_; }
  const std::vector<int>& block_sizes() const { return blocks_; }
  int nilpotent_order() const;  // largest block size

  /// Index (1-based) one step down the Jordan chain, or 0 at a block start.
  int lower_index(int index) const;
  /// Index one step up the chain, or 0 at a block end (transpose action).
  int raise_index(int index) const;
  bool is_block_start(int index) const { return lower_index(index) == 0; }

  /// Stable identity string used in cache keys.
  std::string fingerprint() const;

 private:
  Rational eigenvalue_;
  std::vector<int> blocks_;
  int dim_ = 0;
  std::vector<int> block_of_;  // per index, block ordinal
  std::vector<int> start_of_;  // per index, index of its block start
};

/// One basis monomial of M(1)_a tensor Omega.
struct FockState {
  Partition mu;
  int leg = 1;  // 1-based omega index

  friend bool operator==(const FockState& a, const FockState& b) {
    return a.leg == b.leg && a.mu == b.mu;
  }
};

struct FockStateLess {
  bool operator()(const FockState& a, const FockState& b) const {
    if (!(a.mu == b.mu)) return partition_less(a.mu, b.mu);
    return a.leg < b.leg;
  }
};

/// Finite rational combination of FockStates. Stored coefficients are
/// never zero and iteration order is the canonical basis order.
class ModuleVector {
 public:
  using Map = std::map<FockState, Rational, FockStateLess>;

  ModuleVector() = default;
  static ModuleVector unit(FockState st) {
    ModuleVector v;
    v.add_term(std::move(st), Rational(1));
    return v;
  }

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  void add_term(FockState st, const Rational& coeff);
  const Rational* coeff(const FockState& st) const;

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  ModuleVector& operator*=(const Rational& c);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Rational& c, ModuleVector v) { return v *= c; }
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    return a.terms_ == b.terms_;
  }

  int max_level() const;  // 0 for the zero vector
  int max_part() const;
  /// The common |mu| of all terms, if they agree (zero vector: level 0).
  std::optional<int> homogeneous_level() const;
  /// The common omega index of all terms, if they agree.
  std::optional<int> homogeneous_leg() const;

  /// One line per term: "n1,...,nk | j | p/q" ("-" for the empty partition).
  std::string to_lines() const;
  static ModuleVector parse_lines(const std::string& text);
  /// Same term format joined by "; " on a single line ("0" when zero).
  std::string inline_str() const;

 private:
  Map terms_;
};

struct WeightInfo {
  bool homogeneous = false;
  Rational generalized_weight;  // defined when homogeneous
};

/// Heisenberg mode action. n < 0 creates a part |n|; n > 0 contracts a
/// part n with multiplicity factor; n = 0 applies the Jordan matrix to
/// the omega leg.
ModuleVector apply_h(int n, const ModuleVector& v, const OmegaSpec& omega);

/// Only the nilpotent part of the h(0) action (e_i -> e_{i-1}).
ModuleVector apply_h0_nilpotent(const ModuleVector& v, const OmegaSpec& omega);

/// Transpose of h(0) in the fixed basis (e_i -> e_{i+1} within a block).
ModuleVector apply_h0_transpose(const ModuleVector& v, const OmegaSpec& omega);

/// Virasoro mode for the conformal vector with parameter a:
///   L(n) = 1/2 sum_j :h(j)h(n-j): - a(n+1) h(n).
ModuleVector apply_L(int n, const ModuleVector& v, const OmegaSpec& omega, const Rational& a);

WeightInfo weight_info(const ModuleVector& v, const OmegaSpec& omega, const Rational& a);

/// Lowest conformal weight of M(1)_a tensor Omega, from the eigenvalue.
Rational lowest_weight_of(const OmegaSpec& omega, const Rational& a);

/// Canonically ordered basis of the level subspace of M(1)_a tensor Omega.
std::vector<FockState> level_basis(int level, const OmegaSpec& omega);

/// Basis of the joint kernel of h(1..level_bound) within levels <= bound.
std::vector<ModuleVector> vacuum_space(const OmegaSpec& omega, const Rational& a,
                                       int level_bound);

struct JordanLayer {
  Rational eigenvalue;
  std::vector<int> block_sizes;  // descending
};

/// Jordan decomposition of L(0) on the level subspace, via exact rank
/// sequences of (L(0) - hI)^k.
std::vector<JordanLayer> jordan_structure_L0(const OmegaSpec& omega, const Rational& a,
                                             int level);

}  // namespace logvoa
