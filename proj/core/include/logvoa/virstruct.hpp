#pragma once

#include <string>
#include <vector>

#include "logvoa/fock.hpp"
#include "logvoa/intertwiner.hpp"
#include "logvoa/linalg.hpp"
#include "logvoa/logseries.hpp"

namespace logvoa {

// Structure theory of M(1) (x) Omega viewed as a module for the c = 1
// Virasoro action (the a = 0 conformal vector throughout).

struct SingularVector {
  ModuleVector vector;  // leading coefficient 1 in the canonical basis order
  Rational weight;
};

/// Exact kernel of (L(1), L(2)) on the weight-w subspace of
/// M(1) (x) Omega.
std::vector<SingularVector> singular_basis(int weight, const OmegaSpec& omega);

/// Re-bases a vector supported on a single omega index one index higher
/// (the transpose of h(0) in the fixed Jordan basis). Throws
/// MalformedInput on mixed legs or at a block end.
ModuleVector lift_chain(const ModuleVector& u, const OmegaSpec& omega);

/// Maps an M(1) vector (all legs 1) onto the given omega index.
ModuleVector embed_at_leg(const ModuleVector& v, int leg);

/// Span of the generators closed under all L(n) reachable within the
/// weight bound, kept as exact graded echelon bases.
class VirSubmodule {
 public:
  VirSubmodule(const std::vector<ModuleVector>& generators, const OmegaSpec& omega,
               int weight_bound);

  int weight_bound() const { return bound_; }
  /// Membership by exact reduction; the vector must be homogeneous of
  /// level <= weight_bound.
  bool contains(const ModuleVector& v) const;
  std::vector<int> graded_dims() const;

 private:
  std::vector<Rational> coordinates_at(const ModuleVector& v, int level) const;

  OmegaSpec omega_;
  int bound_;
  std::vector<std::vector<FockState>> bases_;
  std::vector<EchelonBasis> echelons_;
};

/// L(0) u^{3,n} == n^2 u^{3,n} + 1/2 u^n for the 3-dimensional nilpotent
/// omega, with both sides built from the same singular polynomial.
bool check_L0_jordan(int n, const OmegaSpec& omega);

struct DiagramNode {
  int tier = 1;  // 1 singular, 2 subsingular, 3 sub-subsingular
  int m = 0;
  int weight = 0;
};

struct DiagramArrow {
  int tier_from = 0, m_from = 0;
  int tier_to = 0, m_to = 0;
  bool literal = true;  // target is literally inside Vir . source
};

struct StructureDiagram {
  std::vector<DiagramNode> nodes;
  std::vector<DiagramArrow> arrows;
  /// Trivial Graph Format: node lines, '#', edge lines.
  std::string to_tgf() const;
};

/// Nodes at weights m^2 <= weight_bound per tier; arrows present iff
/// submodule membership verifies (literal, or modulo the singular tier
/// for tier-3 sources, flagged on the arrow).
StructureDiagram structure_diagram(const OmegaSpec& omega, int weight_bound);

/// The VOA vertex operator Y(v, x) w for v in M(1) itself (all legs 1),
/// acting on any module M(1) (x) Omega; always log-free.
LogSeries vertex_operator_apply(const ModuleVector& v, const ModuleVector& w,
                                const OmegaSpec& omega_w, const Rational& a, long k_max);

struct FusionReport {
  int m = 0, n = 0, weight_bound = 0;
  std::vector<int> computed_dims;  // graded dims of the Vir span
  std::vector<int> expected_dims;  // from the c = 1 character formula
  bool match = false;
};

/// dim of L(1, k^2) at level d above its lowest weight:
/// p(d) - p(d - 2k - 1).
long c1_irreducible_dim(int k, int d);

/// Graded dimensions of the Vir span of the coefficients of
/// Y(u^n, x) u^m against the predicted sum of irreducibles.
FusionReport fusion_span_check(int m, int n, int weight_bound);

struct HiddenReport {
  int m = 0, n = 0;
  bool t_equivariant = false;
  bool depth_one = false;
  std::string log1_witness;
  bool cross_log_free = false;
  bool filtration_identity = false;
  std::string failure_witness;
  bool ok() const { return t_equivariant && depth_one && cross_log_free && filtration_identity; }
};

/// The hidden operator: the explicit intertwiner for Omega2 2-dim
/// nilpotent, Omega3 3-dim nilpotent and the 1/2-weighted surjection T,
/// restricted to the cyclic submodules of u^{2,m} and u^{2,n}.
HiddenReport hidden_intertwiner_check(int m, int n, int weight_bound, long k_max);

struct CharacterReport {
  Rational q_offset;  // lowest weight minus c/24
  bool offset_is_minus_one_24 = false;
  bool lambda_equals_a = false;
  bool dims_match = false;  // level dims equal p(n) through the bound
  std::vector<long> dims;
};

/// Graded dimension of M(1,lambda)_a against 1/eta: level dims are p(n),
/// and the q-offset equals -1/24 exactly when lambda = a.
CharacterReport character_check(const Rational& a, const Rational& lambda, int n_max);

/// For nilpotent jordan data, -H^T has the same block sizes as H.
bool negative_transpose_same_blocks(const OmegaSpec& omega);

}  // namespace logvoa
