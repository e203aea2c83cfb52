#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "logvoa/fock.hpp"
#include "logvoa/linalg.hpp"
#include "logvoa/logseries.hpp"

namespace logvoa {

/// Sharp depth bound for an intertwiner between modules whose vacuum
/// spaces have nilpotency orders m1, m2 and eigenvalues lambda, nu.
int depth_bound(int m1, int m2, const Rational& lambda, const Rational& nu);

/// H3*T - T*(H1 (x) I + I (x) H2); zero iff T is h(0)-equivariant.
Matrix equivariance_defect(const Matrix& t, const OmegaSpec& o1, const OmegaSpec& o2,
                           const OmegaSpec& o3);

/// The data (a; Omega1, Omega2, Omega3; T) of an explicit intertwiner.
/// T is a dim3 x (dim1*dim2) rational matrix, column (i1-1)*dim2+(i2-1).
struct IntertwinerSpec {
  Rational a;
  OmegaSpec omega1, omega2, omega3;
  Matrix t;

  /// Validates the eigenvalue fusion rule (nu3 = lambda + nu) and
  /// h(0)-equivariance; throws MalformedInput otherwise.
  static IntertwinerSpec checked(Rational a, OmegaSpec o1, OmegaSpec o2, OmegaSpec o3, Matrix t);
  /// No validation; for negative-control experiments.
  static IntertwinerSpec unchecked(Rational a, OmegaSpec o1, OmegaSpec o2, OmegaSpec o3, Matrix t);

  bool equivariant() const;
  const Rational& lambda() const { return omega1.eigenvalue(); }
  const Rational& nu() const { return omega2.eigenvalue(); }
  size_t t_col(int i1, int i2) const;

  std::string summary() const;
};

/// Spec with Omega3 = Omega1 (x) Omega2 and T the identity under a
/// Jordan-normalizing change of basis (the depth-attainment choice).
IntertwinerSpec tensor_identity_spec(const Rational& a, const OmegaSpec& o1,
                                     const OmegaSpec& o2);

// --- elementary factors of the explicit construction ------------------

/// (int^+ h(x))^power / power!, where int^+ h(x) = h(0)log(x) +
/// sum_{m>0} h(m) x^{-m}/(-m). The input must be complete (annihilator
/// shifts against truncated data are unsound); throws WindowExceeded.
LogSeries int_plus_apply(const LogSeries& s, const OmegaSpec& omega, int power);
LogSeries int_plus_apply(const ModuleVector& v, const OmegaSpec& omega, int power);

/// (int^- h(x))^power / power!, the creation antiderivative
/// sum_{m<0} h(m) x^{-m}/(-m); output truncated at k_max.
LogSeries int_minus_apply(const LogSeries& s, const OmegaSpec& omega, int power, long k_max);
LogSeries int_minus_apply(const ModuleVector& v, const OmegaSpec& omega, int power, long k_max);

/// E^+(lambda,x) = exp(sum_{m>0} lambda h(m) x^{-m}/(-m)); locally
/// nilpotent, exact. Input must be complete.
LogSeries e_plus_apply(const Rational& lambda, const LogSeries& s, const OmegaSpec& omega);
LogSeries e_plus_apply(const Rational& lambda, const ModuleVector& v, const OmegaSpec& omega);

/// E^-(lambda,x) = exp(sum_{m<0} lambda h(m) x^{-m}/(-m)); the infinite
/// creation exponential, truncated at k_max.
LogSeries e_minus_apply(const Rational& lambda, const LogSeries& s, const OmegaSpec& omega,
                        long k_max);
LogSeries e_minus_apply(const Rational& lambda, const ModuleVector& v, const OmegaSpec& omega,
                        long k_max);

/// x^{lambda h_s(0)} e^{log(x) lambda h_n(0)} acting through the omega
/// leg: an offset shift by lambda*nu plus a log-polynomial of degree
/// < dim(Omega) in the nilpotent part.
LogSeries jordan_exp_apply(const Rational& lambda, const OmegaSpec& omega, const LogSeries& s);
LogSeries jordan_exp_apply(const Rational& lambda, const OmegaSpec& omega, const ModuleVector& v);

// --- the operator ------------------------------------------------------

/// The explicit logarithmic intertwining operator attached to a spec,
/// together with the number of times the depth-lowering reshuffle has
/// been applied to it.
class LogIntertwiner {
 public:
  explicit LogIntertwiner(IntertwinerSpec spec, int lowerings = 0)
      : spec_(std::move(spec)), lowerings_(lowerings) {}
  LogIntertwiner(const LogIntertwiner& o) : spec_(o.spec_), lowerings_(o.lowerings_) {}
  LogIntertwiner& operator=(const LogIntertwiner& o) {
    spec_ = o.spec_;
    lowerings_ = o.lowerings_;
    std::scoped_lock lock(memo_mutex_);
    vacuum_memo_.clear();
    eval_memo_.clear();
    return *this;
  }

  const IntertwinerSpec& spec() const { return spec_; }
  int lowerings() const { return lowerings_; }

  /// Y(w_i, x) w2 for w2 in the level-0 slice of M(1) (x) Omega2,
  /// exact on slots <= k_max (exponent offset lambda*nu).
  LogSeries eval_vacuum(int i, const ModuleVector& w2, long k_max) const;

  /// Y(w_i, x) w2 for arbitrary w2, by commuting creation modes through
  /// the operator with [h(n), Y(w,x)] = x^n Y(h(0)w, x).
  LogSeries eval(int i, const ModuleVector& w2, long k_max) const;

  /// Y(v1, x) w2 for an arbitrary first argument v1 in M(1) (x) Omega1,
  /// via the derivative-field iterate formula.
  LogSeries eval_first(const ModuleVector& v1, const ModuleVector& w2, long k_max) const;

 private:
  LogSeries raw_vacuum(int i, int leg, long k_max) const;
  LogSeries raw_eval(int i, const ModuleVector& w2, long k_max) const;
  LogSeries finish(LogSeries s) const;

  IntertwinerSpec spec_;
  int lowerings_ = 0;
  // Evaluations repeat heavily across extensions and bracket checks.
  mutable std::map<std::tuple<int, int, long>, LogSeries> vacuum_memo_;
  mutable std::map<std::tuple<int, std::string, long>, LogSeries> eval_memo_;
  mutable std::mutex memo_mutex_;
};

struct CheckResult {
  bool ok = true;
  std::string witness;  // nonempty iff failed
};

/// [h(n), Y(w_i,x)] w2 == x^n Y(h(0) w_i, x) w2, coefficientwise on the
/// common valid window.
CheckResult check_h_bracket(const LogIntertwiner& op, int i, int n, const ModuleVector& w2,
                            long k_max);

/// [L(-1), Y(w_i,x)] w2 == d/dx Y(w_i,x) w2.
CheckResult check_L_minus1(const LogIntertwiner& op, int i, const ModuleVector& w2, long k_max);

/// All basis states of M(1) (x) Omega up to the level bound.
std::vector<ModuleVector> sample_states(const OmegaSpec& omega, int max_level);

/// Max observed log degree over all Jordan indices and sampled second
/// arguments up to sample_level.
int measured_depth(const LogIntertwiner& op, int sample_level, long k_max);

/// The depth-lowering operator: sum_i (i+1) Y^{(i+1)} log^i. Throws
/// NothingToLower when the measured depth is zero.
LogIntertwiner derived_operator(const LogIntertwiner& op, int sample_level, long k_max);

/// F-map components F^{(0)}, ..., F^{(m1+m2-2)}: the slot-0 log^i
/// coefficients on vacuum legs, as matrices Omega1 (x) Omega2 -> Omega3.
std::vector<Matrix> f_map(const LogIntertwiner& op);

struct MockLogReport {
  int log_cutoff = 0;
  bool l_minus1_below_cutoff = true;  // exact on log degrees < K-1
  std::string failure_witness;        // first failure below the cutoff, if any
  bool leak_at_top = false;           // expected: the K-1 slot differs
  bool top_log_nonzero = false;       // log^{K-1} growth witness
  std::string top_log_witness;
};

/// The mock operator Y(.,x) x^{-lambda h(0)} e^{lambda h(0) log(x)}
/// between ordinary modules, with log degree artificially cut at K.
MockLogReport mock_log_check(const Rational& lambda, const Rational& nu, const Rational& a,
                             long k_max, int log_cutoff);

}  // namespace logvoa
