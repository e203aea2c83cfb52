#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "logvoa/fock.hpp"
#include "logvoa/rational.hpp"

namespace logvoa {

/// Exponent window of a truncated series. Slots are integers k with the
/// actual exponent being offset + k; log degrees run 0..max_log.
struct TruncationWindow {
  long k_min = 0;
  long k_max = 0;
  int max_log = 0;

  bool valid() const { return k_min <= k_max && max_log >= 0; }
  long span() const { return k_max - k_min + 1; }
};

/// Truncated formal series sum c_{k,j} x^{offset+k} log^j(x) with
/// ModuleVector coefficients.
///
/// A series is either complete (all nonzero content is stored; the
/// window is just its hull) or truncated above: content at slots
/// k > window.k_max exists but was not computed. Nothing is ever
/// unknown below k_min; every stored coefficient is exact. Operations
/// propagate the guaranteed-valid window so truncation is never silent.
class LogSeries {
 public:
  LogSeries() = default;
  static LogSeries zero(Rational offset);
  static LogSeries constant(Rational offset, const ModuleVector& v);

  const Rational& offset() const { return offset_; }
  const TruncationWindow& window() const { return win_; }
  bool truncated_above() const { return truncated_above_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational exponent_of(long k) const { return offset_ + Rational(k); }

  /// Highest log power with a nonzero coefficient; 0 for the zero series.
  int depth() const;

  /// Stored coefficient inside the declared window, zero for an absent
  /// in-window slot. Out-of-window access throws WindowExceeded.
  const ModuleVector& coefficient(long k, int j) const;

  /// Like coefficient() but returns zero outside the window too; for
  /// internal plumbing where the caller has its own validity argument.
  const ModuleVector& peek(long k, int j) const;

  const std::map<std::pair<long, int>, ModuleVector>& coeffs() const { return coeffs_; }

  void add_to(long k, int j, const ModuleVector& v);
  void set_truncated(long ceiling);  // drops stored slots above the ceiling
  void recompute_hull();             // tighten window to stored content

  /// Highest level appearing among stored coefficients.
  int max_coeff_level() const;

  std::string str() const;

 private:
  Rational offset_;
  TruncationWindow win_{0, 0, 0};
  bool truncated_above_ = false;
  std::map<std::pair<long, int>, ModuleVector> coeffs_;
};

/// Coefficientwise sum after rebasing to a common offset. Throws
/// IncompatibleOffset when the offsets differ by a non-integer. The
/// result window is the intersection of the valid regions.
LogSeries add(const LogSeries& s, const LogSeries& t);

LogSeries scale(const LogSeries& s, const Rational& c);
LogSeries negate(const LogSeries& s);

/// Formal derivative: x^e log^j -> e x^{e-1} log^j + j x^{e-1} log^{j-1}.
/// Costs one slot of validity at the top of a truncated series.
LogSeries ddx(const LogSeries& s);

/// Multiplication by x^r for integer r (slot shift).
LogSeries mul_x_int(const LogSeries& s, long r);
/// Multiplication by x^q for rational q (offset shift).
LogSeries mul_x_rational(const LogSeries& s, const Rational& q);
/// Multiplication by log^p(x).
LogSeries mul_log(const LogSeries& s, int p);

/// The depth-lowering reshuffle: output log^j coefficient is
/// (j+1) times the input log^{j+1} coefficient.
LogSeries lower_log(const LogSeries& s);

/// Module mode applied to every coefficient; window unchanged.
LogSeries apply_mode_h(const LogSeries& s, int n, const OmegaSpec& omega);
LogSeries apply_mode_L(const LogSeries& s, int n, const OmegaSpec& omega, const Rational& a);

struct SeriesComparison {
  bool equal = true;
  // Witness of the first differing coefficient, in the s-slot frame.
  std::optional<std::pair<long, int>> witness;
  TruncationWindow common;  // region compared (s frame)
};

/// Exact coefficientwise comparison on the intersection of the valid
/// windows (offsets must agree up to an integer, else not comparable).
SeriesComparison compare_on_common_window(const LogSeries& s, const LogSeries& t);

}  // namespace logvoa
