#include "logvoa/logseries.hpp"

#include <limits>
#include <sstream>

#include "logvoa/errors.hpp"

namespace logvoa {

namespace {
constexpr long kNoCeiling = std::numeric_limits<long>::max() / 4;
const ModuleVector kZeroVector{};
}  // namespace

LogSeries LogSeries::zero(Rational offset) {
  LogSeries s;
  s.offset_ = std::move(offset);
  return s;
}

LogSeries LogSeries::constant(Rational offset, const ModuleVector& v) {
  LogSeries s = zero(std::move(offset));
  s.add_to(0, 0, v);
  s.recompute_hull();
  return s;
}

int LogSeries::depth() const {
  int d = 0;
  for (const auto& [kj, v] : coeffs_) d = std::max(d, kj.second);
  return d;
}

const ModuleVector& LogSeries::coefficient(long k, int j) const {
  if (k < win_.k_min || k > win_.k_max || j < 0 || j > win_.max_log) {
    std::ostringstream os;
    os << "coefficient: slot (k=" << k << ", log=" << j << ") outside the valid window ["
       << win_.k_min << ", " << win_.k_max << "] x log<=" << win_.max_log;
    throw WindowExceeded(os.str());
  }
  return peek(k, j);
}

const ModuleVector& LogSeries::peek(long k, int j) const {
  auto it = coeffs_.find({k, j});
  return it == coeffs_.end() ? kZeroVector : it->second;
}

void LogSeries::add_to(long k, int j, const ModuleVector& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(std::make_pair(k, j), v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void LogSeries::set_truncated(long ceiling) {
  truncated_above_ = true;
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = (it->first.first > ceiling) ? coeffs_.erase(it) : std::next(it);
  recompute_hull();
  win_.k_max = ceiling;
  if (win_.k_min > ceiling) win_.k_min = ceiling;
}

void LogSeries::recompute_hull() {
  if (coeffs_.empty()) {
    long keep = truncated_above_ ? std::min(win_.k_max, 0L) : 0L;
    win_ = TruncationWindow{keep, truncated_above_ ? win_.k_max : keep, 0};
    return;
  }
  long lo = coeffs_.begin()->first.first;
  long hi = lo;
  int jmax = 0;
  for (const auto& [kj, v] : coeffs_) {
    lo = std::min(lo, kj.first);
    hi = std::max(hi, kj.first);
    jmax = std::max(jmax, kj.second);
  }
  long ceiling = truncated_above_ ? win_.k_max : hi;
  win_ = TruncationWindow{lo, std::max(ceiling, hi), jmax};
}

int LogSeries::max_coeff_level() const {
  int m = 0;
  for (const auto& [kj, v] : coeffs_) m = std::max(m, v.max_level());
  return m;
}

std::string LogSeries::str() const {
  if (coeffs_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [kj, v] : coeffs_)
    os << "x^(" << exponent_of(kj.first).str() << ") log^" << kj.second << " : "
       << v.inline_str() << '\n';
  return os.str();
}

namespace {

long integer_offset_gap(const LogSeries& s, const LogSeries& t, const char* who) {
  Rational d = t.offset() - s.offset();
  if (!d.is_integer())
    throw IncompatibleOffset(std::string(who) + ": offsets " + s.offset().str() + " and " +
                             t.offset().str() + " differ by a non-integer");
  return d.to_long();
}

long ceiling_of(const LogSeries& s) { return s.truncated_above() ? s.window().k_max : kNoCeiling; }

}  // namespace

LogSeries add(const LogSeries& s, const LogSeries& t) {
  long d = integer_offset_gap(s, t, "add");  // t slot k sits at s slot k + d
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first, kj.second, v);
  for (const auto& [kj, v] : t.coeffs()) out.add_to(kj.first + d, kj.second, v);
  long ceiling = std::min(ceiling_of(s), ceiling_of(t) == kNoCeiling ? kNoCeiling
                                                                     : t.window().k_max + d);
  if (ceiling != kNoCeiling)
    out.set_truncated(ceiling);
  else
    out.recompute_hull();
  return out;
}

LogSeries scale(const LogSeries& s, const Rational& c) {
  LogSeries out = LogSeries::zero(s.offset());
  if (!c.is_zero())
    for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first, kj.second, c * v);
  if (s.truncated_above())
    out.set_truncated(s.window().k_max);
  else
    out.recompute_hull();
  return out;
}

LogSeries negate(const LogSeries& s) { return scale(s, Rational(-1)); }

LogSeries ddx(const LogSeries& s) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) {
    auto [k, j] = kj;
    out.add_to(k - 1, j, s.exponent_of(k) * v);
    if (j >= 1) out.add_to(k - 1, j - 1, Rational(j) * v);
  }
  if (s.truncated_above())
    out.set_truncated(s.window().k_max - 1);
  else
    out.recompute_hull();
  return out;
}

LogSeries mul_x_int(const LogSeries& s, long r) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first + r, kj.second, v);
  if (s.truncated_above())
    out.set_truncated(s.window().k_max + r);
  else
    out.recompute_hull();
  return out;
}

LogSeries mul_x_rational(const LogSeries& s, const Rational& q) {
  LogSeries shifted = LogSeries::zero(s.offset() + q);
  for (const auto& [kj, v] : s.coeffs()) shifted.add_to(kj.first, kj.second, v);
  if (s.truncated_above())
    shifted.set_truncated(s.window().k_max);
  else
    shifted.recompute_hull();
  return shifted;
}

LogSeries mul_log(const LogSeries& s, int p) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first, kj.second + p, v);
  if (s.truncated_above())
    out.set_truncated(s.window().k_max);
  else
    out.recompute_hull();
  return out;
}

LogSeries lower_log(const LogSeries& s) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) {
    auto [k, j] = kj;
    if (j >= 1) out.add_to(k, j - 1, Rational(j) * v);
  }
  if (s.truncated_above())
    out.set_truncated(s.window().k_max);
  else
    out.recompute_hull();
  return out;
}

namespace {

template <typename Op>
LogSeries coefficientwise(const LogSeries& s, Op&& op) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first, kj.second, op(v));
  if (s.truncated_above())
    out.set_truncated(s.window().k_max);
  else
    out.recompute_hull();
  return out;
}

}  // namespace

LogSeries apply_mode_h(const LogSeries& s, int n, const OmegaSpec& omega) {
  return coefficientwise(s, [&](const ModuleVector& v) { return apply_h(n, v, omega); });
}

LogSeries apply_mode_L(const LogSeries& s, int n, const OmegaSpec& omega, const Rational& a) {
  return coefficientwise(s, [&](const ModuleVector& v) { return apply_L(n, v, omega, a); });
}

SeriesComparison compare_on_common_window(const LogSeries& s, const LogSeries& t) {
  long d = integer_offset_gap(s, t, "compare_on_common_window");
  SeriesComparison cmp;
  long lo = std::min(s.window().k_min, t.window().k_min + d);
  long hi_hull = std::max(s.window().k_max, t.window().k_max + d);
  long ceiling = std::min(ceiling_of(s),
                          ceiling_of(t) == kNoCeiling ? kNoCeiling : t.window().k_max + d);
  long hi = std::min(hi_hull, ceiling);
  int jmax = std::max(s.window().max_log, t.window().max_log);
  cmp.common = TruncationWindow{lo, hi, jmax};
  for (long k = lo; k <= hi; ++k)
    for (int j = 0; j <= jmax; ++j)
      if (!(s.peek(k, j) == t.peek(k - d, j))) {
        cmp.equal = false;
        cmp.witness = {k, j};
        return cmp;
      }
  return cmp;
}

}  // namespace logvoa
