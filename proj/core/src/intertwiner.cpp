#include "logvoa/intertwiner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "logvoa/errors.hpp"

namespace logvoa {

int depth_bound(int m1, int m2, const Rational& lambda, const Rational& nu) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("depth_bound: nilpotency orders must be >= 1");
  bool l0 = lambda.is_zero(), n0 = nu.is_zero();
  if (!l0 && !n0) return m1 + m2 - 2;
  if (l0 && !n0) return m1 - 1;
  if (!l0 && n0) return m2 - 1;
  return std::min(m1 - 1, m2 - 1);
}

namespace {

Matrix jordan_matrix(const OmegaSpec& o) {
  Matrix h(o.dim(), o.dim());
  for (int i = 1; i <= o.dim(); ++i) {
    h.at(i - 1, i - 1) = o.eigenvalue();
    if (int lo = o.lower_index(i); lo != 0) h.at(lo - 1, i - 1) = Rational(1);
  }
  return h;
}

Matrix tensor_sum_matrix(const OmegaSpec& o1, const OmegaSpec& o2) {
  int d1 = o1.dim(), d2 = o2.dim();
  Matrix h(d1 * d2, d1 * d2);
  Matrix h1 = jordan_matrix(o1), h2 = jordan_matrix(o2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) {
      int col = i1 * d2 + i2;
      for (int r = 0; r < d1; ++r)
        if (!h1.at(r, i1).is_zero()) h.at(r * d2 + i2, col) += h1.at(r, i1);
      for (int r = 0; r < d2; ++r)
        if (!h2.at(r, i2).is_zero()) h.at(i1 * d2 + r, col) += h2.at(r, i2);
    }
  return h;
}

}  // namespace

Matrix equivariance_defect(const Matrix& t, const OmegaSpec& o1, const OmegaSpec& o2,
                           const OmegaSpec& o3) {
  return jordan_matrix(o3) * t - t * tensor_sum_matrix(o1, o2);
}

IntertwinerSpec IntertwinerSpec::unchecked(Rational a, OmegaSpec o1, OmegaSpec o2, OmegaSpec o3,
                                           Matrix t) {
  return IntertwinerSpec{std::move(a), std::move(o1), std::move(o2), std::move(o3), std::move(t)};
}

IntertwinerSpec IntertwinerSpec::checked(Rational a, OmegaSpec o1, OmegaSpec o2, OmegaSpec o3,
                                         Matrix t) {
  if (t.rows() != static_cast<size_t>(o3.dim()) ||
      t.cols() != static_cast<size_t>(o1.dim()) * static_cast<size_t>(o2.dim()))
    throw MalformedInput("IntertwinerSpec: T has wrong dimensions");
  if (!(o3.eigenvalue() == o1.eigenvalue() + o2.eigenvalue()))
    throw MalformedInput("IntertwinerSpec: Omega3 eigenvalue must be lambda + nu");
  IntertwinerSpec spec = unchecked(std::move(a), std::move(o1), std::move(o2), std::move(o3),
                                   std::move(t));
  if (!spec.equivariant()) throw MalformedInput("IntertwinerSpec: T is not h(0)-equivariant");
  return spec;
}

bool IntertwinerSpec::equivariant() const {
  return equivariance_defect(t, omega1, omega2, omega3).is_zero();
}

size_t IntertwinerSpec::t_col(int i1, int i2) const {
  return static_cast<size_t>(i1 - 1) * omega2.dim() + static_cast<size_t>(i2 - 1);
}

std::string IntertwinerSpec::summary() const {
  std::ostringstream os;
  os << "a=" << a.str() << "; O1[" << omega1.fingerprint() << "] O2[" << omega2.fingerprint()
     << "] O3[" << omega3.fingerprint() << "]";
  return os.str();
}

IntertwinerSpec tensor_identity_spec(const Rational& a, const OmegaSpec& o1,
                                     const OmegaSpec& o2) {
  int d = o1.dim() * o2.dim();
  // Nilpotent part of the tensor-sum action in the product basis.
  Matrix n = tensor_sum_matrix(o1, o2);
  Rational mu = o1.eigenvalue() + o2.eigenvalue();
  for (int i = 0; i < d; ++i) n.at(i, i) -= mu;

  // Jordan chains of n. Power kernels grow until the whole space.
  std::vector<Matrix> powers{Matrix::identity(d)};
  while (!powers.back().is_zero()) powers.push_back(powers.back() * n);
  int order = static_cast<int>(powers.size()) - 1;  // n^order = 0

  struct Chain {
    std::vector<Rational> top;
    int length;
  };
  std::vector<Chain> chains;
  for (int k = order; k >= 1; --k) {
    EchelonBasis span(d);
    for (const auto& v : powers[k - 1].kernel_basis()) span.insert(v);
    for (const auto& ch : chains)
      if (ch.length > k) span.insert(powers[ch.length - k].apply(ch.top));
    for (auto& v : powers[k].kernel_basis())
      if (span.insert(v)) chains.push_back(Chain{v, k});
  }
  std::stable_sort(chains.begin(), chains.end(),
                   [](const Chain& x, const Chain& y) { return x.length > y.length; });

  std::vector<int> blocks;
  Matrix basis(d, d);  // columns: eigenvector-first chains
  int col = 0;
  for (const auto& ch : chains) {
    blocks.push_back(ch.length);
    for (int i = ch.length - 1; i >= 0; --i, ++col) {
      std::vector<Rational> vec = powers[i].apply(ch.top);
      for (int r = 0; r < d; ++r) basis.at(r, col) = vec[r];
    }
  }
  OmegaSpec o3(mu, blocks);
  return IntertwinerSpec::checked(a, o1, o2, o3, basis.inverse());
}

// --- elementary factors -----------------------------------------------

namespace {

void require_complete(const LogSeries& s, const char* who) {
  if (s.truncated_above())
    throw WindowExceeded(std::string(who) +
                         ": annihilator shifts against a truncated series are not exact");
}

LogSeries finish_like(LogSeries out, const LogSeries& in) {
  if (in.truncated_above())
    out.set_truncated(in.window().k_max);
  else
    out.recompute_hull();
  return out;
}

}  // namespace

LogSeries int_plus_apply(const LogSeries& s, const OmegaSpec& omega, int power) {
  if (power < 0) throw std::invalid_argument("int_plus_apply: negative power");
  LogSeries cur = s;
  for (int p = 0; p < power; ++p) {
    require_complete(cur, "int_plus_apply");
    LogSeries out = mul_log(apply_mode_h(cur, 0, omega), 1);
    int reach = cur.max_coeff_level();
    for (int m = 1; m <= reach; ++m) {
      for (const auto& [kj, v] : cur.coeffs()) {
        ModuleVector w = apply_h(m, v, omega);
        if (w.is_zero()) continue;
        w *= Rational(-1, m);
        out.add_to(kj.first - m, kj.second, w);
      }
    }
    out.recompute_hull();
    cur = std::move(out);
  }
  return scale(cur, Rational(1) / factorial(static_cast<unsigned>(power)));
}

LogSeries int_plus_apply(const ModuleVector& v, const OmegaSpec& omega, int power) {
  return int_plus_apply(LogSeries::constant(Rational(0), v), omega, power);
}

LogSeries int_minus_apply(const LogSeries& s, const OmegaSpec& omega, int power, long k_max) {
  if (power < 0) throw std::invalid_argument("int_minus_apply: negative power");
  LogSeries cur = s;
  for (int p = 0; p < power; ++p) {
    long ceiling = cur.truncated_above() ? std::min(cur.window().k_max, k_max) : k_max;
    LogSeries out = LogSeries::zero(cur.offset());
    for (const auto& [kj, v] : cur.coeffs())
      for (long r = 1; kj.first + r <= ceiling; ++r)
        out.add_to(kj.first + r, kj.second, Rational(1, r) * apply_h(static_cast<int>(-r), v, omega));
    out.set_truncated(ceiling);
    cur = std::move(out);
  }
  if (power > 0) return scale(cur, Rational(1) / factorial(static_cast<unsigned>(power)));
  return cur;
}

LogSeries int_minus_apply(const ModuleVector& v, const OmegaSpec& omega, int power, long k_max) {
  return int_minus_apply(LogSeries::constant(Rational(0), v), omega, power, k_max);
}

namespace {

// z_mu = prod_r r^{mult_r} * mult_r!
Rational symmetrizer(const Partition& mu) {
  Rational z(1);
  const auto& parts = mu.parts();
  for (size_t i = 0; i < parts.size();) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    unsigned mult = static_cast<unsigned>(j - i);
    z *= Rational(parts[i]).pow(mult) * factorial(mult);
    i = j;
  }
  return z;
}

ModuleVector apply_creation_monomial(const Partition& mu, const ModuleVector& v,
                                     const OmegaSpec& omega) {
  ModuleVector out = v;
  for (int part : mu.parts()) out = apply_h(-part, out, omega);
  return out;
}

ModuleVector apply_annihilation_monomial(const Partition& mu, const ModuleVector& v,
                                         const OmegaSpec& omega) {
  ModuleVector out = v;
  for (int part : mu.parts()) {
    out = apply_h(part, out, omega);
    if (out.is_zero()) break;
  }
  return out;
}

}  // namespace

LogSeries e_minus_apply(const Rational& lambda, const LogSeries& s, const OmegaSpec& omega,
                        long k_max) {
  if (lambda.is_zero()) return s;
  long ceiling = s.truncated_above() ? std::min(s.window().k_max, k_max) : k_max;
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) {
    for (long d = 0; kj.first + d <= ceiling; ++d) {
      for (const Partition& mu : partitions_of(static_cast<int>(d))) {
        Rational c = lambda.pow(static_cast<unsigned>(mu.parts().size())) / symmetrizer(mu);
        out.add_to(kj.first + d, kj.second, c * apply_creation_monomial(mu, v, omega));
      }
    }
  }
  out.set_truncated(ceiling);
  return out;
}

LogSeries e_minus_apply(const Rational& lambda, const ModuleVector& v, const OmegaSpec& omega,
                        long k_max) {
  return e_minus_apply(lambda, LogSeries::constant(Rational(0), v), omega, k_max);
}

LogSeries e_plus_apply(const Rational& lambda, const LogSeries& s, const OmegaSpec& omega) {
  if (lambda.is_zero()) return s;
  require_complete(s, "e_plus_apply");
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) {
    int reach = v.max_level();
    for (int d = 0; d <= reach; ++d) {
      for (const Partition& mu : partitions_of(d)) {
        ModuleVector w = apply_annihilation_monomial(mu, v, omega);
        if (w.is_zero()) continue;
        Rational c = (-lambda).pow(static_cast<unsigned>(mu.parts().size())) / symmetrizer(mu);
        out.add_to(kj.first - d, kj.second, c * w);
      }
    }
  }
  out.recompute_hull();
  return out;
}

LogSeries e_plus_apply(const Rational& lambda, const ModuleVector& v, const OmegaSpec& omega) {
  return e_plus_apply(lambda, LogSeries::constant(Rational(0), v), omega);
}

LogSeries jordan_exp_apply(const Rational& lambda, const OmegaSpec& omega, const LogSeries& s) {
  LogSeries out = LogSeries::zero(s.offset());
  LogSeries power = s;  // N^r applied coefficientwise, times (lambda log x)^r / r!
  for (int r = 0; r < omega.nilpotent_order(); ++r) {
    if (r > 0) {
      LogSeries next = LogSeries::zero(power.offset());
      for (const auto& [kj, v] : power.coeffs())
        next.add_to(kj.first, kj.second, apply_h0_nilpotent(v, omega));
      next = finish_like(std::move(next), power);
      power = std::move(next);
    }
    if (power.is_zero() && !power.truncated_above()) break;
    out = add(out, scale(mul_log(power, r), lambda.pow(r) / factorial(r)));
  }
  return mul_x_rational(out, lambda * omega.eigenvalue());
}

LogSeries jordan_exp_apply(const Rational& lambda, const OmegaSpec& omega,
                           const ModuleVector& v) {
  return jordan_exp_apply(lambda, omega, LogSeries::constant(Rational(0), v));
}

// --- the operator ------------------------------------------------------

namespace {

ModuleVector apply_t_vec(const IntertwinerSpec& spec, int l, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [st, c] : v.terms()) {
    if (st.leg < 1 || st.leg > spec.omega2.dim())
      throw MalformedInput("apply_T: omega2 index out of range");
    size_t col = spec.t_col(l, st.leg);
    for (int j3 = 1; j3 <= spec.omega3.dim(); ++j3) {
      const Rational& entry = spec.t.at(j3 - 1, col);
      if (!entry.is_zero()) out.add_term(FockState{st.mu, j3}, c * entry);
    }
  }
  return out;
}

LogSeries apply_t_series(const IntertwinerSpec& spec, int l, const LogSeries& s) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs()) out.add_to(kj.first, kj.second, apply_t_vec(spec, l, v));
  return finish_like(std::move(out), s);
}

struct ChainPosition {
  int start;  // global index of the block start
  int pos;    // 1-based position within the block
};

ChainPosition chain_position(const OmegaSpec& o, int i) {
  if (i < 1 || i > o.dim()) throw std::out_of_range("LogIntertwiner: Jordan index out of range");
  int start = i;
  while (!o.is_block_start(start)) --start;
  return ChainPosition{start, i - start + 1};
}

}  // namespace

LogSeries LogIntertwiner::raw_vacuum(int i, int leg, long k_max) const {
  {
    std::scoped_lock lock(memo_mutex_);
    auto it = vacuum_memo_.find({i, leg, k_max});
    if (it != vacuum_memo_.end()) return it->second;
  }
  const Rational& lambda = spec_.lambda();
  auto [start, pos] = chain_position(spec_.omega1, i);
  ModuleVector w2 = ModuleVector::unit(FockState{Partition{}, leg});

  LogSeries total = LogSeries::zero(lambda * spec_.nu());
  for (int l = 1; l <= pos; ++l) {
    for (int j = 0; j <= pos - l; ++j) {
      LogSeries s = int_plus_apply(w2, spec_.omega2, pos - l - j);
      s = jordan_exp_apply(lambda, spec_.omega2, s);
      s = apply_t_series(spec_, start + l - 1, s);
      s = e_plus_apply(lambda, s, spec_.omega3);
      s = e_minus_apply(lambda, s, spec_.omega3, k_max);
      s = int_minus_apply(s, spec_.omega3, j, k_max);
      total = add(total, s);
    }
  }
  std::scoped_lock lock(memo_mutex_);
  vacuum_memo_.emplace(std::make_tuple(i, leg, k_max), total);
  return total;
}

LogSeries LogIntertwiner::raw_eval(int i, const ModuleVector& w2, long k_max) const {
  std::string key = w2.to_lines();
  {
    std::scoped_lock lock(memo_mutex_);
    auto it = eval_memo_.find({i, key, k_max});
    if (it != eval_memo_.end()) return it->second;
  }
  const Rational& lambda = spec_.lambda();
  auto [start, pos] = chain_position(spec_.omega1, i);
  LogSeries total = LogSeries::zero(lambda * spec_.nu());

  for (const auto& [st, c] : w2.terms()) {
    const std::vector<int>& parts = st.mu.parts();
    int len = static_cast<int>(parts.size());
    long inflated = k_max + st.mu.size();

    // rows: chain position 0..pos (0 is the zero series);
    // cols: suffix start index in `parts`.
    std::vector<std::vector<LogSeries>> table(
        pos + 1, std::vector<LogSeries>(len + 1, LogSeries::zero(total.offset())));
    for (int p = 1; p <= pos; ++p) table[p][len] = raw_vacuum(start + p - 1, st.leg, inflated);

    // Peel h(-n): Y(w)(h(-n)u) = h(-n)Y(w)u - x^{-n}(lambda Y(w)u + Y(w_-)u).
    for (int idx = len - 1; idx >= 0; --idx) {
      int n = parts[idx];
      for (int p = 1; p <= pos; ++p) {
        LogSeries created = apply_mode_h(table[p][idx + 1], -n, spec_.omega3);
        LogSeries shifted = add(scale(table[p][idx + 1], lambda), table[p - 1][idx + 1]);
        table[p][idx] = add(created, negate(mul_x_int(shifted, -n)));
      }
    }
    total = add(total, scale(table[pos][0], c));
  }
  std::scoped_lock lock(memo_mutex_);
  eval_memo_.emplace(std::make_tuple(i, std::move(key), k_max), total);
  return total;
}

LogSeries LogIntertwiner::finish(LogSeries s) const {
  for (int t = 0; t < lowerings_; ++t) s = lower_log(s);
  return s;
}

LogSeries LogIntertwiner::eval_vacuum(int i, const ModuleVector& w2, long k_max) const {
  auto level = w2.homogeneous_level();
  if (!level || *level != 0)
    throw MalformedInput("eval_vacuum: second argument must lie in the level-0 slice");
  LogSeries total = LogSeries::zero(spec_.lambda() * spec_.nu());
  for (const auto& [st, c] : w2.terms())
    total = add(total, scale(raw_vacuum(i, st.leg, k_max), c));
  return finish(std::move(total));
}

LogSeries LogIntertwiner::eval(int i, const ModuleVector& w2, long k_max) const {
  return finish(raw_eval(i, w2, k_max));
}

LogSeries LogIntertwiner::eval_first(const ModuleVector& v1, const ModuleVector& w2,
                                     long k_max) const {
  long budget = k_max + v1.max_level() + w2.max_level();
  std::map<std::pair<std::string, std::string>, LogSeries> memo;

  std::function<LogSeries(const std::vector<int>&, size_t, int, const ModuleVector&)> rec =
      [&](const std::vector<int>& parts, size_t idx, int leg,
          const ModuleVector& w) -> LogSeries {
    if (idx == parts.size()) return raw_eval(leg, w, budget);

    std::ostringstream keyhead;
    for (size_t q = idx; q < parts.size(); ++q) keyhead << parts[q] << ',';
    keyhead << "g" << leg;
    auto key = std::make_pair(keyhead.str(), w.to_lines());
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int n = parts[idx];
    LogSeries inner = rec(parts, idx + 1, leg, w);

    // Creation part of the derivative field d^{n-1}h(x)/(n-1)!. The
    // x^{ii} h(-n-ii) tail is infinite on a nonzero input, so the sum
    // is exact only through the budget ceiling.
    LogSeries out = LogSeries::zero(inner.offset());
    bool creation_tail = false;
    long ii_max = budget - inner.window().k_min;
    for (long ii = 0; ii <= ii_max; ++ii) {
      LogSeries term = apply_mode_h(inner, static_cast<int>(-n - ii), spec_.omega3);
      if (term.is_zero() && !term.truncated_above()) continue;
      creation_tail = true;
      out = add(out, scale(mul_x_int(term, ii),
                           binomial(static_cast<unsigned long>(n + ii - 1),
                                    static_cast<unsigned long>(n - 1))));
    }
    if (creation_tail)
      out.set_truncated(out.truncated_above() ? std::min(out.window().k_max, budget) : budget);
    // Annihilation-and-zero part acting on the second argument first.
    Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^{n-1}
    for (int ii = 0; ii <= w.max_level(); ++ii) {
      ModuleVector hw = apply_h(ii, w, spec_.omega2);
      if (hw.is_zero()) continue;
      LogSeries term = rec(parts, idx + 1, leg, hw);
      out = add(out, scale(mul_x_int(term, -n - ii),
                           sign * binomial(static_cast<unsigned long>(n + ii - 1),
                                           static_cast<unsigned long>(n - 1))));
    }
    memo.emplace(std::move(key), out);
    return out;
  };

  LogSeries total = LogSeries::zero(spec_.lambda() * spec_.nu());
  for (const auto& [st, c] : v1.terms())
    total = add(total, scale(rec(st.mu.parts(), 0, st.leg, w2), c));
  if (total.truncated_above() && total.window().k_max > k_max) total.set_truncated(k_max);
  return finish(std::move(total));
}

// --- checks -------------------------------------------------------------

namespace {

std::string describe_mismatch(const LogSeries& lhs, const LogSeries& rhs,
                              const SeriesComparison& cmp) {
  if (cmp.equal || !cmp.witness) return {};
  auto [k, j] = *cmp.witness;  // witness is in the lhs slot frame
  long d = (rhs.offset() - lhs.offset()).to_long();
  std::ostringstream os;
  os << "slot x^(" << lhs.exponent_of(k).str() << ") log^" << j << ": lhs="
     << lhs.peek(k, j).inline_str() << " rhs=" << rhs.peek(k - d, j).inline_str();
  return os.str();
}

}  // namespace

CheckResult check_h_bracket(const LogIntertwiner& op, int i, int n, const ModuleVector& w2,
                            long k_max) {
  const IntertwinerSpec& spec = op.spec();
  long pad = n < 0 ? -static_cast<long>(n) : 0;

  LogSeries s_big = op.eval(i, w2, k_max + pad);
  LogSeries lhs = add(apply_mode_h(s_big, n, spec.omega3),
                      negate(op.eval(i, apply_h(n, w2, spec.omega2), k_max)));

  LogSeries rhs = scale(s_big, spec.lambda());
  if (int lo = spec.omega1.lower_index(i); lo != 0)
    rhs = add(rhs, op.eval(lo, w2, k_max + pad));
  rhs = mul_x_int(rhs, n);

  SeriesComparison cmp = compare_on_common_window(lhs, rhs);
  return CheckResult{cmp.equal, describe_mismatch(lhs, rhs, cmp)};
}

CheckResult check_L_minus1(const LogIntertwiner& op, int i, const ModuleVector& w2, long k_max) {
  const IntertwinerSpec& spec = op.spec();
  LogSeries s_big = op.eval(i, w2, k_max + 1);
  LogSeries lhs = add(apply_mode_L(s_big, -1, spec.omega3, spec.a),
                      negate(op.eval(i, apply_L(-1, w2, spec.omega2, spec.a), k_max)));
  LogSeries rhs = ddx(s_big);
  SeriesComparison cmp = compare_on_common_window(lhs, rhs);
  return CheckResult{cmp.equal, describe_mismatch(lhs, rhs, cmp)};
}

std::vector<ModuleVector> sample_states(const OmegaSpec& omega, int max_level) {
  std::vector<ModuleVector> out;
  for (int level = 0; level <= max_level; ++level)
    for (const FockState& st : level_basis(level, omega))
      out.push_back(ModuleVector::unit(st));
  return out;
}

int measured_depth(const LogIntertwiner& op, int sample_level, long k_max) {
  int depth = 0;
  for (int i = 1; i <= op.spec().omega1.dim(); ++i)
    for (const ModuleVector& w2 : sample_states(op.spec().omega2, sample_level))
      depth = std::max(depth, op.eval(i, w2, k_max).depth());
  return depth;
}

LogIntertwiner derived_operator(const LogIntertwiner& op, int sample_level, long k_max) {
  if (measured_depth(op, sample_level, k_max) == 0)
    throw NothingToLower("derived_operator: operator already has depth 0");
  return LogIntertwiner(op.spec(), op.lowerings() + 1);
}

std::vector<Matrix> f_map(const LogIntertwiner& op) {
  const IntertwinerSpec& spec = op.spec();
  int components = spec.omega1.nilpotent_order() + spec.omega2.nilpotent_order() - 1;
  int d1 = spec.omega1.dim(), d2 = spec.omega2.dim(), d3 = spec.omega3.dim();
  std::vector<Matrix> fs(components, Matrix(d3, static_cast<size_t>(d1) * d2));
  for (int i1 = 1; i1 <= d1; ++i1)
    for (int j2 = 1; j2 <= d2; ++j2) {
      ModuleVector w2 = ModuleVector::unit(FockState{Partition{}, j2});
      LogSeries s = op.eval(i1, w2, 1);
      for (int c = 0; c < components; ++c) {
        const ModuleVector& vec = s.peek(0, c);
        for (const auto& [st, coeff] : vec.terms()) {
          if (!st.mu.empty())
            throw std::logic_error("f_map: slot-0 coefficient not in the vacuum slice");
          fs[c].at(st.leg - 1, spec.t_col(i1, j2)) = coeff;
        }
      }
    }
  return fs;
}

// --- mock operator ------------------------------------------------------

namespace {

LogSeries crop_log(const LogSeries& s, int jmax) {
  LogSeries out = LogSeries::zero(s.offset());
  for (const auto& [kj, v] : s.coeffs())
    if (kj.second <= jmax) out.add_to(kj.first, kj.second, v);
  if (s.truncated_above())
    out.set_truncated(s.window().k_max);
  else
    out.recompute_hull();
  return out;
}

}  // namespace

MockLogReport mock_log_check(const Rational& lambda, const Rational& nu, const Rational& a,
                             long k_max, int log_cutoff) {
  if ((lambda * nu).is_zero())
    throw DegenerateParameters("mock_log_check: the growth claim needs lambda*nu != 0");
  if (log_cutoff < 1) throw std::invalid_argument("mock_log_check: log cutoff must be >= 1");

  OmegaSpec o1(lambda, {1}), o2(nu, {1}), o3(lambda + nu, {1});
  Matrix t(1, 1);
  t.at(0, 0) = Rational(1);
  LogIntertwiner op(IntertwinerSpec::checked(a, o1, o2, o3, t));

  const Rational ln = lambda * nu;
  auto mock_series = [&](const ModuleVector& w2, long ceil) {
    LogSeries base = mul_x_rational(op.eval(1, w2, ceil), -ln);
    LogSeries out = LogSeries::zero(base.offset());
    for (int tdeg = 0; tdeg < log_cutoff; ++tdeg)
      out = add(out, scale(mul_log(base, tdeg), ln.pow(tdeg) / factorial(tdeg)));
    return out;
  };

  MockLogReport report;
  report.log_cutoff = log_cutoff;

  for (const ModuleVector& w2 : sample_states(o2, 2)) {
    LogSeries s = mock_series(w2, k_max + 1);
    LogSeries lhs = add(apply_mode_L(s, -1, o3, a),
                        negate(mock_series(apply_L(-1, w2, o2, a), k_max)));
    LogSeries rhs = ddx(s);

    SeriesComparison below =
        compare_on_common_window(crop_log(lhs, log_cutoff - 2), crop_log(rhs, log_cutoff - 2));
    if (!below.equal && report.l_minus1_below_cutoff) {
      report.l_minus1_below_cutoff = false;
      report.failure_witness = describe_mismatch(lhs, rhs, below);
    }
    SeriesComparison full = compare_on_common_window(lhs, rhs);
    if (!full.equal && full.witness && full.witness->second == log_cutoff - 1)
      report.leak_at_top = true;
  }

  ModuleVector vac = ModuleVector::unit(FockState{Partition{}, 1});
  LogSeries s0 = mock_series(vac, k_max);
  for (const auto& [kj, v] : s0.coeffs())
    if (kj.second == log_cutoff - 1 && !v.is_zero()) {
      report.top_log_nonzero = true;
      std::ostringstream os;
      os << "x^(" << s0.exponent_of(kj.first).str() << ") log^" << kj.second << " : "
         << v.inline_str();
      report.top_log_witness = os.str();
      break;
    }
  return report;
}

}  // namespace logvoa
