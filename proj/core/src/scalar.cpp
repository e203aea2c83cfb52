#include "logvoa/scalar.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace logvoa {

Rational central_charge(const Rational& a) { return Rational(1) - Rational(12) * a * a; }

Rational lowest_weight(const Rational& lambda, const Rational& a) {
  return lambda * lambda / Rational(2) - a * lambda;
}

bool contragredient_weight_identity(const Rational& lambda, const Rational& a) {
  return lowest_weight(Rational(2) * a - lambda, a) == lowest_weight(lambda, a);
}

namespace {

// Shared memo; growth is guarded so callers may run in parallel.
std::mutex& partition_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Rational>& partition_table() {
  static std::vector<Rational> table{Rational(1)};
  return table;
}

}  // namespace

Rational partition_count(long n) {
  if (n < 0) return Rational(0);
  std::scoped_lock lock(partition_mutex());
  auto& p = partition_table();
  while (static_cast<long>(p.size()) <= n) {
    long m = static_cast<long>(p.size());
    Rational acc(0);
    for (long k = 1;; ++k) {
      long g1 = k * (3 * k - 1) / 2;
      long g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
      if (g1 <= m) acc += sign * p[m - g1];
      if (g2 <= m) acc += sign * p[m - g2];
    }
    p.push_back(acc);
  }
  return p[n];
}

QSeries eta_inverse_series(long n_max) {
  if (n_max < 0) throw std::invalid_argument("eta_inverse_series: negative truncation level");
  QSeries out;
  out.offset = Rational(-1, 24);
  out.coeffs.reserve(static_cast<size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) out.coeffs.push_back(partition_count(n));
  return out;
}

}  // namespace logvoa
