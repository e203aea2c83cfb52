#include "logvoa/virstruct.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "logvoa/errors.hpp"
#include "logvoa/scalar.hpp"

namespace logvoa {

namespace {
const Rational kZero(0);
}

std::vector<SingularVector> singular_basis(int weight, const OmegaSpec& omega) {
  if (weight < 0) throw std::invalid_argument("singular_basis: negative weight");
  std::vector<FockState> basis = level_basis(weight, omega);

  std::vector<std::vector<FockState>> out_bases;
  for (int n = 1; n <= 2; ++n)
    if (weight - n >= 0) out_bases.push_back(level_basis(weight - n, omega));

  size_t rows = 0;
  for (const auto& b : out_bases) rows += b.size();
  Matrix stacked(rows, basis.size());
  size_t row0 = 0;
  for (size_t bi = 0; bi < out_bases.size(); ++bi) {
    int n = static_cast<int>(bi) + 1;
    for (size_t c = 0; c < basis.size(); ++c) {
      ModuleVector img = apply_L(n, ModuleVector::unit(basis[c]), omega, Rational(0));
      for (const auto& [st, coeff] : img.terms()) {
        auto it = std::find(out_bases[bi].begin(), out_bases[bi].end(), st);
        if (it == out_bases[bi].end())
          throw std::logic_error("singular_basis: image outside the expected level");
        stacked.at(row0 + (it - out_bases[bi].begin()), c) = coeff;
      }
    }
    row0 += out_bases[bi].size();
  }

  std::vector<SingularVector> out;
  for (const auto& coords : stacked.kernel_basis()) {
    ModuleVector v;
    for (size_t i = 0; i < basis.size(); ++i) v.add_term(basis[i], coords[i]);
    // Normalize the leading coefficient (first basis state present).
    const Rational& lead = v.terms().begin()->second;
    v *= Rational(1) / lead;
    out.push_back(SingularVector{std::move(v), Rational(weight) + lowest_weight_of(omega, 0)});
  }
  return out;
}

ModuleVector lift_chain(const ModuleVector& u, const OmegaSpec& omega) {
  auto leg = u.homogeneous_leg();
  if (!leg) throw MalformedInput("lift_chain: input supported on multiple omega indices");
  int raised = omega.raise_index(*leg);
  if (raised == 0) throw MalformedInput("lift_chain: already at the top of its Jordan block");
  ModuleVector out;
  for (const auto& [st, c] : u.terms()) out.add_term(FockState{st.mu, raised}, c);
  return out;
}

ModuleVector embed_at_leg(const ModuleVector& v, int leg) {
  ModuleVector out;
  for (const auto& [st, c] : v.terms()) {
    if (st.leg != 1) throw MalformedInput("embed_at_leg: input must have all legs at index 1");
    out.add_term(FockState{st.mu, leg}, c);
  }
  return out;
}

std::vector<Rational> VirSubmodule::coordinates_at(const ModuleVector& v, int level) const {
  const auto& basis = bases_[level];
  std::vector<Rational> x(basis.size());
  for (const auto& [st, c] : v.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), st, FockStateLess{});
    if (it == basis.end() || !(*it == st))
      throw std::logic_error("VirSubmodule: state missing from level basis");
    x[it - basis.begin()] = c;
  }
  return x;
}

VirSubmodule::VirSubmodule(const std::vector<ModuleVector>& generators, const OmegaSpec& omega,
                           int weight_bound)
    : omega_(omega), bound_(weight_bound) {
  if (weight_bound < 0) throw std::invalid_argument("VirSubmodule: negative weight bound");
  for (int level = 0; level <= bound_; ++level) {
    bases_.push_back(level_basis(level, omega_));
    echelons_.emplace_back(bases_.back().size());
  }

  std::deque<ModuleVector> queue;
  auto insert_vec = [&](const ModuleVector& v) -> bool {
    if (v.is_zero()) return false;
    auto level = v.homogeneous_level();
    if (!level) throw MalformedInput("VirSubmodule: generators must be homogeneous");
    if (*level > bound_) return false;
    if (!echelons_[*level].insert(coordinates_at(v, *level))) return false;
    // Re-expand the reduced representative? Reduction changes the vector;
    // closure is over the span, so enqueue the original.
    return true;
  };

  for (const auto& g : generators)
    if (insert_vec(g)) queue.push_back(g);

  while (!queue.empty()) {
    ModuleVector v = std::move(queue.front());
    queue.pop_front();
    int level = *v.homogeneous_level();
    for (int n = -bound_; n <= bound_; ++n) {
      int out_level = level - n;
      if (out_level < 0 || out_level > bound_) continue;
      ModuleVector img = apply_L(n, v, omega_, Rational(0));
      if (insert_vec(img)) queue.push_back(std::move(img));
    }
  }
}

bool VirSubmodule::contains(const ModuleVector& v) const {
  if (v.is_zero()) return true;
  auto level = v.homogeneous_level();
  if (!level) throw MalformedInput("VirSubmodule: membership query must be homogeneous");
  if (*level > bound_) throw std::out_of_range("VirSubmodule: query beyond the weight bound");
  return echelons_[*level].contains(coordinates_at(v, *level));
}

std::vector<int> VirSubmodule::graded_dims() const {
  std::vector<int> dims;
  for (const auto& e : echelons_) dims.push_back(static_cast<int>(e.size()));
  return dims;
}

namespace {

/// The normalized singular vector of M(1) at weight m^2, embedded at a leg.
ModuleVector singular_at_leg(int m, int leg) {
  auto sing = singular_basis(m * m, OmegaSpec::trivial());
  if (sing.size() != 1)
    throw std::logic_error("singular vector at a square weight is not unique");
  return leg == 1 ? sing[0].vector : embed_at_leg(sing[0].vector, leg);
}

}  // namespace

bool check_L0_jordan(int n, const OmegaSpec& omega) {
  if (omega.dim() < 3 || !omega.eigenvalue().is_zero())
    throw MalformedInput("check_L0_jordan: needs a 3-dimensional nilpotent omega");
  ModuleVector u_n = singular_at_leg(n, 1);
  ModuleVector u3 = lift_chain(lift_chain(u_n, omega), omega);
  ModuleVector lhs = apply_L(0, u3, omega, Rational(0));
  ModuleVector rhs = Rational(n * n) * u3 + Rational(1, 2) * u_n;
  return lhs == rhs;
}

std::string StructureDiagram::to_tgf() const {
  std::ostringstream os;
  auto node_id = [&](int tier, int m) {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].tier == tier && nodes[i].m == m) return i + 1;
    throw std::logic_error("StructureDiagram: arrow endpoint missing");
  };
  for (size_t i = 0; i < nodes.size(); ++i)
    os << (i + 1) << " tier" << nodes[i].tier << " m=" << nodes[i].m
       << " weight=" << nodes[i].weight << '\n';
  os << "#\n";
  for (const auto& a : arrows)
    os << node_id(a.tier_from, a.m_from) << ' ' << node_id(a.tier_to, a.m_to)
       << (a.literal ? " literal" : " mod-singular") << '\n';
  return os.str();
}

StructureDiagram structure_diagram(const OmegaSpec& omega, int weight_bound) {
  if (!omega.eigenvalue().is_zero() || omega.block_sizes().size() != 1)
    throw MalformedInput("structure_diagram: needs a single nilpotent Jordan block");
  int tiers = omega.dim();

  StructureDiagram d;
  std::vector<int> ms;
  for (int m = 0; m * m <= weight_bound; ++m) ms.push_back(m);

  std::map<std::pair<int, int>, ModuleVector> vec;  // (tier, m) -> vector
  for (int m : ms) {
    ModuleVector v = singular_at_leg(m, 1);
    for (int tier = 1; tier <= tiers; ++tier) {
      d.nodes.push_back(DiagramNode{tier, m, m * m});
      vec[{tier, m}] = v;
      if (tier < tiers) v = lift_chain(v, omega);
    }
  }

  // Singular-tier submodule, for the tier-3 fallback test.
  std::vector<ModuleVector> singulars;
  for (int m : ms) singulars.push_back(vec[{1, m}]);

  for (int tier = 2; tier <= tiers; ++tier) {
    for (int m : ms) {
      VirSubmodule sub({vec[{tier, m}]}, omega, weight_bound);
      for (int mt : ms) {
        const ModuleVector& target = vec[{tier - 1, mt}];
        if (sub.contains(target)) {
          d.arrows.push_back(DiagramArrow{tier, m, tier - 1, mt, true});
        } else if (tier >= 3) {
          std::vector<ModuleVector> gens = singulars;
          gens.push_back(vec[{tier, m}]);
          VirSubmodule with_singulars(gens, omega, weight_bound);
          VirSubmodule singular_span(singulars, omega, weight_bound);
          if (with_singulars.contains(target) && !singular_span.contains(target))
            d.arrows.push_back(DiagramArrow{tier, m, tier - 1, mt, false});
        }
      }
    }
  }
  return d;
}

LogSeries vertex_operator_apply(const ModuleVector& v, const ModuleVector& w,
                                const OmegaSpec& omega_w, const Rational& a, long k_max) {
  (void)a;  // the vertex operator of M(1) does not depend on the conformal shift
  for (const auto& [st, c] : v.terms())
    if (st.leg != 1) throw MalformedInput("vertex_operator_apply: v must lie in M(1) itself");

  long budget = k_max + v.max_level() + w.max_level();

  std::function<LogSeries(const std::vector<int>&, size_t, const ModuleVector&)> rec =
      [&](const std::vector<int>& parts, size_t idx, const ModuleVector& target) -> LogSeries {
    if (idx == parts.size()) return LogSeries::constant(Rational(0), target);
    int n = parts[idx];
    LogSeries inner = rec(parts, idx + 1, target);

    LogSeries out = LogSeries::zero(inner.offset());
    bool creation_tail = false;
    long ii_max = budget - inner.window().k_min;
    for (long ii = 0; ii <= ii_max; ++ii) {
      LogSeries term = apply_mode_h(inner, static_cast<int>(-n - ii), omega_w);
      if (term.is_zero() && !term.truncated_above()) continue;
      creation_tail = true;
      out = add(out, scale(mul_x_int(term, ii),
                           binomial(static_cast<unsigned long>(n + ii - 1),
                                    static_cast<unsigned long>(n - 1))));
    }
    if (creation_tail)
      out.set_truncated(out.truncated_above() ? std::min(out.window().k_max, budget) : budget);

    Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^{n-1}
    for (int ii = 0; ii <= target.max_level(); ++ii) {
      ModuleVector hw = apply_h(ii, target, omega_w);
      if (hw.is_zero()) continue;
      LogSeries term = rec(parts, idx + 1, hw);
      out = add(out, scale(mul_x_int(term, -n - ii),
                           sign * binomial(static_cast<unsigned long>(n + ii - 1),
                                           static_cast<unsigned long>(n - 1))));
    }
    return out;
  };

  LogSeries total = LogSeries::zero(Rational(0));
  for (const auto& [st, c] : v.terms())
    total = add(total, scale(rec(st.mu.parts(), 0, w), c));
  if (total.truncated_above() && total.window().k_max > k_max) total.set_truncated(k_max);
  return total;
}

long c1_irreducible_dim(int k, int d) {
  if (d < 0) return 0;
  Rational dim = partition_count(d) - partition_count(d - 2 * k - 1);
  return dim.to_long();
}

FusionReport fusion_span_check(int m, int n, int weight_bound) {
  if (m < 0 || n < 0) throw std::invalid_argument("fusion_span_check: negative labels");
  FusionReport report;
  report.m = m;
  report.n = n;
  report.weight_bound = weight_bound;

  OmegaSpec trivial = OmegaSpec::trivial();
  ModuleVector um = singular_at_leg(m, 1);
  ModuleVector un = singular_at_leg(n, 1);

  long k_top = weight_bound - m * m - n * n;
  std::vector<ModuleVector> gens;
  if (k_top >= -(2 * m * n)) {
    LogSeries s = vertex_operator_apply(un, um, trivial, Rational(0), k_top);
    for (const auto& [kj, coeff] : s.coeffs()) {
      int weight = m * m + n * n + static_cast<int>(kj.first);
      if (weight >= 0 && weight <= weight_bound) gens.push_back(coeff);
    }
  }
  VirSubmodule span(gens, trivial, weight_bound);
  report.computed_dims = span.graded_dims();

  for (int d = 0; d <= weight_bound; ++d) {
    long expected = 0;
    for (int k = std::abs(m - n); k <= m + n; k += 2) expected += c1_irreducible_dim(k, d - k * k);
    report.expected_dims.push_back(static_cast<int>(expected));
  }
  report.match = report.computed_dims == report.expected_dims;
  return report;
}

HiddenReport hidden_intertwiner_check(int m, int n, int weight_bound, long k_max) {
  if (m < 0 || n < 0) throw std::invalid_argument("hidden_intertwiner_check: negative labels");
  HiddenReport report;
  report.m = m;
  report.n = n;

  OmegaSpec omega2(Rational(0), {2});
  OmegaSpec omega3(Rational(0), {3});
  // w2 (x) w2 -> w~3, cross terms -> w~2/2, w1 (x) w1 -> w~1/2.
  Matrix t(3, 4);
  t.at(0, 0) = Rational(1, 2);  // w1 (x) w1
  t.at(1, 1) = Rational(1, 2);  // w1 (x) w2
  t.at(1, 2) = Rational(1, 2);  // w2 (x) w1
  t.at(2, 3) = Rational(1);     // w2 (x) w2

  IntertwinerSpec spec = IntertwinerSpec::unchecked(Rational(0), omega2, omega2, omega3, t);
  report.t_equivariant = spec.equivariant();
  if (!report.t_equivariant) {
    report.failure_witness = "T fails h(0)-equivariance";
    return report;
  }
  LogIntertwiner op(spec);

  ModuleVector u2m = singular_at_leg(m, 2);
  ModuleVector u2n = singular_at_leg(n, 2);

  // (b) depth exactly 1 with a log^1 witness, over the generator and a
  // couple of its Vir-descendants inside W2(1, m^2).
  std::vector<ModuleVector> firsts{u2m, apply_L(-1, u2m, omega2, Rational(0)),
                                   apply_L(-2, u2m, omega2, Rational(0))};
  int max_depth = 0;
  for (const auto& v1 : firsts) {
    if (v1.is_zero()) continue;
    LogSeries s = op.eval_first(v1, u2n, k_max);
    max_depth = std::max(max_depth, s.depth());
  }
  LogSeries s_main = op.eval_first(u2m, u2n, k_max);
  report.depth_one = (max_depth == 1) && (s_main.depth() == 1);
  for (const auto& [kj, coeff] : s_main.coeffs())
    if (kj.second == 1 && !coeff.is_zero()) {
      std::ostringstream os;
      os << "x^(" << s_main.exponent_of(kj.first).str() << ") log^1 : " << coeff.inline_str();
      report.log1_witness = os.str();
      break;
    }
  if (report.log1_witness.empty()) report.depth_one = false;

  // (c) the singular-tier cross evaluations stay log-free.
  report.cross_log_free = true;
  for (int mm : {m - 1, m + 1}) {
    if (mm < 0) continue;
    for (int nn : {n - 1, n + 1}) {
      if (nn < 0) continue;
      if (mm * mm > weight_bound || nn * nn > weight_bound) continue;
      LogSeries s = op.eval_first(singular_at_leg(mm, 1), singular_at_leg(nn, 1), k_max);
      if (s.depth() != 0) {
        report.cross_log_free = false;
        report.failure_witness = "log term in the singular-tier image";
      }
    }
  }

  // (d) h(0) Y(u^{2,m},x)u^{2,n} = Y(u^m,x)u^{2,n} + Y(u^{2,m},x)u^n.
  LogSeries lhs = apply_mode_h(s_main, 0, omega3);
  LogSeries rhs = add(op.eval_first(singular_at_leg(m, 1), u2n, k_max),
                      op.eval_first(u2m, singular_at_leg(n, 1), k_max));
  SeriesComparison cmp = compare_on_common_window(lhs, rhs);
  report.filtration_identity = cmp.equal;
  if (!cmp.equal && cmp.witness) {
    std::ostringstream os;
    os << "filtration identity fails at slot (k=" << cmp.witness->first
       << ", log=" << cmp.witness->second << ")";
    report.failure_witness = os.str();
  }
  return report;
}

CharacterReport character_check(const Rational& a, const Rational& lambda, int n_max) {
  if (n_max < 0) throw std::invalid_argument("character_check: negative level bound");
  CharacterReport report;
  OmegaSpec omega(lambda, {1});
  report.dims_match = true;
  for (int n = 0; n <= n_max; ++n) {
    long dim = static_cast<long>(level_basis(n, omega).size());
    report.dims.push_back(dim);
    if (!(Rational(dim) == partition_count(n))) report.dims_match = false;
  }
  report.q_offset = lowest_weight(lambda, a) - central_charge(a) / Rational(24);
  report.offset_is_minus_one_24 = report.q_offset == Rational(-1, 24);
  report.lambda_equals_a = lambda == a;
  return report;
}

bool negative_transpose_same_blocks(const OmegaSpec& omega) {
  if (!omega.eigenvalue().is_zero())
    throw MalformedInput("negative_transpose_same_blocks: needs nilpotent h(0)");
  int d = omega.dim();
  Matrix neg_t(d, d);
  for (int i = 1; i <= d; ++i)
    if (int lo = omega.lower_index(i); lo != 0) neg_t.at(i - 1, lo - 1) = Rational(-1);

  // Block sizes from the rank sequence of powers.
  std::vector<int> sizes;
  std::vector<size_t> ranks{static_cast<size_t>(d)};
  Matrix power = neg_t;
  while (true) {
    ranks.push_back(power.rank());
    if (ranks.back() == 0) break;
    power = power * neg_t;
  }
  std::vector<int> at_least;
  for (size_t k = 1; k < ranks.size(); ++k)
    at_least.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
  for (size_t k = at_least.size(); k >= 1; --k) {
    int exact = at_least[k - 1] - (k < at_least.size() ? at_least[k] : 0);
    for (int i = 0; i < exact; ++i) sizes.push_back(static_cast<int>(k));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());

  std::vector<int> expected = omega.block_sizes();
  std::sort(expected.begin(), expected.end(), std::greater<int>());
  return sizes == expected;
}

}  // namespace logvoa
