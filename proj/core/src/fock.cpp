#include "logvoa/fock.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "logvoa/errors.hpp"
#include "logvoa/linalg.hpp"

namespace logvoa {

OmegaSpec::OmegaSpec(Rational eigenvalue, std::vector<int> block_sizes)
    : eigenvalue_(std::move(eigenvalue)), blocks_(std::move(block_sizes)) {
  if (blocks_.empty()) throw std::invalid_argument("OmegaSpec: no blocks");
  for (int b : blocks_)
    if (b < 1) throw std::invalid_argument("OmegaSpec: block sizes must be >= 1");
  dim_ = std::accumulate(blocks_.begin(), blocks_.end(), 0);
  block_of_.resize(dim_ + 1);
  start_of_.resize(dim_ + 1);
  int idx = 1;
  for (size_t b = 0; b < blocks_.size(); ++b) {
    int start = idx;
    for (int i = 0; i < blocks_[b]; ++i, ++idx) {
      block_of_[idx] = static_cast<int>(b);
      start_of_[idx] = start;
    }
  }
}

int OmegaSpec::nilpotent_order() const { return *std::max_element(blocks_.begin(), blocks_.end()); }

int OmegaSpec::lower_index(int index) const {
  if (index < 1 || index > dim_) throw std::out_of_range("OmegaSpec: index out of range");
  return index == start_of_[index] ? 0 : index - 1;
}

int OmegaSpec::raise_index(int index) const {
  if (index < 1 || index > dim_) throw std::out_of_range("OmegaSpec: index out of range");
  if (index < dim_ && start_of_[index + 1] == start_of_[index]) return index + 1;
  return 0;
}

std::string OmegaSpec::fingerprint() const {
  std::ostringstream os;
  os << "l=" << eigenvalue_.str() << ";b=";
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << ',';
    os << blocks_[i];
  }
  return os.str();
}

void ModuleVector::add_term(FockState st, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(std::move(st), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const Rational* ModuleVector::coeff(const FockState& st) const {
  auto it = terms_.find(st);
  return it == terms_.end() ? nullptr : &it->second;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [st, c] : o.terms_) add_term(st, c);
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  for (const auto& [st, c] : o.terms_) add_term(st, -c);
  return *this;
}

ModuleVector& ModuleVector::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [st, v] : terms_) v *= c;
  return *this;
}

int ModuleVector::max_level() const {
  int m = 0;
  for (const auto& [st, c] : terms_) m = std::max(m, st.mu.size());
  return m;
}

int ModuleVector::max_part() const {
  int m = 0;
  for (const auto& [st, c] : terms_) m = std::max(m, st.mu.max_part());
  return m;
}

std::optional<int> ModuleVector::homogeneous_level() const {
  if (terms_.empty()) return 0;
  int level = terms_.begin()->first.mu.size();
  for (const auto& [st, c] : terms_)
    if (st.mu.size() != level) return std::nullopt;
  return level;
}

std::optional<int> ModuleVector::homogeneous_leg() const {
  if (terms_.empty()) return std::nullopt;
  int leg = terms_.begin()->first.leg;
  for (const auto& [st, c] : terms_)
    if (st.leg != leg) return std::nullopt;
  return leg;
}

std::string ModuleVector::to_lines() const {
  std::ostringstream os;
  for (const auto& [st, c] : terms_)
    os << st.mu.str() << " | " << st.leg << " | " << c.str() << '\n';
  return os.str();
}

ModuleVector ModuleVector::parse_lines(const std::string& text) {
  ModuleVector out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto p1 = line.find('|');
    auto p2 = line.find('|', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw MalformedInput("ModuleVector: bad term line '" + line + "'");
    Partition mu = Partition::parse(line.substr(0, p1));
    int leg = std::stoi(line.substr(p1 + 1, p2 - p1 - 1));
    Rational c = Rational::parse(line.substr(p2 + 1));
    out.add_term(FockState{std::move(mu), leg}, c);
  }
  return out;
}

std::string ModuleVector::inline_str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [st, c] : terms_) {
    if (!first) os << "; ";
    first = false;
    os << st.mu.str() << " | " << st.leg << " | " << c.str();
  }
  return os.str();
}

ModuleVector apply_h(int n, const ModuleVector& v, const OmegaSpec& omega) {
  ModuleVector out;
  for (const auto& [st, c] : v.terms()) {
    if (st.leg < 1 || st.leg > omega.dim())
      throw MalformedInput("apply_h: omega index out of range");
    if (n < 0) {
      out.add_term(FockState{st.mu.with_part(-n), st.leg}, c);
    } else if (n > 0) {
      int mult = st.mu.count(n);
      if (mult > 0)
        out.add_term(FockState{st.mu.without_part(n), st.leg}, c * Rational(n) * Rational(mult));
    } else {
      out.add_term(st, c * omega.eigenvalue());
      if (int lo = omega.lower_index(st.leg); lo != 0)
        out.add_term(FockState{st.mu, lo}, c);
    }
  }
  return out;
}

ModuleVector apply_h0_nilpotent(const ModuleVector& v, const OmegaSpec& omega) {
  ModuleVector out;
  for (const auto& [st, c] : v.terms())
    if (int lo = omega.lower_index(st.leg); lo != 0) out.add_term(FockState{st.mu, lo}, c);
  return out;
}

ModuleVector apply_h0_transpose(const ModuleVector& v, const OmegaSpec& omega) {
  ModuleVector out;
  for (const auto& [st, c] : v.terms())
    if (int hi = omega.raise_index(st.leg); hi != 0) out.add_term(FockState{st.mu, hi}, c);
  return out;
}

ModuleVector apply_L(int n, const ModuleVector& v, const OmegaSpec& omega, const Rational& a) {
  // -a(n+1) h(n) part.
  ModuleVector out = apply_h(n, v, omega);
  out *= -a * Rational(n + 1);

  // 1/2 sum_j :h(j)h(n-j): with annihilators acting first. The j-sum is
  // finite on v: an annihilator index beyond max_part + |n| cannot act.
  int reach = v.max_part() + std::abs(n);
  Rational half(1, 2);
  for (int j = -reach; j <= reach; ++j) {
    int p = j, q = n - j;
    int inner = std::max(p, q), outer = std::min(p, q);
    ModuleVector w = apply_h(inner, v, omega);
    if (w.is_zero()) continue;
    w = apply_h(outer, w, omega);
    if (w.is_zero()) continue;
    w *= half;
    out += w;
  }
  return out;
}

WeightInfo weight_info(const ModuleVector& v, const OmegaSpec& omega, const Rational& a) {
  WeightInfo info;
  auto level = v.homogeneous_level();
  if (!level) return info;
  info.homogeneous = true;
  info.generalized_weight = Rational(*level) + lowest_weight_of(omega, a);
  return info;
}

Rational lowest_weight_of(const OmegaSpec& omega, const Rational& a) {
  const Rational& l = omega.eigenvalue();
  return l * l / Rational(2) - a * l;
}

std::vector<FockState> level_basis(int level, const OmegaSpec& omega) {
  std::vector<FockState> basis;
  for (const Partition& mu : partitions_of(level))
    for (int leg = 1; leg <= omega.dim(); ++leg) basis.push_back(FockState{mu, leg});
  return basis;
}

namespace {

std::vector<Rational> coordinates(const ModuleVector& v, const std::vector<FockState>& basis) {
  std::vector<Rational> x(basis.size());
  size_t found = 0;
  for (size_t i = 0; i < basis.size(); ++i)
    if (const Rational* c = v.coeff(basis[i])) {
      x[i] = *c;
      ++found;
    }
  if (found != v.term_count())
    throw MalformedInput("coordinates: vector has terms outside the level basis");
  return x;
}

Matrix operator_matrix(const std::function<ModuleVector(const ModuleVector&)>& op,
                       const std::vector<FockState>& in_basis,
                       const std::vector<FockState>& out_basis) {
  Matrix m(out_basis.size(), in_basis.size());
  for (size_t c = 0; c < in_basis.size(); ++c) {
    ModuleVector img = op(ModuleVector::unit(in_basis[c]));
    std::vector<Rational> y = coordinates(img, out_basis);
    for (size_t r = 0; r < out_basis.size(); ++r) m.at(r, c) = y[r];
  }
  return m;
}

}  // namespace

std::vector<ModuleVector> vacuum_space(const OmegaSpec& omega, const Rational& a,
                                       int level_bound) {
  if (level_bound < 0) throw std::invalid_argument("vacuum_space: negative level bound");
  (void)a;  // the vacuum space does not depend on the conformal parameter
  std::vector<ModuleVector> out;
  for (int level = 0; level <= level_bound; ++level) {
    std::vector<FockState> basis = level_basis(level, omega);
    // Stack the h(n) matrices, 1 <= n <= level (higher n act as zero here).
    size_t total_rows = 0;
    std::vector<Matrix> blocks;
    for (int n = 1; n <= std::min(level, level_bound); ++n) {
      std::vector<FockState> out_basis = level_basis(level - n, omega);
      blocks.push_back(operator_matrix(
          [&](const ModuleVector& v) { return apply_h(n, v, omega); }, basis, out_basis));
      total_rows += out_basis.size();
    }
    Matrix stacked(total_rows, basis.size());
    size_t row0 = 0;
    for (const Matrix& b : blocks) {
      for (size_t r = 0; r < b.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) stacked.at(row0 + r, c) = b.at(r, c);
      row0 += b.rows();
    }
    for (const auto& coords : stacked.kernel_basis()) {
      ModuleVector v;
      for (size_t i = 0; i < basis.size(); ++i) v.add_term(basis[i], coords[i]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<JordanLayer> jordan_structure_L0(const OmegaSpec& omega, const Rational& a,
                                             int level) {
  if (level < 0) throw std::invalid_argument("jordan_structure_L0: negative level");
  std::vector<FockState> basis = level_basis(level, omega);
  Matrix l0 = operator_matrix(
      [&](const ModuleVector& v) { return apply_L(0, v, omega, a); }, basis, basis);

  Rational h = Rational(level) + lowest_weight_of(omega, a);
  Matrix shifted = l0 - [&] {
    Matrix d = Matrix::identity(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) d.at(i, i) = h;
    return d;
  }();

  // Rank sequence of powers; the generalized eigenvalue is unique.
  std::vector<size_t> ranks{basis.size()};
  Matrix power = shifted;
  for (int k = 1; k <= omega.dim(); ++k) {
    ranks.push_back(power.rank());
    if (ranks.back() == 0) break;
    power = power * shifted;
  }
  if (ranks.back() != 0)
    throw std::logic_error("jordan_structure_L0: L(0) shift not nilpotent at declared order");

  JordanLayer layer;
  layer.eigenvalue = h;
  // Number of blocks of size >= k is rank^{k-1} - rank^k.
  std::vector<int> at_least;
  for (size_t k = 1; k < ranks.size(); ++k)
    at_least.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
  for (size_t k = at_least.size(); k >= 1; --k) {
    int exact = at_least[k - 1] - (k < at_least.size() ? at_least[k] : 0);
    for (int i = 0; i < exact; ++i) layer.block_sizes.push_back(static_cast<int>(k));
  }
  std::sort(layer.block_sizes.begin(), layer.block_sizes.end(), std::greater<int>());
  return {layer};
}

}  // namespace logvoa
