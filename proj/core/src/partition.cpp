#include "logvoa/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace logvoa {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 1) throw std::invalid_argument("Partition: parts must be >= 1");
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::count(int part) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

Partition Partition::with_part(int part) const {
  if (part < 1) throw std::invalid_argument("Partition: parts must be >= 1");
  Partition out = *this;
  auto it = std::lower_bound(out.parts_.begin(), out.parts_.end(), part, std::greater<int>());
  out.parts_.insert(it, part);
  return out;
}

Partition Partition::without_part(int part) const {
  Partition out = *this;
  auto it = std::find(out.parts_.begin(), out.parts_.end(), part);
  if (it == out.parts_.end()) throw std::invalid_argument("Partition: part not present");
  out.parts_.erase(it);
  return out;
}

std::string Partition::str() const {
  if (parts_.empty()) return "-";
  std::ostringstream os;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  return os.str();
}

Partition Partition::parse(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty() || s == "-") return Partition{};
  std::vector<int> parts;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("Partition: bad part '" + tok + "'");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

bool partition_less(const Partition& a, const Partition& b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  // Reverse-lex within a level: the lexicographically larger part list sorts first.
  return std::lexicographical_compare(b.parts().begin(), b.parts().end(),
                                      a.parts().begin(), a.parts().end());
}

namespace {

void gen(int n, int max_part, std::vector<int>& stack, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(stack));
    return;
  }
  for (int m = std::min(n, max_part); m >= 1; --m) {
    stack.push_back(m);
    gen(n - m, m, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<Partition> out;
  std::vector<int> stack;
  gen(n, n == 0 ? 1 : n, stack, out);
  return out;
}

}  // namespace logvoa
