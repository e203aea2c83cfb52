#include "logvoa/cache.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "logvoa/virstruct.hpp"

namespace logvoa {

namespace {
constexpr const char* kMagic = "logvoa-singular-cache v1";
constexpr const char* kOrderVersion = "b1";  // graded reverse-lex, legs ascending

std::string sanitized(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}
}  // namespace

SingularCache::SingularCache(std::string directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(dir_);
}

std::string SingularCache::entry_path(int weight, const OmegaSpec& omega) const {
  std::ostringstream os;
  os << dir_ << "/" << sanitized(omega.fingerprint()) << "-w" << weight << "-" << kOrderVersion
     << ".mv";
  return os.str();
}

bool SingularCache::load(const std::string& path, int weight, const OmegaSpec& omega,
                         std::vector<ModuleVector>& out) const {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) return false;
  if (!std::getline(in, line)) return false;  // key echo line, informational

  std::vector<ModuleVector> vecs;
  std::string block;
  while (std::getline(in, line)) {
    if (line == "end") {
      try {
        vecs.push_back(ModuleVector::parse_lines(block));
      } catch (const std::exception&) {
        return false;
      }
      block.clear();
    } else {
      block += line;
      block += '\n';
    }
  }
  if (!block.empty()) return false;  // truncated entry

  // Never trust a cache entry: re-verify singularity and normalization.
  for (const auto& v : vecs) {
    if (v.is_zero()) return false;
    auto level = v.homogeneous_level();
    if (!level || *level != weight) return false;
    if (!apply_L(1, v, omega, Rational(0)).is_zero()) return false;
    if (!apply_L(2, v, omega, Rational(0)).is_zero()) return false;
    if (!(v.terms().begin()->second == Rational(1))) return false;
  }
  out = std::move(vecs);
  return true;
}

void SingularCache::store(const std::string& path, int weight, const OmegaSpec& omega,
                          const std::vector<ModuleVector>& vecs) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream outf(tmp, std::ios::trunc);
    outf << kMagic << '\n';
    outf << "key: a=0;" << omega.fingerprint() << ";w=" << weight << ";order=" << kOrderVersion
         << '\n';
    for (const auto& v : vecs) {
      outf << v.to_lines();
      outf << "end\n";
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ModuleVector> SingularCache::get(int weight, const OmegaSpec& omega) {
  std::string path = entry_path(weight, omega);
  std::vector<ModuleVector> cached;
  if (load(path, weight, omega, cached)) {
    ++hits_;
    return cached;
  }
  std::vector<ModuleVector> fresh;
  for (const auto& s : singular_basis(weight, omega)) fresh.push_back(s.vector);
  store(path, weight, omega, fresh);
  return fresh;
}

}  // namespace logvoa
