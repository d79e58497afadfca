#include "cdel/branching_math.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cdel {

BranchingVector::BranchingVector(std::initializer_list<int> entries) : BranchingVector(std::vector<int>(entries)) {}

BranchingVector::BranchingVector(const std::vector<int>& entries) {
  for (int a : entries) append(a);
}

std::vector<int> BranchingVector::entries() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (const auto& [entry, count] : counts_) out.insert(out.end(), static_cast<std::size_t>(count), entry);
  return out;
}

void BranchingVector::append(int entry, long long multiplicity) {
  if (entry < 1) throw std::invalid_argument("branching vector entries must be positive, got " + std::to_string(entry));
  if (multiplicity <= 0) return;
  counts_[entry] += multiplicity;
  size_ += multiplicity;
}

void BranchingVector::concat(const BranchingVector& other) {
  for (const auto& [entry, count] : other.counts_) append(entry, count);
}

std::string BranchingVector::to_string() const {
  std::ostringstream out;
  out << '(';
  bool first = true;
  if (size_ <= 16) {
    for (int a : entries()) {
      out << (first ? "" : ",") << a;
      first = false;
    }
  } else {
    for (const auto& [entry, count] : counts_) {
      out << (first ? "" : ",") << entry << '^' << count;
      first = false;
    }
  }
  out << ')';
  return out.str();
}

BranchingVector BranchingVector::parse(const std::string& text) {
  std::vector<int> entries;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    while (pos < token.size() && (token[pos] == ' ' || token[pos] == '(')) ++pos;
    std::size_t end = token.size();
    while (end > pos && (token[end - 1] == ' ' || token[end - 1] == ')')) --end;
    if (pos == end) throw std::invalid_argument("empty entry in branching vector '" + text + "'");
    std::size_t used = 0;
    const std::string digits = token.substr(pos, end - pos);
    const int value = std::stoi(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("bad entry '" + digits + "' in branching vector");
    entries.push_back(value);
  }
  if (entries.empty()) throw std::invalid_argument("empty branching vector");
  return BranchingVector(std::move(entries));
}

double branching_number(const BranchingVector& v) {
  if (v.empty()) throw std::invalid_argument("branching number of an empty vector");
  if (v.size() == 1) return 1.0;
  // sum x^-a is strictly decreasing in x; positive near 1, <= 0 at |v|.
  auto excess = [&](double x) {
    double sum = 0;
    for (const auto& [a, count] : v.counts()) sum += static_cast<double>(count) * std::pow(x, -a);
    return sum - 1.0;
  };
  double lo = 1.0;
  double hi = static_cast<double>(v.size());
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BranchingVector r_vector(int p) {
  if (p < 0) throw std::invalid_argument("r_vector: p must be non-negative");
  return compose_chain_vector({ChainLeaf{0, p, 1}});
}

BranchingVector compose_chain_vector(const std::vector<ChainLeaf>& leaves) {
  BranchingVector out;
  for (const ChainLeaf& leaf : leaves) {
    if (leaf.cost < 0 || leaf.frontier < 0 || leaf.s_bound < 1)
      throw std::invalid_argument("chain leaf needs cost >= 0, p >= 0, s >= 1");
    for (int i = 0; i <= leaf.frontier; ++i)
      out.append(leaf.cost + leaf.frontier + leaf.s_bound + 2 * i, binomial(leaf.frontier, i));
  }
  return out;
}

}  // namespace cdel
