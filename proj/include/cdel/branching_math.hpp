#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace cdel {

// Budget decrements of the children of one branching step, kept as a
// multiset (entry -> multiplicity) since composed vectors get long.
class BranchingVector {
 public:
  BranchingVector() = default;
  BranchingVector(std::initializer_list<int> entries);
  explicit BranchingVector(const std::vector<int>& entries);

  // Expanded in ascending order.
  std::vector<int> entries() const;
  const std::map<int, long long>& counts() const { return counts_; }
  long long size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int min_entry() const { return counts_.empty() ? 0 : counts_.begin()->first; }

  void append(int entry, long long multiplicity = 1);
  void concat(const BranchingVector& other);

  // "(3,5,5,7)"; long vectors print as "(6^1,8^5,...)".
  std::string to_string() const;
  static BranchingVector parse(const std::string& text);  // "3,5,5,7"

  bool operator==(const BranchingVector&) const = default;

 private:
  std::map<int, long long> counts_;
  long long size_ = 0;
};

// Unique root x > 1 of sum_i x^(-a_i) = 1 (bisection, absolute tolerance
// 1e-12 on x); 1 for a single-entry vector.
double branching_number(const BranchingVector& v);

// Vector of length 2^p holding p + 1 + 2i with multiplicity C(p, i).
BranchingVector r_vector(int p);

struct ChainLeaf {
  int cost = 0;      // budget already spent reaching the leaf
  int frontier = 0;  // p: binary {1, >=3} branchings still ahead
  int s_bound = 1;   // lower bound on the exact solve at the end
};

// Each leaf contributes cost + p + s + 2i with multiplicity C(p, i).
BranchingVector compose_chain_vector(const std::vector<ChainLeaf>& leaves);

long long binomial(int n, int k);

}  // namespace cdel
