#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "triflip/geometry.hpp"

namespace triflip {

/// Crossing string over the alphabet {L,U,D,R}: first symbol L, last symbol R,
/// interior symbols U/D. Length = crossing count + 1.
class TriString {
 public:
  TriString() = default;
  /// From "LUD...R" characters; validates shape.
  explicit TriString(std::string symbols);

  const std::string& str() const { return s_; }
  int size() const { return static_cast<int>(s_.size()); }
  friend bool operator==(const TriString&, const TriString&) = default;

 private:
  std::string s_;
};

/// Exact values of b(s) for strings where the log2 estimate is not tight.
class BoundTable {
 public:
  void insert(const TriString& s, int value);
  /// Exact b(s) when known, -1 otherwise.
  int lookup(const TriString& s) const;
  int size() const { return static_cast<int>(table_.size()); }

  /// One line per entry, "<LUDR string> <value>", sorted.
  std::string store() const;
  static BoundTable load(const std::string& text);

 private:
  std::unordered_map<std::string, int> table_;
};

/// Minimum number of parallel rewriting steps that erase s. Memoized search
/// restricted to non-lengthening replacements, with forced extreme
/// replacements on strings of length >= 3. Throws past the search limit.
int rewrite_bound_exact(const TriString& s, int limit = 22);

/// Sound lower bound on b(s): exact table hit, exact search within the limit,
/// otherwise ceil(log2(|s|)).
int rewrite_bound_estimate(const TriString& s, const BoundTable* table,
                           int exact_limit = 22);

/// ceil(log2(len)).
int log2_bound(int len);

/// Exact b(s) for every valid string of length <= max_len whose log2 estimate
/// is not tight.
BoundTable precompute_bound_table(int max_len);

/// All valid strings of the given length.
std::vector<TriString> all_strings_of_length(int len);

}  // namespace triflip
