#include "triflip/rewrite.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace triflip {

TriString::TriString(std::string symbols) : s_(std::move(symbols)) {
  if (s_.size() < 2 || s_.front() != 'L' || s_.back() != 'R')
    throw Error("crossing string must be L...R: " + s_);
  for (size_t i = 1; i + 1 < s_.size(); ++i)
    if (s_[i] != 'U' && s_[i] != 'D')
      throw Error("interior symbols must be U or D: " + s_);
}

void BoundTable::insert(const TriString& s, int value) {
  table_[s.str()] = value;
}

int BoundTable::lookup(const TriString& s) const {
  auto it = table_.find(s.str());
  return it == table_.end() ? -1 : it->second;
}

std::string BoundTable::store() const {
  std::vector<std::pair<std::string, int>> rows(table_.begin(), table_.end());
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  for (const auto& [s, v] : rows) out << s << " " << v << "\n";
  return out.str();
}

BoundTable BoundTable::load(const std::string& text) {
  BoundTable t;
  std::istringstream in(text);
  std::string s;
  int v;
  while (in >> s >> v) t.insert(TriString(s), v);
  return t;
}

int log2_bound(int len) {
  int b = 0;
  while ((1 << b) < len) ++b;
  return b;
}

namespace {

// Replacement result for the adjacent pair (x, y); empty result string means
// the pair is erased, "-" means no rule applies.
std::string apply_pair(char x, char y) {
  if (x == 'L' && (y == 'U' || y == 'D')) return "L";
  if ((x == 'U' || x == 'D') && y == 'R') return "R";
  if (x == 'U' && y == 'U') return "U";
  if (x == 'D' && y == 'D') return "D";
  if (x == 'U' && y == 'D') return "DU";
  if (x == 'D' && y == 'U') return "UD";
  if (x == 'L' && y == 'R') return "";
  return "-";
}

std::string rewrite_at(const std::string& s, const std::vector<int>& positions) {
  std::string out;
  size_t next = 0;
  for (size_t i = 0; i < s.size();) {
    if (next < positions.size() && static_cast<size_t>(positions[next]) == i) {
      out += apply_pair(s[i], s[i + 1]);
      i += 2;
      ++next;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

// Enumerates the optional interior replacement positions (non-adjacent, each
// in [lo, hi]) on top of the forced ones, and recurses on the results.
struct ExactSearch {
  std::unordered_map<std::string, int> memo;

  int bound(const std::string& s) {
    if (s.empty()) return 0;
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    int n = static_cast<int>(s.size());
    int best;
    if (n == 2) {
      best = 1;  // LR -> empty
    } else if (n == 3) {
      best = 1 + bound("LR");
    } else {
      // Both extreme replacements are forced (positions 0 and n-2); the free
      // choices are non-adjacent interior positions in [2, n-4].
      best = -1;
      std::vector<int> chosen{0};
      enumerate(s, 2, n - 4, chosen, best);
    }
    memo[s] = best;
    return best;
  }

  void enumerate(const std::string& s, int p, int hi, std::vector<int>& chosen,
                 int& best) {
    if (p > hi) {
      std::vector<int> positions = chosen;
      positions.push_back(static_cast<int>(s.size()) - 2);
      int sub = bound(rewrite_at(s, positions));
      if (best < 0 || 1 + sub < best) best = 1 + sub;
      return;
    }
    enumerate(s, p + 1, hi, chosen, best);
    chosen.push_back(p);
    enumerate(s, p + 2, hi, chosen, best);
    chosen.pop_back();
  }
};

}  // namespace

int rewrite_bound_exact(const TriString& s, int limit) {
  if (s.size() > limit)
    throw Error("string length " + std::to_string(s.size()) +
                " exceeds the exact search limit " + std::to_string(limit));
  ExactSearch search;
  return search.bound(s.str());
}

int rewrite_bound_estimate(const TriString& s, const BoundTable* table,
                           int exact_limit) {
  if (table) {
    int hit = table->lookup(s);
    if (hit >= 0) return hit;
  }
  if (s.size() <= exact_limit) return rewrite_bound_exact(s, exact_limit);
  return log2_bound(s.size());
}

std::vector<TriString> all_strings_of_length(int len) {
  std::vector<TriString> out;
  if (len < 2) return out;
  int interior = len - 2;
  for (long mask = 0; mask < (1L << interior); ++mask) {
    std::string s = "L";
    for (int i = 0; i < interior; ++i) s += (mask >> i) & 1 ? 'U' : 'D';
    s += 'R';
    out.emplace_back(std::move(s));
  }
  return out;
}

BoundTable precompute_bound_table(int max_len) {
  BoundTable t;
  for (int len = 2; len <= max_len; ++len)
    for (const TriString& s : all_strings_of_length(len)) {
      int exact = rewrite_bound_exact(s, max_len);
      if (exact > log2_bound(len)) t.insert(s, exact);
    }
  return t;
}

}  // namespace triflip
