#include "qlp/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "qlp/common.hpp"

namespace qlp {

void validate_group_table(const CayleyTable& table, int identity) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ValidationError("group table is empty");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw ValidationError("group table is not square");
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n) {
        std::ostringstream msg;
        msg << "closure fails at (" << a << "," << b << ")";
        throw ValidationError(msg.str());
      }
  }
  if (identity < 0 || identity >= n) throw ValidationError("identity index out of range");
  for (int a = 0; a < n; ++a)
    if (table[identity][a] != a || table[a][identity] != a) {
      std::ostringstream msg;
      msg << "identity fails at " << a;
      throw ValidationError(msg.str());
    }
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b)
      found = table[a][b] == identity && table[b][a] == identity;
    if (!found) {
      std::ostringstream msg;
      msg << "inverse fails at " << a;
      throw ValidationError(msg.str());
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]]) {
          std::ostringstream msg;
          msg << "associativity fails at (" << i << "," << j << "," << k << ")";
          throw ValidationError(msg.str());
        }
}

CayleyTable cyclic_group(int n) {
  CayleyTable t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

CayleyTable symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  CayleyTable t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

CayleyTable direct_product(const CayleyTable& g, const CayleyTable& h) {
  const int ng = static_cast<int>(g.size()), nh = static_cast<int>(h.size());
  CayleyTable t(ng * nh, std::vector<int>(ng * nh));
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b)
      for (int c = 0; c < ng; ++c)
        for (int d = 0; d < nh; ++d) t[a * nh + b][c * nh + d] = g[a][c] * nh + h[b][d];
  return t;
}

std::vector<int> group_inverses(const CayleyTable& table, int identity) {
  const int n = static_cast<int>(table.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity) inv[a] = b;
  return inv;
}

std::vector<int> generated_subgroup(const CayleyTable& table, int identity,
                                    const std::vector<int>& generators) {
  const int n = static_cast<int>(table.size());
  std::vector<char> seen(n, 0);
  std::deque<int> queue{identity};
  seen[identity] = 1;
  while (!queue.empty()) {
    const int g = queue.front();
    queue.pop_front();
    for (int s : generators) {
      const int h = table[g][s];
      if (!seen[h]) {
        seen[h] = 1;
        queue.push_back(h);
      }
    }
  }
  std::vector<int> out;
  for (int g = 0; g < n; ++g)
    if (seen[g]) out.push_back(g);
  return out;
}

}  // namespace qlp
