#include "urnlab/chain.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "urnlab/errors.hpp"

namespace urnlab {

Rational hypergeometric_pmf(int n, int m, int k, int i) {
  if (n < 1 || m < 0 || m > n || k < 1 || k > n || i < 0 || i > k)
    throw ValidationError("hypergeometric_pmf: parameters out of range (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                          ", i=" + std::to_string(i) + ")");
  const Integer ways = binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(i)) *
                       binomial(static_cast<unsigned long>(n - m), static_cast<unsigned long>(k - i));
  Rational p(ways, binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
  p.canonicalize();
  return p;
}

Rational finite_drift(const Rule& r, int n, int m) {
  if (r.k > n)
    throw ValidationError("finite_drift: k = " + std::to_string(r.k) + " exceeds n = " +
                          std::to_string(n));
  Rational drift = 0;
  for (int i = 0; i <= r.k; ++i) {
    const int change = (r.recolors_black(i) ? r.k : 0) - i;
    if (change != 0) drift += Rational(change) * hypergeometric_pmf(n, m, r.k, i);
  }
  return drift;
}

TransitionKernel transition_kernel(const Rule& r, int n) {
  if (r.k > n)
    throw ValidationError("transition_kernel: k = " + std::to_string(r.k) + " exceeds n = " +
                          std::to_string(n));
  TransitionKernel kernel;
  kernel.n = n;
  kernel.rows.resize(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    std::map<int, Rational> row;
    for (int i = 0; i <= r.k; ++i) {
      Rational p = hypergeometric_pmf(n, m, r.k, i);
      if (p == 0) continue;
      const int next = m - i + (r.recolors_black(i) ? r.k : 0);
      row[next] += p;
    }
    auto& out = kernel.rows[static_cast<size_t>(m)];
    out.assign(row.begin(), row.end());
  }
  return kernel;
}

namespace {

// Kosaraju strongly-connected components, iterative.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<std::pair<int, size_t>> stack{{start, 0}};
    seen[static_cast<size_t>(start)] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < adj[static_cast<size_t>(v)].size()) {
        int w = adj[static_cast<size_t>(v)][idx++];
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::vector<int>> radj(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int w : adj[static_cast<size_t>(v)]) radj[static_cast<size_t>(w)].push_back(v);
  std::vector<int> component(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> components;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (component[static_cast<size_t>(*it)] != -1) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<int> stack{*it};
    component[static_cast<size_t>(*it)] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      components[static_cast<size_t>(id)].push_back(v);
      for (int w : radj[static_cast<size_t>(v)]) {
        if (component[static_cast<size_t>(w)] == -1) {
          component[static_cast<size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  // Mark components with an edge into a different component as transient.
  std::vector<char> has_exit(components.size(), 0);
  for (int v = 0; v < n; ++v)
    for (int w : adj[static_cast<size_t>(v)])
      if (component[static_cast<size_t>(v)] != component[static_cast<size_t>(w)])
        has_exit[static_cast<size_t>(component[static_cast<size_t>(v)])] = 1;
  std::vector<std::vector<int>> recurrent;
  for (size_t c = 0; c < components.size(); ++c) {
    if (has_exit[c]) continue;
    std::sort(components[c].begin(), components[c].end());
    recurrent.push_back(std::move(components[c]));
  }
  std::sort(recurrent.begin(), recurrent.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return recurrent;
}

}  // namespace

std::vector<std::vector<int>> recurrent_classes(const TransitionKernel& kernel) {
  std::vector<std::vector<int>> adj(kernel.rows.size());
  for (size_t m = 0; m < kernel.rows.size(); ++m)
    for (const auto& [next, p] : kernel.rows[m]) adj[m].push_back(next);
  return strongly_connected_components(adj);
}

StationaryResult stationary(const TransitionKernel& kernel) {
  const auto classes = recurrent_classes(kernel);
  if (classes.size() != 1) {
    std::ostringstream msg;
    msg << "chain has " << classes.size() << " recurrent classes:";
    for (const auto& cls : classes) {
      msg << " {";
      for (size_t i = 0; i < cls.size(); ++i) msg << (i ? "," : "") << cls[i];
      msg << "}";
    }
    throw MultipleRecurrentClassesError(msg.str(), classes);
  }

  const int n = kernel.n;
  const size_t vars = static_cast<size_t>(n) + 1;
  // Rows: (P^T - I) pi = 0 plus the normalization sum(pi) = 1; the last
  // column holds the right-hand side.
  std::vector<std::vector<Rational>> a(vars + 1, std::vector<Rational>(vars + 1, Rational(0)));
  for (size_t m = 0; m < vars; ++m) {
    for (const auto& [next, p] : kernel.rows[m]) a[static_cast<size_t>(next)][m] += p;
    a[m][m] -= 1;
  }
  for (size_t m = 0; m < vars; ++m) a[vars][m] = 1;
  a[vars][vars] = 1;  // rhs of the normalization row

  std::vector<size_t> pivot_row_of(vars, SIZE_MAX);
  size_t next_row = 0;
  for (size_t col = 0; col < vars && next_row < a.size(); ++col) {
    size_t pivot = SIZE_MAX;
    for (size_t r = next_row; r < a.size(); ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(a[next_row], a[pivot]);
    const Rational inv = a[next_row][col];
    for (size_t c = col; c <= vars; ++c) a[next_row][c] /= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == next_row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (size_t c = col; c <= vars; ++c) a[r][c] -= f * a[next_row][c];
    }
    pivot_row_of[col] = next_row;
    ++next_row;
  }
  for (size_t col = 0; col < vars; ++col)
    if (pivot_row_of[col] == SIZE_MAX)
      throw Error("stationary: linear system is rank-deficient");
  for (size_t r = next_row; r < a.size(); ++r)
    if (a[r][vars] != 0) throw Error("stationary: linear system is inconsistent");

  StationaryResult result;
  result.distribution.resize(vars);
  for (size_t col = 0; col < vars; ++col)
    result.distribution[col] = a[pivot_row_of[col]][vars];
  result.mean = 0;
  for (size_t m = 0; m < vars; ++m) {
    Rational w(static_cast<long>(m), static_cast<long>(n));
    w.canonicalize();
    result.mean += result.distribution[m] * w;
  }
  return result;
}

}  // namespace urnlab
