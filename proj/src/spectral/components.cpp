#include <algorithm>
#include <numeric>

#include "hypflow/error.hpp"
#include "hypflow/spectral.hpp"

namespace hypflow {

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& m) {
  SparseMatrix s;
  s.n = m.size();
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0.0) {
        s.col.push_back(static_cast<std::uint32_t>(j));
        s.val.push_back(row[j]);
      }
    }
    s.row_ptr.push_back(s.col.size());
  }
  return s;
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) m[i][col[k]] += val[k];
  return m;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.n = n;
  t.row_ptr.assign(n + 1, 0);
  for (auto c : col) ++t.row_ptr[c + 1];
  for (std::size_t i = 0; i < n; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.col.resize(col.size());
  t.val.resize(val.size());
  std::vector<std::size_t> fill(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      std::size_t pos = fill[col[k]]++;
      t.col[pos] = static_cast<std::uint32_t>(i);
      t.val[pos] = val[k];
    }
  }
  return t;
}

void SparseMatrix::multiply(const double* x, double* y) const {
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

namespace {

std::vector<bool> reach(const SparseMatrix& m, std::size_t from) {
  std::vector<bool> seen(m.n, false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      if (m.val[k] > 0.0 && !seen[m.col[k]]) {
        seen[m.col[k]] = true;
        stack.push_back(m.col[k]);
      }
    }
  }
  return seen;
}

// Tarjan's algorithm, iterative. Returns a component id per vertex.
std::vector<int> strong_components(std::size_t n, const std::vector<std::vector<std::size_t>>& succ, int& count) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < succ[v].size()) {
        std::size_t w = succ[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace

bool is_irreducible(const SparseMatrix& m) {
  if (m.n == 0) return false;
  auto fwd = reach(m, 0);
  auto bwd = reach(m.transposed(), 0);
  for (std::size_t i = 0; i < m.n; ++i)
    if (!fwd[i] || !bwd[i]) return false;
  // A single vertex needs a positive loop.
  if (m.n == 1) {
    for (std::size_t k = m.row_ptr[0]; k < m.row_ptr[1]; ++k)
      if (m.val[k] > 0.0) return true;
    return false;
  }
  return true;
}

int matrix_period(const SparseMatrix& m, std::vector<int>* classes) {
  std::vector<long> level(m.n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  long g = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t i = queue[head];
    for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      if (m.val[k] <= 0.0) continue;
      std::size_t j = m.col[k];
      if (level[j] < 0) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      } else {
        g = std::gcd(g, std::abs(level[i] + 1 - level[j]));
      }
    }
  }
  if (g == 0) g = 1;
  if (classes) {
    classes->resize(m.n);
    for (std::size_t i = 0; i < m.n; ++i) (*classes)[i] = static_cast<int>(level[i] % g);
  }
  return static_cast<int>(g);
}

std::vector<Component> scc_decompose(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : a.edges()) succ[e.origin].push_back(e.target);
  int count = 0;
  auto comp = strong_components(n, succ, count);

  std::vector<Component> out(static_cast<std::size_t>(count));
  for (EdgeId id = 0; id < a.edge_count(); ++id) {
    const Edge& e = a.edge(id);
    if (comp[e.origin] == comp[e.target]) out[static_cast<std::size_t>(comp[e.origin])].edges.push_back(id);
  }
  for (StateId v = 0; v < n; ++v) out[static_cast<std::size_t>(comp[v])].states.push_back(v);
  std::erase_if(out, [](const Component& c) { return c.edges.empty(); });
  std::sort(out.begin(), out.end(), [](const Component& x, const Component& y) { return x.edges[0] < y.edges[0]; });

  for (auto& c : out) {
    std::vector<std::uint32_t> local(a.edge_count(), UINT32_MAX);
    for (std::size_t i = 0; i < c.edges.size(); ++i) local[c.edges[i]] = static_cast<std::uint32_t>(i);
    SparseMatrix& m = c.adjacency;
    m.n = c.edges.size();
    for (EdgeId id : c.edges) {
      for (EdgeId next : a.out_edges(a.edge(id).target)) {
        if (local[next] == UINT32_MAX) continue;
        m.col.push_back(local[next]);
        m.val.push_back(1.0);
      }
      m.row_ptr.push_back(m.col.size());
    }
    c.period = matrix_period(m);
  }
  return out;
}

}  // namespace hypflow
