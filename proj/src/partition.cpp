// partition.cpp
//
// Canonical least-representative partitions and their lattice operations.

#include "ualg/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ualg/errors.hpp"
#include "ualg/union_find.hpp"

namespace ualg {

// ===== construction =====

Partition Partition::equality(int n) {
  if (n < 0) throw argument_error("partition size must be nonnegative");
  Partition p;
  p.n = n;
  p.rep.resize(n);
  for (int i = 0; i < n; ++i) p.rep[i] = i;
  return p;
}

Partition Partition::total(int n) {
  if (n < 0) throw argument_error("partition size must be nonnegative");
  Partition p;
  p.n = n;
  p.rep.assign(n, 0);
  return p;
}

Partition Partition::from_rep(int n, std::vector<int> rep) {
  if (static_cast<int>(rep.size()) != n)
    throw argument_error("representative array length does not match size");
  for (int i = 0; i < n; ++i) {
    if (rep[i] < 0 || rep[i] > i || rep[rep[i]] != rep[i])
      throw argument_error("representative array is not in canonical form");
  }
  Partition p;
  p.n = n;
  p.rep = std::move(rep);
  return p;
}

Partition Partition::from_parent_map(std::vector<int> parent) {
  const int n = static_cast<int>(parent.size());
  // Resolve every element to its root (full compression).
  for (int i = 0; i < n; ++i) {
    int r = i;
    while (parent[r] != r) r = parent[r];
    for (int c = i; parent[c] != r;) {
      int nx = parent[c];
      parent[c] = r;
      c = nx;
    }
  }
  // Ascending scan: the first element seen for a root is the least member.
  Partition p;
  p.n = n;
  p.rep.resize(n);
  std::vector<int> least(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = parent[i];
    if (least[r] < 0) least[r] = i;
    p.rep[i] = least[r];
  }
  return p;
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> rep(n, -1);
  for (const auto& blk : blocks) {
    if (blk.empty()) throw argument_error("empty block");
    int least = *std::min_element(blk.begin(), blk.end());
    for (int e : blk) {
      if (e < 0 || e >= n) throw argument_error("block element out of range");
      if (rep[e] != -1) throw argument_error("element appears in two blocks");
      rep[e] = least;
    }
  }
  for (int i = 0; i < n; ++i)
    if (rep[i] == -1) throw argument_error("element missing from all blocks");
  Partition p;
  p.n = n;
  p.rep = std::move(rep);
  return p;
}

// ===== queries =====

int Partition::classes() const {
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) ++c;
  return c;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out;
  std::vector<int> id(n, -1);
  for (int i = 0; i < n; ++i) {
    if (rep[i] == i) {
      id[i] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[id[rep[i]]].push_back(i);
  }
  return out;
}

std::vector<int> Partition::block_ids() const {
  std::vector<int> id(n, -1), out(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (rep[i] == i) id[i] = next++;
    out[i] = id[rep[i]];
  }
  return out;
}

std::vector<std::pair<int, int>> Partition::ordered_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rep[a] == rep[b]) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<int, int>> Partition::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rep[a] == rep[b]) out.emplace_back(a, b);
  return out;
}

std::size_t Partition::pair_count() const {
  std::vector<std::size_t> sizes(n, 0);
  for (int i = 0; i < n; ++i) ++sizes[rep[i]];
  std::size_t total = 0;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) total += sizes[i] * sizes[i];
  return total;
}

bool Partition::operator<(const Partition& o) const {
  if (n != o.n) return n < o.n;
  return rep < o.rep;
}

// ===== lattice operations =====

bool leq(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw argument_error("partition size mismatch");
  for (int i = 0; i < p.n; ++i)
    if (q.rep[p.rep[i]] != q.rep[i]) return false;
  return true;
}

Partition join(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw argument_error("partition size mismatch");
  UnionFind uf(p.n);
  for (int i = 0; i < p.n; ++i) {
    uf.unite(i, p.rep[i]);
    uf.unite(i, q.rep[i]);
  }
  for (int i = 0; i < p.n; ++i) uf.find(i);
  return Partition::from_parent_map(uf.parent);
}

Partition meet(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw argument_error("partition size mismatch");
  Partition r;
  r.n = p.n;
  r.rep.resize(p.n);
  std::map<std::pair<int, int>, int> first;
  for (int i = 0; i < p.n; ++i) {
    auto key = std::make_pair(p.rep[i], q.rep[i]);
    auto it = first.find(key);
    if (it == first.end()) {
      first.emplace(key, i);
      r.rep[i] = i;
    } else {
      r.rep[i] = it->second;
    }
  }
  return r;
}

Partition quotient_partition(const Partition& p, const Partition& bot) {
  if (!leq(bot, p)) throw argument_error("quotient_partition: bot is not below p");
  const auto ids = bot.block_ids();
  const int m = bot.classes();
  // least base element of each bot-block, in block order
  std::vector<int> least(m, -1);
  for (int i = 0; i < bot.n; ++i)
    if (least[ids[i]] < 0) least[ids[i]] = i;
  Partition r;
  r.n = m;
  r.rep.resize(m);
  std::map<int, int> first;  // p-representative -> first block id
  for (int b = 0; b < m; ++b) {
    int key = p.rep[least[b]];
    auto it = first.find(key);
    if (it == first.end()) {
      first.emplace(key, b);
      r.rep[b] = b;
    } else {
      r.rep[b] = it->second;
    }
  }
  return r;
}

// ===== text form =====

std::string to_text(const Partition& p) {
  std::ostringstream os;
  bool first_block = true;
  for (const auto& blk : p.blocks()) {
    if (!first_block) os << '|';
    first_block = false;
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (i) os << ',';
      os << blk[i];
    }
  }
  return os.str();
}

Partition parse_partition(const std::string& text, int n) {
  std::vector<std::vector<int>> blocks(1);
  int value = -1;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : '|';
    if (c >= '0' && c <= '9') {
      if (value < 0) value = 0;
      value = value * 10 + (c - '0');
      if (value > n) throw parse_error("partition element out of range: " + text);
    } else if (c == ',' || c == '|') {
      if (value < 0) throw parse_error("missing element in partition text: " + text);
      blocks.back().push_back(value);
      value = -1;
      if (c == '|' && i < text.size()) blocks.emplace_back();
    } else if (c == ' ' || c == '\t') {
      if (value >= 0) throw parse_error("whitespace inside a number: " + text);
    } else {
      throw parse_error(std::string("unexpected character '") + c + "' in partition text");
    }
  }
  try {
    return Partition::from_blocks(n, blocks);
  } catch (const argument_error& e) {
    throw parse_error(std::string("invalid partition \"") + text + "\": " + e.what());
  }
}

std::size_t PartitionHash::operator()(const Partition& p) const {
  std::size_t h = 1469598103934665603ull;  // FNV offset basis
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(p.n));
  for (int r : p.rep) mix(static_cast<std::size_t>(r));
  return h;
}

}  // namespace ualg
