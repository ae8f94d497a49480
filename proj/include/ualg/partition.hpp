// partition.hpp
//
// Partitions of {0..n-1} in canonical least-representative form, together
// with the lattice operations (refinement order, join, meet) and the bit-exact
// text syntax "0,2|1|3" used by fixtures and the CLI.
//
// A partition stores rep[i] = least element of the block containing i.  The
// form is canonical: two partitions are equal iff their arrays are equal, so
// partitions hash and sort deterministically.  Congruences of finite algebras
// are represented as partitions throughout the library.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ualg {

struct Partition {
  int n = 0;             // universe size
  std::vector<int> rep;  // rep[i] = least element of i's block

  Partition() = default;

  /// Identity relation: every element its own block.
  static Partition equality(int n);
  /// Total relation: a single block.
  static Partition total(int n);
  /// Validate an explicit representative array (throws argument_error if it
  /// is not in canonical form).
  static Partition from_rep(int n, std::vector<int> rep);
  /// Canonicalize a parent map in which parent[i] is any member of i's class
  /// reachable by iteration (e.g. a union-find parent array).
  static Partition from_parent_map(std::vector<int> parent);
  /// Build from explicit blocks; validates that they partition {0..n-1}.
  static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks);

  bool related(int a, int b) const { return rep[a] == rep[b]; }
  /// Number of blocks.
  int classes() const;
  /// Blocks ordered by least element; elements ascending within a block.
  std::vector<std::vector<int>> blocks() const;
  /// block_ids()[i] = index of i's block when blocks are numbered as above.
  std::vector<int> block_ids() const;
  /// All related ordered pairs (a,b), including a = b, in lexicographic order.
  std::vector<std::pair<int, int>> ordered_pairs() const;
  /// Related pairs (a,b) with a < b, lexicographic.
  std::vector<std::pair<int, int>> strict_pairs() const;
  /// Number of related ordered pairs (the size of the relation).
  std::size_t pair_count() const;

  bool operator==(const Partition&) const = default;
  /// Deterministic order: by n, then lexicographic on the rep array.
  bool operator<(const Partition& o) const;
};

/// Refinement order: p <= q iff every block of p lies inside a block of q.
bool leq(const Partition& p, const Partition& q);

/// Join: transitive closure of the union of the two relations.
Partition join(const Partition& p, const Partition& q);

/// Meet: intersection of the two relations.
Partition meet(const Partition& p, const Partition& q);

/// For bot <= p: the partition induced by p on the blocks of bot
/// (blocks numbered by least element, as in Partition::block_ids).
Partition quotient_partition(const Partition& p, const Partition& bot);

/// Text form "0,2|1|3": blocks sorted by least element, elements ascending.
std::string to_text(const Partition& p);

/// Parse the text form; accepts blocks/elements in any order but requires an
/// exact partition of {0..n-1}.  Throws parse_error on malformed input.
Partition parse_partition(const std::string& text, int n);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

}  // namespace ualg
