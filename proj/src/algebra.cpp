// algebra.cpp
//
// Finite algebras: validation, evaluation, terms, products, quotients.

#include "ualg/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "ualg/errors.hpp"

namespace ualg {

namespace {

/// n^k as size_t with overflow guard (table sizes are validated against this).
std::size_t power_checked(int n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) {
    if (p > (static_cast<std::size_t>(-1) / static_cast<std::size_t>(n)))
      throw argument_error("operation table size overflows");
    p *= static_cast<std::size_t>(n);
  }
  return p;
}

}  // namespace

// ===== FiniteAlgebra =====

int FiniteAlgebra::op_index(const std::string& op_name) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == op_name) return static_cast<int>(i);
  return -1;
}

void validate(const FiniteAlgebra& a) {
  if (a.size < 1) throw argument_error("algebra size must be at least 1");
  std::set<std::string> names;
  for (const auto& op : a.ops) {
    if (op.name.empty()) throw argument_error("operation name must be nonempty");
    if (!names.insert(op.name).second)
      throw argument_error("duplicate operation name: " + op.name);
    if (op.arity < 0) throw argument_error("negative arity for operation " + op.name);
    if (op.table.size() != power_checked(a.size, op.arity))
      throw argument_error("operation " + op.name + " table has wrong length");
    for (int v : op.table)
      if (v < 0 || v >= a.size)
        throw argument_error("operation " + op.name + " table value out of range");
  }
}

int eval_op(const FiniteAlgebra& a, int op, const std::vector<int>& args) {
  if (op < 0 || op >= static_cast<int>(a.ops.size()))
    throw argument_error("operation index out of range");
  const auto& t = a.ops[op];
  if (static_cast<int>(args.size()) != t.arity)
    throw argument_error("operation " + t.name + " expects " + std::to_string(t.arity) +
                         " arguments, got " + std::to_string(args.size()));
  std::size_t idx = 0;
  for (int v : args) {
    if (v < 0 || v >= a.size) throw argument_error("argument value out of range");
    idx = idx * static_cast<std::size_t>(a.size) + static_cast<std::size_t>(v);
  }
  return t.table[idx];
}

// ===== terms =====

Term Term::variable(int v) {
  Term t;
  t.var = v;
  return t;
}

Term Term::apply(int op_index, std::vector<Term> children) {
  Term t;
  t.op = op_index;
  t.children = std::move(children);
  return t;
}

int Term::max_variable() const {
  if (var >= 0) return var;
  int m = -1;
  for (const auto& c : children) m = std::max(m, c.max_variable());
  return m;
}

int eval_term(const FiniteAlgebra& a, const Term& t, const std::vector<int>& assignment) {
  if (t.var >= 0) {
    if (t.var >= static_cast<int>(assignment.size()))
      throw argument_error("unbound variable " + variable_name(t.var));
    return assignment[t.var];
  }
  std::vector<int> args;
  args.reserve(t.children.size());
  for (const auto& c : t.children) args.push_back(eval_term(a, c, assignment));
  return eval_op(a, t.op, args);
}

IdentityCheck check_identity(const FiniteAlgebra& a, const Term& lhs, const Term& rhs,
                             int vars) {
  if (lhs.max_variable() >= vars || rhs.max_variable() >= vars)
    throw argument_error("term uses a variable beyond the declared count");
  std::vector<int> assign(vars, 0);
  // lexicographic odometer over assignments, first variable most significant
  while (true) {
    if (eval_term(a, lhs, assign) != eval_term(a, rhs, assign))
      return {false, assign};
    int i = vars - 1;
    for (; i >= 0; --i) {
      if (++assign[i] < a.size) break;
      assign[i] = 0;
    }
    if (i < 0) break;
  }
  return {true, {}};
}

std::string variable_name(int index) {
  switch (index) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
    case 3: return "w";
    default: return "x" + std::to_string(index);
  }
}

namespace {

int variable_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "w") return 3;
  if (name.size() >= 2 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); })) {
    int idx = std::stoi(name.substr(1));
    if (idx >= 4) return idx;
  }
  return -1;
}

struct TermParser {
  const FiniteAlgebra& alg;
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string ident() {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) throw parse_error("expected a name at position " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  Term parse() {
    skip_space();
    if (pos >= text.size()) throw parse_error("unexpected end of term");
    if (text[pos] == '(') {
      ++pos;
      skip_space();
      std::string name = ident();
      int op = alg.op_index(name);
      if (op < 0) throw parse_error("unknown operation: " + name);
      std::vector<Term> children;
      while (true) {
        skip_space();
        if (pos >= text.size()) throw parse_error("missing ')' in term");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        children.push_back(parse());
      }
      if (static_cast<int>(children.size()) != alg.ops[op].arity)
        throw parse_error("operation " + name + " expects " +
                          std::to_string(alg.ops[op].arity) + " arguments, got " +
                          std::to_string(children.size()));
      return Term::apply(op, std::move(children));
    }
    std::string name = ident();
    int v = variable_index(name);
    if (v < 0) throw parse_error("unknown variable: " + name);
    return Term::variable(v);
  }
};

}  // namespace

std::string term_to_text(const FiniteAlgebra& a, const Term& t) {
  if (t.var >= 0) return variable_name(t.var);
  std::ostringstream os;
  os << '(' << a.ops[t.op].name;
  for (const auto& c : t.children) os << ' ' << term_to_text(a, c);
  os << ')';
  return os.str();
}

Term parse_term(const FiniteAlgebra& a, const std::string& text) {
  TermParser p{a, text};
  Term t = p.parse();
  p.skip_space();
  if (p.pos != text.size())
    throw parse_error("trailing characters after term: " + text.substr(p.pos));
  return t;
}

// ===== products and quotients =====

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  validate(a);
  validate(b);
  if (a.ops.size() != b.ops.size())
    throw argument_error("direct_product: operation counts differ");
  for (std::size_t i = 0; i < a.ops.size(); ++i) {
    if (a.ops[i].name != b.ops[i].name || a.ops[i].arity != b.ops[i].arity)
      throw argument_error("direct_product: operation signatures differ at index " +
                           std::to_string(i));
  }
  FiniteAlgebra prod;
  prod.name = a.name + "x" + b.name;
  prod.size = a.size * b.size;
  for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
    const auto& fa = a.ops[oi];
    OperationTable op;
    op.name = fa.name;
    op.arity = fa.arity;
    op.table.resize(power_checked(prod.size, op.arity));
    const int k = op.arity;
    std::vector<int> args(k, 0), left(k), right(k);
    std::size_t idx = 0;
    while (true) {
      for (int i = 0; i < k; ++i) {
        left[i] = args[i] / b.size;
        right[i] = args[i] % b.size;
      }
      op.table[idx++] = eval_op(a, static_cast<int>(oi), left) * b.size +
                        eval_op(b, static_cast<int>(oi), right);
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++args[i] < prod.size) break;
        args[i] = 0;
      }
      if (i < 0) break;
    }
    prod.ops.push_back(std::move(op));
  }
  return prod;
}

bool is_congruence(const FiniteAlgebra& a, const Partition& theta, std::string* why) {
  if (theta.n != a.size) throw argument_error("partition size does not match algebra");
  // For each operation, perturbing one argument within a block must keep the
  // results related; single-coordinate perturbations generate the general case.
  for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
    const auto& op = a.ops[oi];
    const int k = op.arity;
    if (k == 0) continue;
    std::vector<int> args(k, 0), alt(k);
    while (true) {
      for (int pos = 0; pos < k; ++pos) {
        for (int b = 0; b < a.size; ++b) {
          if (b == args[pos] || !theta.related(args[pos], b)) continue;
          alt = args;
          alt[pos] = b;
          if (!theta.related(eval_op(a, static_cast<int>(oi), args),
                             eval_op(a, static_cast<int>(oi), alt))) {
            if (why) {
              std::ostringstream os;
              os << "operation " << op.name << " at (";
              for (int i = 0; i < k; ++i) os << (i ? "," : "") << args[i];
              os << ") vs position " << pos << " -> " << b;
              *why = os.str();
            }
            return false;
          }
        }
      }
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++args[i] < a.size) break;
        args[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return true;
}

QuotientResult quotient(const FiniteAlgebra& a, const Partition& theta) {
  std::string why;
  if (!is_congruence(a, theta, &why))
    throw precondition_error("quotient: partition is not a congruence (" + why + ")");
  QuotientResult out;
  out.block_of = theta.block_ids();
  const int m = theta.classes();
  // least base element of each block, in block order
  std::vector<int> least(m, -1);
  for (int i = 0; i < a.size; ++i)
    if (least[out.block_of[i]] < 0) least[out.block_of[i]] = i;

  out.algebra.name = a.name + "/" + std::to_string(m);
  out.algebra.size = m;
  for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
    const auto& src = a.ops[oi];
    OperationTable op;
    op.name = src.name;
    op.arity = src.arity;
    op.table.resize(power_checked(m, op.arity));
    const int k = op.arity;
    std::vector<int> args(k, 0), base(k);
    std::size_t idx = 0;
    while (true) {
      for (int i = 0; i < k; ++i) base[i] = least[args[i]];
      op.table[idx++] = out.block_of[eval_op(a, static_cast<int>(oi), base)];
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++args[i] < m) break;
        args[i] = 0;
      }
      if (i < 0) break;
    }
    out.algebra.ops.push_back(std::move(op));
  }
  return out;
}

}  // namespace ualg
