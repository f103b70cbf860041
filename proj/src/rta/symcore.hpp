// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic core: terms over exact rationals and named symbols, boolean
// constraints over them, and an immutable constraint store.  Everything the
// checkers hand to the SMT layer is built from these types; the same trees
// are evaluated exactly over rationals when replaying solver models.

#pragma once

#include "rta/rational.hpp"

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rta {

class Constraint;

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind { Lit, Sym, Add, Sub, Mul, Div, Neg, Ite, Min, Max };

struct TermNode;
// Terms are immutable values; copying shares structure.
class Term {
 public:
  Term() = default;  // empty; using an empty term is an Internal error
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  const TermNode& node() const;
  bool empty() const { return node_ == nullptr; }

 private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  Rat lit;          // Lit
  int sym = -1;     // Sym: index into the owning store's symbol table
  Term a, b;        // operands (a only for Neg; a,b for binary ops and Ite arms)
  std::shared_ptr<const Constraint> cond;  // Ite condition
};

Term lit(Rat r);
Term lit(long n);
Term symbol_term(int index);  // normally obtained from Store::fresh
Term operator+(const Term&, const Term&);
Term operator-(const Term&, const Term&);
Term operator*(const Term&, const Term&);
Term operator/(const Term&, const Term&);
Term operator-(const Term&);
Term ite(const Constraint& c, const Term& then_t, const Term& else_t);
Term min_term(const Term&, const Term&);
Term max_term(const Term&, const Term&);

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

enum class CmpOp { Lt, Le, Eq, Ge, Gt };
enum class ConstraintKind { Cmp, And, Or, Not, BoolLit };

struct ConstraintNode;
class Constraint {
 public:
  Constraint() = default;
  explicit Constraint(std::shared_ptr<const ConstraintNode> n) : node_(std::move(n)) {}
  const ConstraintNode& node() const;
  bool empty() const { return node_ == nullptr; }

 private:
  std::shared_ptr<const ConstraintNode> node_;
};

struct ConstraintNode {
  ConstraintKind kind;
  CmpOp op = CmpOp::Eq;               // Cmp
  Term lhs, rhs;                      // Cmp
  std::vector<Constraint> kids;       // And / Or (n-ary), Not (exactly one)
  bool value = false;                 // BoolLit
};

Constraint cmp(CmpOp, const Term&, const Term&);
Constraint operator<(const Term&, const Term&);
Constraint operator<=(const Term&, const Term&);
Constraint operator==(const Term&, const Term&);
Constraint operator>=(const Term&, const Term&);
Constraint operator>(const Term&, const Term&);
Constraint c_and(std::vector<Constraint> kids);
Constraint c_or(std::vector<Constraint> kids);
Constraint c_not(const Constraint&);
Constraint c_bool(bool);

// Structural negation into negation normal form: comparisons flip their
// operator, conjunctions and disjunctions dualize, double negations cancel.
Constraint negate(const Constraint&);

void collect_symbols(const Term&, std::set<int>& out);
void collect_symbols(const Constraint&, std::set<int>& out);

// ---------------------------------------------------------------------------
// Exact evaluation
// ---------------------------------------------------------------------------

// Assignment of rational values to symbol indices; absent entries are
// unassigned and evaluating them is an error.
struct Assignment {
  std::vector<std::optional<Rat>> values;

  void set(int sym, Rat v) {
    if (sym < 0) throw Error(ErrCode::Internal, "negative symbol index");
    if (static_cast<size_t>(sym) >= values.size()) values.resize(static_cast<size_t>(sym) + 1);
    values[static_cast<size_t>(sym)] = std::move(v);
  }
  const Rat* get(int sym) const {
    if (sym < 0 || static_cast<size_t>(sym) >= values.size() || !values[static_cast<size_t>(sym)])
      return nullptr;
    return &*values[static_cast<size_t>(sym)];
  }
};

// Both throw Error(Invalid) on division by zero or an unassigned symbol.
Rat eval(const Term&, const Assignment&);
bool eval(const Constraint&, const Assignment&);

// ---------------------------------------------------------------------------
// Immutable constraint store
// ---------------------------------------------------------------------------

// A store is a symbol table plus an ordered conjunction of constraints.
// All operations return a new store; existing stores are never modified,
// which lets checkers branch a shared trace prefix into many queries.
class Store {
 public:
  Store();

  // Registers a new symbol and returns the extended store plus its term.
  // The tag is a human-oriented hint that becomes part of the SMT name.
  [[nodiscard]] std::pair<Store, Term> fresh(std::string_view tag) const;

  // Returns a store with `c` appended to the conjunction.  Throws
  // Error(Invalid) if `c` mentions a symbol this store has not registered.
  [[nodiscard]] Store require(const Constraint& c) const;

  int symbol_count() const;
  const std::string& symbol_tag(int index) const;
  // Deterministic SMT-facing name: "v<index>_<sanitized tag>".
  std::string symbol_name(int index) const;
  std::span<const Constraint> conjuncts() const;

  // True iff every conjunct holds under `a` (exact arithmetic).
  bool satisfied_by(const Assignment& a) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Store(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace rta
