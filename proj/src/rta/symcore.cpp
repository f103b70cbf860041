// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/symcore.hpp"

#include <algorithm>
#include <utility>

namespace rta {

const TermNode& Term::node() const {
  if (!node_) throw Error(ErrCode::Internal, "use of empty term");
  return *node_;
}

const ConstraintNode& Constraint::node() const {
  if (!node_) throw Error(ErrCode::Internal, "use of empty constraint");
  return *node_;
}

namespace {
Term make_term(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }
Constraint make_constraint(ConstraintNode n) {
  return Constraint(std::make_shared<const ConstraintNode>(std::move(n)));
}
}  // namespace

Term lit(Rat r) {
  TermNode n;
  n.kind = TermKind::Lit;
  n.lit = std::move(r);
  return make_term(std::move(n));
}

Term lit(long v) { return lit(Rat(v)); }

Term symbol_term(int index) {
  if (index < 0) throw Error(ErrCode::Internal, "negative symbol index");
  TermNode n;
  n.kind = TermKind::Sym;
  n.sym = index;
  return make_term(std::move(n));
}

namespace {
Term binary(TermKind k, const Term& a, const Term& b) {
  TermNode n;
  n.kind = k;
  n.a = a;
  n.b = b;
  return make_term(std::move(n));
}
}  // namespace

Term operator+(const Term& a, const Term& b) { return binary(TermKind::Add, a, b); }
Term operator-(const Term& a, const Term& b) { return binary(TermKind::Sub, a, b); }
Term operator*(const Term& a, const Term& b) { return binary(TermKind::Mul, a, b); }
Term operator/(const Term& a, const Term& b) { return binary(TermKind::Div, a, b); }

Term operator-(const Term& a) {
  TermNode n;
  n.kind = TermKind::Neg;
  n.a = a;
  return make_term(std::move(n));
}

Term ite(const Constraint& c, const Term& then_t, const Term& else_t) {
  TermNode n;
  n.kind = TermKind::Ite;
  n.cond = std::make_shared<const Constraint>(c);
  n.a = then_t;
  n.b = else_t;
  return make_term(std::move(n));
}

Term min_term(const Term& a, const Term& b) { return binary(TermKind::Min, a, b); }
Term max_term(const Term& a, const Term& b) { return binary(TermKind::Max, a, b); }

Constraint cmp(CmpOp op, const Term& a, const Term& b) {
  ConstraintNode n;
  n.kind = ConstraintKind::Cmp;
  n.op = op;
  n.lhs = a;
  n.rhs = b;
  return make_constraint(std::move(n));
}

Constraint operator<(const Term& a, const Term& b) { return cmp(CmpOp::Lt, a, b); }
Constraint operator<=(const Term& a, const Term& b) { return cmp(CmpOp::Le, a, b); }
Constraint operator==(const Term& a, const Term& b) { return cmp(CmpOp::Eq, a, b); }
Constraint operator>=(const Term& a, const Term& b) { return cmp(CmpOp::Ge, a, b); }
Constraint operator>(const Term& a, const Term& b) { return cmp(CmpOp::Gt, a, b); }

Constraint c_and(std::vector<Constraint> kids) {
  if (kids.empty()) return c_bool(true);
  if (kids.size() == 1) return kids[0];
  ConstraintNode n;
  n.kind = ConstraintKind::And;
  n.kids = std::move(kids);
  return make_constraint(std::move(n));
}

Constraint c_or(std::vector<Constraint> kids) {
  if (kids.empty()) return c_bool(false);
  if (kids.size() == 1) return kids[0];
  ConstraintNode n;
  n.kind = ConstraintKind::Or;
  n.kids = std::move(kids);
  return make_constraint(std::move(n));
}

Constraint c_not(const Constraint& c) {
  ConstraintNode n;
  n.kind = ConstraintKind::Not;
  n.kids = {c};
  return make_constraint(std::move(n));
}

Constraint c_bool(bool v) {
  ConstraintNode n;
  n.kind = ConstraintKind::BoolLit;
  n.value = v;
  return make_constraint(std::move(n));
}

namespace {
CmpOp negate_op(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Eq: break;  // handled by caller: !(a == b) has no single CmpOp
  }
  return CmpOp::Eq;
}
}  // namespace

Constraint negate(const Constraint& c) {
  const auto& n = c.node();
  switch (n.kind) {
    case ConstraintKind::BoolLit:
      return c_bool(!n.value);
    case ConstraintKind::Cmp:
      if (n.op == CmpOp::Eq) return c_or({cmp(CmpOp::Lt, n.lhs, n.rhs), cmp(CmpOp::Gt, n.lhs, n.rhs)});
      return cmp(negate_op(n.op), n.lhs, n.rhs);
    case ConstraintKind::And: {
      std::vector<Constraint> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) kids.push_back(negate(k));
      return c_or(std::move(kids));
    }
    case ConstraintKind::Or: {
      std::vector<Constraint> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) kids.push_back(negate(k));
      return c_and(std::move(kids));
    }
    case ConstraintKind::Not:
      return n.kids[0];
  }
  throw Error(ErrCode::Internal, "unreachable constraint kind");
}

void collect_symbols(const Term& t, std::set<int>& out) {
  const auto& n = t.node();
  switch (n.kind) {
    case TermKind::Lit:
      return;
    case TermKind::Sym:
      out.insert(n.sym);
      return;
    case TermKind::Neg:
      collect_symbols(n.a, out);
      return;
    case TermKind::Ite:
      collect_symbols(*n.cond, out);
      collect_symbols(n.a, out);
      collect_symbols(n.b, out);
      return;
    default:
      collect_symbols(n.a, out);
      collect_symbols(n.b, out);
      return;
  }
}

void collect_symbols(const Constraint& c, std::set<int>& out) {
  const auto& n = c.node();
  switch (n.kind) {
    case ConstraintKind::BoolLit:
      return;
    case ConstraintKind::Cmp:
      collect_symbols(n.lhs, out);
      collect_symbols(n.rhs, out);
      return;
    default:
      for (const auto& k : n.kids) collect_symbols(k, out);
      return;
  }
}

Rat eval(const Term& t, const Assignment& a) {
  const auto& n = t.node();
  switch (n.kind) {
    case TermKind::Lit:
      return n.lit;
    case TermKind::Sym: {
      const Rat* v = a.get(n.sym);
      if (!v) throw Error(ErrCode::Invalid, "unassigned symbol index " + std::to_string(n.sym));
      return *v;
    }
    case TermKind::Add:
      return eval(n.a, a) + eval(n.b, a);
    case TermKind::Sub:
      return eval(n.a, a) - eval(n.b, a);
    case TermKind::Mul:
      return eval(n.a, a) * eval(n.b, a);
    case TermKind::Div: {
      Rat d = eval(n.b, a);
      if (d == 0) throw Error(ErrCode::Invalid, "division by zero");
      return eval(n.a, a) / d;
    }
    case TermKind::Neg:
      return -eval(n.a, a);
    case TermKind::Ite:
      return eval(*n.cond, a) ? eval(n.a, a) : eval(n.b, a);
    case TermKind::Min: {
      Rat x = eval(n.a, a), y = eval(n.b, a);
      return x <= y ? x : y;
    }
    case TermKind::Max: {
      Rat x = eval(n.a, a), y = eval(n.b, a);
      return x <= y ? y : x;
    }
  }
  throw Error(ErrCode::Internal, "unreachable term kind");
}

bool eval(const Constraint& c, const Assignment& a) {
  const auto& n = c.node();
  switch (n.kind) {
    case ConstraintKind::BoolLit:
      return n.value;
    case ConstraintKind::Cmp: {
      Rat l = eval(n.lhs, a), r = eval(n.rhs, a);
      switch (n.op) {
        case CmpOp::Lt: return l < r;
        case CmpOp::Le: return l <= r;
        case CmpOp::Eq: return l == r;
        case CmpOp::Ge: return l >= r;
        case CmpOp::Gt: return l > r;
      }
      break;
    }
    case ConstraintKind::And:
      for (const auto& k : n.kids)
        if (!eval(k, a)) return false;
      return true;
    case ConstraintKind::Or:
      for (const auto& k : n.kids)
        if (eval(k, a)) return true;
      return false;
    case ConstraintKind::Not:
      return !eval(n.kids[0], a);
  }
  throw Error(ErrCode::Internal, "unreachable constraint kind");
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

struct Store::Impl {
  std::vector<std::string> tags;
  std::vector<Constraint> conjuncts;
};

Store::Store() : impl_(std::make_shared<const Impl>()) {}

std::pair<Store, Term> Store::fresh(std::string_view tag) const {
  auto next = std::make_shared<Impl>(*impl_);
  int index = static_cast<int>(next->tags.size());
  next->tags.emplace_back(tag);
  return {Store(std::move(next)), symbol_term(index)};
}

Store Store::require(const Constraint& c) const {
  std::set<int> syms;
  collect_symbols(c, syms);
  if (!syms.empty() && *syms.rbegin() >= symbol_count()) {
    throw Error(ErrCode::Invalid, "constraint mentions unregistered symbol index " +
                                      std::to_string(*syms.rbegin()));
  }
  auto next = std::make_shared<Impl>(*impl_);
  next->conjuncts.push_back(c);
  return Store(std::move(next));
}

int Store::symbol_count() const { return static_cast<int>(impl_->tags.size()); }

const std::string& Store::symbol_tag(int index) const {
  if (index < 0 || index >= symbol_count())
    throw Error(ErrCode::Invalid, "symbol index out of range");
  return impl_->tags[static_cast<size_t>(index)];
}

std::string Store::symbol_name(int index) const {
  std::string sanitized;
  for (char ch : symbol_tag(index)) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
              ch == '_';
    sanitized.push_back(ok ? ch : '_');
  }
  return "v" + std::to_string(index) + "_" + sanitized;
}

std::span<const Constraint> Store::conjuncts() const { return impl_->conjuncts; }

bool Store::satisfied_by(const Assignment& a) const {
  for (const auto& c : impl_->conjuncts)
    if (!eval(c, a)) return false;
  return true;
}

}  // namespace rta
