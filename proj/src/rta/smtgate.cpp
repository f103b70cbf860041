// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/smtgate.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace rta {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::SolverError: return "solver-error";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

void print_rat(std::ostream& os, const Rat& r) {
  const BigInt num = numerator(r), den = denominator(r);
  const bool neg = num < 0;
  const BigInt abs_num = neg ? BigInt(-num) : num;
  if (neg) os << "(- ";
  if (den == 1) {
    os << abs_num.str();
  } else {
    os << "(/ " << abs_num.str() << " " << den.str() << ")";
  }
  if (neg) os << ")";
}

void print_constraint(std::ostream&, const Constraint&, const Store&);

void print_term(std::ostream& os, const Term& t, const Store& store) {
  const TermNode& n = t.node();
  switch (n.kind) {
    case TermKind::Lit:
      print_rat(os, n.lit);
      return;
    case TermKind::Sym:
      os << store.symbol_name(n.sym);
      return;
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Div: {
      const char* op = n.kind == TermKind::Add   ? "+"
                       : n.kind == TermKind::Sub ? "-"
                       : n.kind == TermKind::Mul ? "*"
                                                 : "/";
      os << "(" << op << " ";
      print_term(os, n.a, store);
      os << " ";
      print_term(os, n.b, store);
      os << ")";
      return;
    }
    case TermKind::Neg:
      os << "(- ";
      print_term(os, n.a, store);
      os << ")";
      return;
    case TermKind::Ite:
      os << "(ite ";
      print_constraint(os, *n.cond, store);
      os << " ";
      print_term(os, n.a, store);
      os << " ";
      print_term(os, n.b, store);
      os << ")";
      return;
    case TermKind::Min:
    case TermKind::Max: {
      // min(a,b) = (ite (<= a b) a b); max swaps the arms.
      std::ostringstream a, b;
      print_term(a, n.a, store);
      print_term(b, n.b, store);
      const bool is_min = n.kind == TermKind::Min;
      os << "(ite (<= " << a.str() << " " << b.str() << ") " << (is_min ? a.str() : b.str())
         << " " << (is_min ? b.str() : a.str()) << ")";
      return;
    }
  }
  throw Error(ErrCode::Internal, "unreachable term kind");
}

void print_constraint(std::ostream& os, const Constraint& c, const Store& store) {
  const ConstraintNode& n = c.node();
  switch (n.kind) {
    case ConstraintKind::BoolLit:
      os << (n.value ? "true" : "false");
      return;
    case ConstraintKind::Cmp: {
      const char* op = n.op == CmpOp::Lt   ? "<"
                       : n.op == CmpOp::Le ? "<="
                       : n.op == CmpOp::Eq ? "="
                       : n.op == CmpOp::Ge ? ">="
                                           : ">";
      os << "(" << op << " ";
      print_term(os, n.lhs, store);
      os << " ";
      print_term(os, n.rhs, store);
      os << ")";
      return;
    }
    case ConstraintKind::And:
    case ConstraintKind::Or: {
      os << (n.kind == ConstraintKind::And ? "(and" : "(or");
      for (const auto& k : n.kids) {
        os << " ";
        print_constraint(os, k, store);
      }
      os << ")";
      return;
    }
    case ConstraintKind::Not:
      os << "(not ";
      print_constraint(os, n.kids[0], store);
      os << ")";
      return;
  }
  throw Error(ErrCode::Internal, "unreachable constraint kind");
}

}  // namespace

std::string emit(const Store& store) {
  std::ostringstream os;
  os << "(set-option :produce-models true)\n";
  os << "(set-logic QF_NRA)\n";
  for (int i = 0; i < store.symbol_count(); ++i) {
    os << "(declare-const " << store.symbol_name(i) << " Real)\n";
  }
  for (const auto& c : store.conjuncts()) {
    os << "(assert ";
    print_constraint(os, c, store);
    os << ")\n";
  }
  os << "(check-sat)\n";
  os << "(get-model)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Process driver
// ---------------------------------------------------------------------------

namespace {

struct RunOutcome {
  std::string output;
  bool timed_out = false;
  bool exec_failed = false;
  int exit_code = 0;
};

RunOutcome run_process(const std::vector<std::string>& argv, double timeout_sec) {
  RunOutcome out;
  int pipefd[2];
  if (pipe(pipefd) != 0) throw Error(ErrCode::Solver, "pipe() failed");

  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    throw Error(ErrCode::Solver, "fork() failed");
  }
  if (pid == 0) {
    // Child: merge stdout and stderr into the pipe, then exec.
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    close(pipefd[0]);
    close(pipefd[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    const char* msg = "exec of the solver command failed\n";
    ssize_t ignored = write(STDERR_FILENO, msg, strlen(msg));
    (void)ignored;
    _exit(127);
  }

  close(pipefd[1]);
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_sec);
  char buf[4096];
  bool eof = false;
  while (!eof) {
    double remain =
        std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
    if (remain <= 0) {
      out.timed_out = true;
      kill(pid, SIGKILL);
      // Drain whatever is left so the child can die, then stop.
      while (true) {
        ssize_t n = read(pipefd[0], buf, sizeof(buf));
        if (n <= 0) break;
        out.output.append(buf, static_cast<size_t>(n));
      }
      break;
    }
    struct pollfd pfd{pipefd[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(std::min(remain * 1000.0, 200.0)));
    if (pr < 0 && errno != EINTR) break;
    if (pr > 0) {
      ssize_t n = read(pipefd[0], buf, sizeof(buf));
      if (n < 0) {
        if (errno == EINTR) continue;
        break;
      }
      if (n == 0) {
        eof = true;
      } else {
        out.output.append(buf, static_cast<size_t>(n));
      }
    }
  }
  close(pipefd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) {
    out.exit_code = WEXITSTATUS(status);
    out.exec_failed = (out.exit_code == 127);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model parsing
// ---------------------------------------------------------------------------

struct Sexp {
  std::string atom;  // nonempty for atoms
  std::vector<Sexp> kids;
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

// Parses every top-level s-expression in `text`, skipping stray atoms.
std::vector<Sexp> parse_sexps(const std::string& text) {
  std::vector<Sexp> roots;
  std::vector<Sexp> stack;  // open lists
  size_t i = 0;
  auto flush_atom = [&](size_t start, size_t end) {
    if (end <= start) return;
    Sexp a;
    a.atom = text.substr(start, end - start);
    if (!stack.empty()) stack.back().kids.push_back(std::move(a));
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '(') {
      stack.push_back(Sexp{});
      ++i;
    } else if (ch == ')') {
      if (!stack.empty()) {
        Sexp done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty())
          roots.push_back(std::move(done));
        else
          stack.back().kids.push_back(std::move(done));
      }
      ++i;
    } else if (isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '"') {  // string literal (error messages)
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"') ++j;
      flush_atom(i, j + 1 <= text.size() ? j + 1 : text.size());
      i = j + 1;
    } else {
      size_t j = i;
      while (j < text.size() && !isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')')
        ++j;
      flush_atom(i, j);
      i = j;
    }
  }
  return roots;
}

std::optional<Rat> parse_model_value(const Sexp& v) {
  if (v.is_atom()) {
    std::string a = v.atom;
    if (!a.empty() && a.back() == '?') return std::nullopt;  // truncated decimal
    try {
      return rat_from_string(a);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (v.kids.empty() || !v.kids[0].is_atom()) return std::nullopt;
  const std::string& head = v.kids[0].atom;
  if (head == "-" && v.kids.size() == 2) {
    auto inner = parse_model_value(v.kids[1]);
    if (!inner) return std::nullopt;
    return -*inner;
  }
  if (head == "/" && v.kids.size() == 3) {
    auto num = parse_model_value(v.kids[1]);
    auto den = parse_model_value(v.kids[2]);
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  return std::nullopt;  // root-obj and friends: algebraic, not exactly representable
}

// Extracts define-fun entries for symbols named v<i>_... anywhere in the node.
void collect_model_entries(const Sexp& node, Model& model) {
  if (node.kids.size() >= 5 && node.kids[0].is_atom() && node.kids[0].atom == "define-fun" &&
      node.kids[1].is_atom()) {
    const std::string& name = node.kids[1].atom;
    if (name.size() > 1 && name[0] == 'v' && isdigit(static_cast<unsigned char>(name[1]))) {
      size_t pos = 1;
      int index = 0;
      while (pos < name.size() && isdigit(static_cast<unsigned char>(name[pos]))) {
        index = index * 10 + (name[pos] - '0');
        ++pos;
      }
      if (pos < name.size() && name[pos] == '_') {
        auto value = parse_model_value(node.kids.back());
        if (value)
          model.values[index] = *value;
        else
          model.irrational.push_back(index);
        return;
      }
    }
  }
  for (const auto& k : node.kids) collect_model_entries(k, model);
}

}  // namespace

SolveResult solve(const Store& store, const SolveOptions& opts) {
  const std::string text = emit(store);

  std::string path = opts.dump_file;
  bool temp = path.empty();
  if (temp) {
    char tmpl[] = "/tmp/rta_query_XXXXXX";
    int fd = mkstemp(tmpl);
    if (fd < 0) throw Error(ErrCode::Solver, "cannot create temporary query file");
    close(fd);
    path = tmpl;
  }
  {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error(ErrCode::Solver, "cannot write query file " + path);
    f << text;
  }

  SolveResult result;
  if (opts.dump_only) {
    result.status = SolveStatus::Unknown;
    result.transcript = "(not solved: dump-only)";
    return result;
  }

  std::vector<std::string> argv = opts.argv;
  if (argv.empty()) argv = default_solver_argv();
  argv.push_back(path);

  auto t0 = std::chrono::steady_clock::now();
  RunOutcome run = run_process(argv, opts.timeout_sec);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.transcript = run.output;
  if (temp) unlink(path.c_str());

  if (run.timed_out) {
    result.status = SolveStatus::Timeout;
    return result;
  }
  if (run.exec_failed) {
    result.status = SolveStatus::SolverError;
    return result;
  }

  // Find the verdict line; solvers may print warnings around it.
  std::istringstream lines(run.output);
  std::string line;
  std::optional<SolveStatus> status;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line == "sat") status = SolveStatus::Sat;
    if (line == "unsat") status = SolveStatus::Unsat;
    if (line == "unknown") status = SolveStatus::Unknown;
    if (status) break;
  }
  if (!status) {
    result.status = SolveStatus::SolverError;
    return result;
  }
  result.status = *status;

  if (result.status == SolveStatus::Sat) {
    Model model;
    for (const auto& root : parse_sexps(run.output)) collect_model_entries(root, model);
    if (!model.values.empty() || !model.irrational.empty()) result.model = std::move(model);
  }
  return result;
}

bool replay(const Store& store, const Model& model) {
  std::set<int> used;
  for (const auto& c : store.conjuncts()) collect_symbols(c, used);

  Assignment a;
  for (int sym : used) {
    auto it = model.values.find(sym);
    if (it == model.values.end()) {
      for (int irr : model.irrational) {
        if (irr == sym)
          throw Error(ErrCode::Invalid, "model value for " + store.symbol_name(sym) +
                                            " is irrational; exact replay impossible");
      }
      throw Error(ErrCode::Invalid, "model lacks a value for " + store.symbol_name(sym));
    }
    a.set(sym, it->second);
  }
  return store.satisfied_by(a);
}

std::vector<std::string> default_solver_argv() {
  std::vector<std::string> argv;
  if (const char* env = getenv("RTA_SMT_SOLVER")) {
    std::istringstream ss(env);
    std::string word;
    while (ss >> word) argv.push_back(word);
  }
  if (argv.empty()) argv = {"z3"};
  return argv;
}

}  // namespace rta
