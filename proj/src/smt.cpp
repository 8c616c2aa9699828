#include "gwpo/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

extern char** environ;

namespace gwpo {

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string int_lit(std::int64_t v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); }

std::string scaled_name(const std::string& n, std::int64_t k) {
  return k == 1 ? n : "(* " + int_lit(k) + " " + n + ")";
}

std::string sum(std::vector<std::string> parts) {
  if (parts.empty()) return "0";
  if (parts.size() == 1) return parts.front();
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

std::string emit(const LinExpr& e) {
  std::vector<std::string> parts;
  for (const auto& [n, c] : e.terms) parts.push_back(scaled_name(n, c));
  if (e.constant != 0 || parts.empty()) parts.push_back(int_lit(e.constant));
  return sum(std::move(parts));
}

std::string emit(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::constant: return f.value() ? "true" : "false";
    case Formula::Kind::ref: return f.name();
    case Formula::Kind::negation: return "(not " + emit(f.children().front()) + ")";
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::string s = f.kind() == Formula::Kind::conj ? "(and" : "(or";
      for (const auto& c : f.children()) s += " " + emit(c);
      return s + ")";
    }
    case Formula::Kind::atom: {
      // expr op 0 is printed as (op positive-part negative-part).
      std::vector<std::string> pos, neg;
      for (const auto& [n, c] : f.expr().terms) (c > 0 ? pos : neg).push_back(scaled_name(n, c > 0 ? c : -c));
      const std::int64_t k = f.expr().constant;
      if (k > 0) pos.push_back(int_lit(k));
      if (k < 0) neg.push_back(int_lit(-k));
      const char* op = f.op() == CmpOp::ge ? ">=" : f.op() == CmpOp::gt ? ">" : "=";
      return std::string("(") + op + " " + sum(std::move(pos)) + " " + sum(std::move(neg)) + ")";
    }
  }
  return "true";
}

}  // namespace

std::string emit_smtlib(const ConstraintSystem& sys, const std::string& logic) {
  std::ostringstream out;
  out << "(set-option :produce-models true)\n";
  out << "(set-logic " << logic << ")\n";
  for (const auto& u : sys.unknowns()) {
    out << "(declare-const " << u.name << " Int)\n";
    out << "(assert (and (<= " << int_lit(u.lo) << " " << u.name << ") (<= " << u.name << " " << int_lit(u.hi)
        << ")))\n";
  }
  for (const auto& d : sys.definitions()) {
    if (const auto* p = std::get_if<ProductDef>(&d)) {
      out << "(declare-const " << p->name << " Int)\n";
      out << "(assert (and (<= 0 " << p->name << ") (<= " << p->name << " " << p->left << ") (<= " << p->name << " "
          << p->right << ") (>= " << p->name << " (- (+ " << p->left << " " << p->right << ") 1))))\n";
    } else if (const auto* i = std::get_if<IteDef>(&d)) {
      out << "(define-fun " << i->name << " () Int (ite " << emit(i->cond) << " " << emit(i->then_expr) << " "
          << emit(i->else_expr) << "))\n";
    } else {
      const auto& b = std::get<BoolDef>(d);
      out << "(define-fun " << b.name << " () Bool " << emit(b.body) << ")\n";
    }
  }
  out << "(assert " << emit(sys.root) << ")\n";
  out << "(check-sat)\n";
  if (!sys.unknowns().empty()) {
    out << "(get-value (";
    for (std::size_t i = 0; i < sys.unknowns().size(); ++i) out << (i ? " " : "") << sys.unknowns()[i].name;
    out << "))\n";
  }
  out << "(exit)\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Output parsing

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(const std::string& s) : s_(s) {}

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw std::runtime_error("unexpected end of solver output");
    SExpr e;
    if (s_[pos_] == '(') {
      e.is_list = true;
      ++pos_;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw std::runtime_error("unbalanced parenthesis in solver output");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
    } else if (s_[pos_] == ')') {
      throw std::runtime_error("unexpected ')' in solver output");
    } else if (s_[pos_] == '"') {
      std::size_t end = pos_ + 1;
      while (end < s_.size() && s_[end] != '"') end += (s_[end] == '\\') ? 2 : 1;
      e.atom = s_.substr(pos_, end + 1 - pos_);
      pos_ = end + 1;
    } else if (s_[pos_] == '|') {
      std::size_t end = s_.find('|', pos_ + 1);
      if (end == std::string::npos) throw std::runtime_error("unterminated |symbol| in solver output");
      e.atom = s_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
    } else {
      while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
             s_[pos_] != ')')
        e.atom += s_[pos_++];
    }
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::int64_t int_value(const SExpr& e) {
  if (!e.is_list) return std::stoll(e.atom);
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") return -int_value(e.list[1]);
  throw std::runtime_error("unsupported value in model");
}

}  // namespace

SolverVerdict parse_solver_output(const std::string& out) {
  try {
    SExprReader rd(out);
    if (rd.at_end()) return SolverError{"empty solver output"};
    SExpr first = rd.read();
    if (first.is_list) {
      return SolverError{out.substr(0, 400)};
    }
    if (first.atom == "unsat") return Unsat{};
    if (first.atom == "unknown") return Unknown{};
    if (first.atom == "timeout") return Timeout{};
    if (first.atom != "sat") return SolverError{"unexpected solver answer: " + out.substr(0, 400)};
    Sat sat;
    while (!rd.at_end()) {
      SExpr block = rd.read();
      if (!block.is_list) continue;
      if (!block.list.empty() && !block.list[0].is_list && block.list[0].atom == "error")
        return SolverError{"solver error after sat: " + out.substr(0, 400)};
      for (const auto& binding : block.list) {
        if (!binding.is_list || binding.list.size() != 2 || binding.list[0].is_list)
          throw std::runtime_error("malformed get-value binding");
        sat.model[binding.list[0].atom] = int_value(binding.list[1]);
      }
    }
    return sat;
  } catch (const std::exception& e) {
    return SolverError{std::string("cannot parse solver output (") + e.what() + "): " + out.substr(0, 400)};
  }
}

std::string verdict_name(const SolverVerdict& v) {
  struct {
    std::string operator()(const Sat&) const { return "sat"; }
    std::string operator()(const Unsat&) const { return "unsat"; }
    std::string operator()(const Unknown&) const { return "unknown"; }
    std::string operator()(const Timeout&) const { return "timeout"; }
    std::string operator()(const SolverError& e) const { return "error: " + e.diagnostic; }
  } visitor;
  return std::visit(visitor, v);
}

// ---------------------------------------------------------------------------
// Subprocess

std::vector<std::string> SolverConfig::split_command(const std::string& cmdline) {
  std::istringstream in(cmdline);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

namespace {

class TempScript {
 public:
  explicit TempScript(const std::string& content) {
    std::string tmpl = (std::filesystem::temp_directory_path() / "gwpo-XXXXXX.smt2").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    int fd = ::mkstemps(buf.data(), 5);
    if (fd < 0) throw std::runtime_error(std::string("cannot create temporary script: ") + std::strerror(errno));
    path_ = buf.data();
    std::size_t off = 0;
    while (off < content.size()) {
      ssize_t n = ::write(fd, content.data() + off, content.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw std::runtime_error(std::string("cannot write temporary script: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempScript() { ::unlink(path_.c_str()); }
  TempScript(const TempScript&) = delete;
  TempScript& operator=(const TempScript&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct FileActions {
  posix_spawn_file_actions_t fa;
  FileActions() { posix_spawn_file_actions_init(&fa); }
  ~FileActions() { posix_spawn_file_actions_destroy(&fa); }
};

}  // namespace

SolverVerdict solve(const std::string& script, const SolverConfig& cfg) {
  if (cfg.timeout_seconds <= 0) return SolverError{"timeout must be positive"};
  if (cfg.command.empty()) return SolverError{"empty solver command"};

  TempScript file(script);
  std::vector<std::string> args = cfg.command;
  if (!cfg.use_stdin) args.push_back(file.path());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int pipefd[2];
  if (::pipe2(pipefd, O_CLOEXEC) != 0) return SolverError{std::string("pipe: ") + std::strerror(errno)};

  FileActions actions;
  posix_spawn_file_actions_adddup2(&actions.fa, pipefd[1], STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions.fa, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions.fa, STDIN_FILENO, cfg.use_stdin ? file.path().c_str() : "/dev/null",
                                   O_RDONLY, 0);

  pid_t pid = -1;
  int rc = ::posix_spawnp(&pid, argv[0], &actions.fa, nullptr, argv.data(), environ);
  ::close(pipefd[1]);
  if (rc != 0) {
    ::close(pipefd[0]);
    return SolverError{"cannot start solver '" + args[0] + "': " + std::strerror(rc)};
  }

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(cfg.timeout_seconds);
  std::string out;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{pipefd[0], POLLIN, 0};
    int pr = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);

  int status = 0;
  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    return Timeout{};
  }
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  SolverVerdict v = parse_solver_output(out);
  if (auto* err = std::get_if<SolverError>(&v)) {
    if (WIFEXITED(status) && WEXITSTATUS(status) != 0)
      err->diagnostic = "solver exited with status " + std::to_string(WEXITSTATUS(status)) + ": " + err->diagnostic;
    else if (WIFSIGNALED(status))
      err->diagnostic = "solver killed by signal " + std::to_string(WTERMSIG(status)) + ": " + err->diagnostic;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Decoding

DecodedParameters decode_model(const Model& model, const SearchSpace& space, const ConstraintSystem& registry) {
  std::map<Symbol, Interp> records;
  Precedence prec;

  auto value_of = [&](const UnknownVar& u) {
    auto it = model.find(u.name);
    if (it == model.end()) throw DecodeError("model has no value for " + u.name);
    if (it->second < u.lo || it->second > u.hi)
      throw DecodeError("value " + std::to_string(it->second) + " of " + u.name + " outside [" +
                        std::to_string(u.lo) + ", " + std::to_string(u.hi) + "]");
    return it->second;
  };

  for (const auto& u : registry.unknowns()) {
    const std::int64_t v = value_of(u);
    if (u.role == UnknownVar::Role::level) {
      prec.level[u.symbol.name] = v;
      continue;
    }
    auto it = records.find(u.symbol);
    if (it == records.end()) {
      const std::size_t n = u.symbol.arity;
      Interp fresh = space.interp == InterpKind::linear
                         ? Interp(LinearInterp{0, std::vector<std::int64_t>(n, 0)})
                         : Interp(MaxPlusInterp{0, std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)});
      it = records.emplace(u.symbol, std::move(fresh)).first;
    }
    if (auto* lin = std::get_if<LinearInterp>(&it->second)) {
      if (u.role == UnknownVar::Role::constant)
        lin->constant = v;
      else if (u.role == UnknownVar::Role::coefficient)
        lin->coeffs.at(*u.index) = v;
      else
        throw DecodeError("unexpected unknown " + u.name + " in a linear search");
    } else {
      auto& mp = std::get<MaxPlusInterp>(it->second);
      if (u.role == UnknownVar::Role::constant)
        mp.floor = v;
      else if (u.role == UnknownVar::Role::offset)
        mp.offsets.at(*u.index) = v;
      else if (u.role == UnknownVar::Role::slope)
        mp.slopes.at(*u.index) = v;
      else
        throw DecodeError("unexpected unknown " + u.name + " in a max/plus search");
    }
  }

  DecodedParameters out{Algebra(space.interp), std::move(prec)};
  try {
    for (const auto& [f, interp] : records) {
      if (space.share_marked)
        out.algebra.set_shared(f, interp);
      else
        std::visit([&](const auto& i) { out.algebra.set(f, i); }, interp);
    }
  } catch (const AlgebraError& e) {
    throw DecodeError(std::string("decoded algebra is invalid: ") + e.what());
  }
  return out;
}

}  // namespace gwpo
