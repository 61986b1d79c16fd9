// Copyright 2026 The sandmine authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ir.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace fs = std::filesystem;

namespace sandmine {

const Screen* AppModel::find_screen(const std::string& screen_id) const {
  for (const auto& s : screens) {
    if (s.id == screen_id) return &s;
  }
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Line lexer

struct Token {
  enum class Kind { Ident, Number, Str, Punct, End };
  Kind kind = Kind::End;
  std::string text;  // ident name, number spelling, string payload
  char punct = 0;
  int column = 0;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         c == '.';
}

std::vector<Token> lex_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == '"') {
      std::size_t end = line.find('"', i + 1);
      if (end == std::string::npos) {
        throw Error(ErrorKind::Syntax, "unterminated string literal", lineno,
                    col);
      }
      out.push_back({Token::Kind::Str, line.substr(i + 1, end - i - 1), 0, col});
      i = end + 1;
      continue;
    }
    if (std::string("(),=:{}").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), c, col});
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < line.size() &&
         std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      std::size_t start = i;
      ++i;
      while (i < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[i])) ||
              line[i] == '.' || line[i] == '+' || line[i] == '-')) {
        // A sign continues the number only inside an exponent.
        if ((line[i] == '+' || line[i] == '-') &&
            !(line[i - 1] == 'e' || line[i - 1] == 'E')) {
          break;
        }
        ++i;
      }
      out.push_back({Token::Kind::Number, line.substr(start, i - start), 0, col});
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({Token::Kind::Ident, line.substr(start, i - start), 0, col});
      continue;
    }
    throw Error(ErrorKind::Syntax,
                std::string("unexpected character '") + c + "'", lineno, col);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct PendingBranch {
  int stmt_index;
  std::string then_label;
  std::string else_label;
  int lineno;
};

struct MethodDraft {
  MethodBody body;
  std::map<std::string, int> labels;
  std::vector<PendingBranch> branches;
  int lineno = 0;
};

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, int lineno)
      : tokens_(std::move(tokens)), lineno_(lineno) {}

  const Token& peek() const {
    static const Token end_token{};
    return pos_ < tokens_.size() ? tokens_[pos_] : end_token;
  }
  Token take() {
    Token t = peek();
    if (pos_ < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return pos_ >= tokens_.size(); }

  std::string expect_ident(const std::string& what) {
    Token t = take();
    if (t.kind != Token::Kind::Ident) {
      throw Error(ErrorKind::Syntax, "expected " + what, lineno_,
                  t.column ? t.column : last_column());
    }
    return t.text;
  }
  void expect_punct(char c) {
    Token t = take();
    if (t.kind != Token::Kind::Punct || t.punct != c) {
      throw Error(ErrorKind::Syntax,
                  std::string("expected '") + c + "'", lineno_,
                  t.column ? t.column : last_column());
    }
  }
  bool accept_punct(char c) {
    if (peek().kind == Token::Kind::Punct && peek().punct == c) {
      take();
      return true;
    }
    return false;
  }
  void expect_end() {
    if (!at_end()) {
      throw Error(ErrorKind::Syntax, "trailing token '" + peek().text + "'",
                  lineno_, peek().column);
    }
  }
  int lineno() const { return lineno_; }
  int last_column() const {
    return tokens_.empty() ? 1 : tokens_.back().column;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int lineno_;
};

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts)
      : text_(text), opts_(opts) {}

  AppModel run() {
    parse_lines();
    finish_methods();
    resolve_and_validate();
    lint();
    return std::move(app_);
  }

 private:
  enum class Context { Top, Manifest, Screen, Method };

  void parse_lines() {
    std::istringstream in(text_);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto tokens = lex_line(line, lineno);
      if (tokens.empty()) continue;
      Cursor cur(std::move(tokens), lineno);
      switch (context_) {
        case Context::Top: parse_top(cur); break;
        case Context::Manifest: parse_manifest_line(cur); break;
        case Context::Screen: parse_screen_line(cur); break;
        case Context::Method: parse_method_line(cur); break;
      }
    }
    if (context_ != Context::Top) {
      throw Error(ErrorKind::Syntax, "unterminated block (missing '}')", lineno);
    }
    if (app_.id.empty()) {
      throw Error(ErrorKind::Syntax, "missing 'app <id>' directive", 1);
    }
  }

  void parse_top(Cursor& cur) {
    std::string keyword = cur.expect_ident("directive");
    if (keyword == "app") {
      if (!app_.id.empty()) {
        throw Error(ErrorKind::Duplicate, "second 'app' directive",
                    cur.lineno());
      }
      app_.id = cur.expect_ident("app id");
      cur.expect_end();
      return;
    }
    if (app_.id.empty()) {
      throw Error(ErrorKind::Syntax, "'app <id>' must be the first directive",
                  cur.lineno());
    }
    if (keyword == "manifest") {
      cur.expect_punct('{');
      cur.expect_end();
      if (manifest_seen_) {
        throw Error(ErrorKind::Duplicate, "second manifest block", cur.lineno());
      }
      manifest_seen_ = true;
      context_ = Context::Manifest;
    } else if (keyword == "screen") {
      Screen s;
      s.id = cur.expect_ident("screen id");
      cur.expect_punct('{');
      cur.expect_end();
      for (const auto& existing : app_.screens) {
        if (existing.id == s.id) {
          throw Error(ErrorKind::Duplicate, "screen '" + s.id + "'",
                      cur.lineno());
        }
      }
      app_.screens.push_back(std::move(s));
      context_ = Context::Screen;
    } else if (keyword == "entry") {
      std::string m = cur.expect_ident("method id");
      cur.expect_end();
      for (const auto& e : app_.entry_points) {
        if (e == m) {
          throw Error(ErrorKind::Duplicate, "entry point '" + m + "'",
                      cur.lineno());
        }
      }
      app_.entry_points.push_back(std::move(m));
    } else if (keyword == "method") {
      MethodDraft draft;
      draft.lineno = cur.lineno();
      draft.body.id = cur.expect_ident("method id");
      cur.expect_punct('(');
      if (!cur.accept_punct(')')) {
        while (true) {
          std::string p = cur.expect_ident("parameter name");
          for (const auto& q : draft.body.params) {
            if (q == p) {
              throw Error(ErrorKind::Duplicate,
                          "parameter '" + p + "' in method '" + draft.body.id +
                              "'",
                          cur.lineno());
            }
          }
          draft.body.params.push_back(std::move(p));
          if (cur.accept_punct(')')) break;
          cur.expect_punct(',');
        }
      }
      cur.expect_punct('{');
      cur.expect_end();
      if (methods_.count(draft.body.id) != 0) {
        throw Error(ErrorKind::Duplicate, "method '" + draft.body.id + "'",
                    cur.lineno());
      }
      current_method_ = draft.body.id;
      methods_.emplace(draft.body.id, std::move(draft));
      context_ = Context::Method;
    } else {
      throw Error(ErrorKind::Syntax, "unknown directive '" + keyword + "'",
                  cur.lineno());
    }
  }

  void parse_manifest_line(Cursor& cur) {
    if (cur.accept_punct('}')) {
      cur.expect_end();
      context_ = Context::Top;
      return;
    }
    std::string keyword = cur.expect_ident("manifest entry");
    if (keyword == "permission") {
      std::string perm = cur.expect_ident("permission string");
      cur.expect_end();
      app_.manifest.permissions.insert(std::move(perm));
    } else if (keyword == "meta") {
      std::string key = cur.expect_ident("metadata key");
      Token value = cur.take();
      if (value.kind == Token::Kind::End) {
        throw Error(ErrorKind::Syntax, "missing metadata value", cur.lineno());
      }
      cur.expect_end();
      if (!app_.manifest.metadata.emplace(key, value.text).second) {
        throw Error(ErrorKind::Duplicate, "metadata key '" + key + "'",
                    cur.lineno());
      }
    } else {
      throw Error(ErrorKind::Syntax,
                  "unknown manifest entry '" + keyword + "'", cur.lineno());
    }
  }

  void parse_screen_line(Cursor& cur) {
    Screen& screen = app_.screens.back();
    if (cur.accept_punct('}')) {
      cur.expect_end();
      context_ = Context::Top;
      return;
    }
    std::string keyword = cur.expect_ident("screen entry");
    if (keyword == "enter") {
      if (screen.on_enter) {
        throw Error(ErrorKind::Duplicate,
                    "second 'enter' in screen '" + screen.id + "'",
                    cur.lineno());
      }
      screen.on_enter = cur.expect_ident("method id");
      cur.expect_end();
    } else if (keyword == "widget") {
      Widget w;
      w.id = cur.expect_ident("widget id");
      std::string h = cur.expect_ident("'handler'");
      if (h != "handler") {
        throw Error(ErrorKind::Syntax, "expected 'handler'", cur.lineno());
      }
      w.handler = cur.expect_ident("handler method");
      if (cur.peek().kind == Token::Kind::Ident && cur.peek().text == "goto") {
        cur.take();
        w.transition = cur.expect_ident("target screen id");
      }
      if (cur.peek().kind == Token::Kind::Ident && cur.peek().text == "weight") {
        cur.take();
        Token num = cur.take();
        if (num.kind != Token::Kind::Number) {
          throw Error(ErrorKind::Syntax, "expected numeric weight",
                      cur.lineno(), num.column);
        }
        try {
          w.weight = std::stod(num.text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::Syntax, "bad weight '" + num.text + "'",
                      cur.lineno(), num.column);
        }
        if (!(w.weight > 0)) {
          throw Error(ErrorKind::Syntax,
                      "widget weight must be positive, got '" + num.text + "'",
                      cur.lineno(), num.column);
        }
      }
      cur.expect_end();
      for (const auto& existing : screen.widgets) {
        if (existing.id == w.id) {
          throw Error(ErrorKind::Duplicate,
                      "widget '" + w.id + "' in screen '" + screen.id + "'",
                      cur.lineno());
        }
      }
      screen.widgets.push_back(std::move(w));
    } else {
      throw Error(ErrorKind::Syntax, "unknown screen entry '" + keyword + "'",
                  cur.lineno());
    }
  }

  void parse_method_line(Cursor& cur) {
    MethodDraft& draft = methods_.at(current_method_);
    if (cur.accept_punct('}')) {
      cur.expect_end();
      context_ = Context::Top;
      return;
    }

    // Optional `label:` prefix.
    if (cur.peek().kind == Token::Kind::Ident) {
      Cursor probe = cur;  // cheap copy, tokens are small
      std::string maybe_label = probe.take().text;
      if (probe.peek().kind == Token::Kind::Punct && probe.peek().punct == ':') {
        cur.take();
        cur.take();
        int index = static_cast<int>(draft.body.statements.size());
        if (!draft.labels.emplace(maybe_label, index).second) {
          throw Error(ErrorKind::Duplicate,
                      "label '" + maybe_label + "' in method '" +
                          draft.body.id + "'",
                      cur.lineno());
        }
      }
    }

    draft.body.statements.push_back(parse_statement(cur, draft));
    cur.expect_end();
  }

  Statement parse_statement(Cursor& cur, MethodDraft& draft) {
    Token first = cur.take();
    if (first.kind != Token::Kind::Ident) {
      throw Error(ErrorKind::Syntax, "expected statement", cur.lineno(),
                  first.column);
    }

    if (first.text == "return") {
      ReturnStmt ret;
      if (!cur.at_end()) ret.value = cur.expect_ident("variable");
      return ret;
    }

    if (first.text == "if") {
      BranchStmt br;
      PendingBranch pending;
      pending.stmt_index = static_cast<int>(draft.body.statements.size());
      pending.lineno = cur.lineno();
      br.cond = cur.expect_ident("condition variable");
      std::string kw = cur.expect_ident("'goto'");
      if (kw != "goto") {
        throw Error(ErrorKind::Syntax, "expected 'goto'", cur.lineno());
      }
      pending.then_label = cur.expect_ident("label");
      kw = cur.expect_ident("'else'");
      if (kw != "else") {
        throw Error(ErrorKind::Syntax, "expected 'else'", cur.lineno());
      }
      pending.else_label = cur.expect_ident("label");
      draft.branches.push_back(std::move(pending));
      return br;
    }

    if (first.text == "call") {
      return parse_call(cur, std::nullopt);
    }

    // `<var> = ...`
    cur.expect_punct('=');
    Token rhs = cur.peek();
    if (rhs.kind == Token::Kind::Ident && rhs.text == "call") {
      cur.take();
      return parse_call(cur, first.text);
    }
    AssignStmt assign;
    assign.dst = first.text;
    Token value = cur.take();
    switch (value.kind) {
      case Token::Kind::Ident:
        assign.src = Operand::var(value.text);
        break;
      case Token::Kind::Str:
        assign.src = Operand::str_const(value.text);
        break;
      case Token::Kind::Number: {
        if (value.text.find_first_of(".eE") != std::string::npos) {
          throw Error(ErrorKind::Syntax,
                      "integer literal expected, got '" + value.text + "'",
                      cur.lineno(), value.column);
        }
        try {
          assign.src = Operand::int_const(std::stoll(value.text));
        } catch (const std::exception&) {
          throw Error(ErrorKind::Syntax, "bad integer '" + value.text + "'",
                      cur.lineno(), value.column);
        }
        break;
      }
      default:
        throw Error(ErrorKind::Syntax, "expected value after '='",
                    cur.lineno(), value.column);
    }
    return assign;
  }

  // All calls parse as CallMethodStmt; resolution against declared methods
  // happens once the whole app is known.
  Statement parse_call(Cursor& cur, std::optional<VarName> ret) {
    CallMethodStmt call;
    call.ret = std::move(ret);
    call.callee = cur.expect_ident("call target");
    cur.expect_punct('(');
    if (!cur.accept_punct(')')) {
      while (true) {
        call.args.push_back(cur.expect_ident("argument variable"));
        if (cur.accept_punct(')')) break;
        cur.expect_punct(',');
      }
    }
    return call;
  }

  void finish_methods() {
    for (auto& [id, draft] : methods_) {
      for (const auto& pending : draft.branches) {
        auto then_it = draft.labels.find(pending.then_label);
        auto else_it = draft.labels.find(pending.else_label);
        if (then_it == draft.labels.end()) {
          throw Error(ErrorKind::Reference,
                      "label '" + pending.then_label + "' in method '" + id +
                          "'",
                      pending.lineno);
        }
        if (else_it == draft.labels.end()) {
          throw Error(ErrorKind::Reference,
                      "label '" + pending.else_label + "' in method '" + id +
                          "'",
                      pending.lineno);
        }
        auto& stmt =
            std::get<BranchStmt>(draft.body.statements[pending.stmt_index]);
        stmt.then_index = then_it->second;
        stmt.else_index = else_it->second;
      }
      app_.methods.emplace(id, std::move(draft.body));
    }
  }

  void warn(const std::string& message) {
    if (opts_.warnings) opts_.warnings->push_back(message);
  }

  // Call targets resolve to declared methods first; everything else is an
  // external API identifier. Strict mode additionally requires unresolved
  // targets and handlers to be cataloged.
  void check_external(const std::string& name, const std::string& where) {
    bool cataloged = opts_.catalog && opts_.catalog->is_sensitive(name);
    if (opts_.strict_refs && !cataloged) {
      throw Error(ErrorKind::Reference,
                  "'" + name + "' (" + where +
                      ") is neither a declared method nor a cataloged API");
    }
    if (!cataloged) {
      warn("unresolved target '" + name + "' (" + where +
           ") treated as external API");
    }
  }

  void resolve_and_validate() {
    for (auto& [id, body] : app_.methods) {
      for (auto& stmt : body.statements) {
        if (auto* call = std::get_if<CallMethodStmt>(&stmt)) {
          if (!app_.has_method(call->callee)) {
            check_external(call->callee, "call in method '" + id + "'");
            stmt = CallApiStmt{call->callee, std::move(call->args),
                               std::move(call->ret)};
          }
        }
      }
    }

    if (app_.entry_points.empty()) {
      throw Error(ErrorKind::Reference, "app declares no entry point");
    }
    for (const auto& e : app_.entry_points) {
      if (!app_.has_method(e)) {
        throw Error(ErrorKind::Reference,
                    "entry point '" + e + "' is not a declared method");
      }
    }

    for (const auto& screen : app_.screens) {
      if (screen.on_enter && !app_.has_method(*screen.on_enter)) {
        check_external(*screen.on_enter,
                       "on_enter of screen '" + screen.id + "'");
      }
      for (const auto& widget : screen.widgets) {
        if (!app_.has_method(widget.handler)) {
          check_external(widget.handler, "handler of widget '" + widget.id +
                                             "' in screen '" + screen.id + "'");
        }
        if (widget.transition && !app_.find_screen(*widget.transition)) {
          throw Error(ErrorKind::Reference,
                      "widget '" + widget.id + "' transitions to unknown screen '" +
                          *widget.transition + "'");
        }
      }
    }
  }

  // Reads of variables never assigned anywhere in the app are suspicious but
  // legal (they evaluate to the unknown value); report them as lints.
  void lint() {
    if (!opts_.warnings) return;
    std::set<VarName> assigned;
    for (const auto& [id, body] : app_.methods) {
      for (const auto& p : body.params) assigned.insert(p);
      for (const auto& stmt : body.statements) {
        if (auto* a = std::get_if<AssignStmt>(&stmt)) {
          assigned.insert(a->dst);
        } else if (auto* c = std::get_if<CallApiStmt>(&stmt)) {
          if (c->ret) assigned.insert(*c->ret);
        } else if (auto* m = std::get_if<CallMethodStmt>(&stmt)) {
          if (m->ret) assigned.insert(*m->ret);
        }
      }
    }
    auto check_read = [&](const VarName& v, const MethodId& in) {
      if (assigned.count(v) == 0) {
        warn("variable '" + v + "' read in method '" + in +
             "' is never assigned");
      }
    };
    for (const auto& [id, body] : app_.methods) {
      for (const auto& stmt : body.statements) {
        if (auto* a = std::get_if<AssignStmt>(&stmt)) {
          if (a->src.kind == Operand::Kind::Var) check_read(a->src.text, id);
        } else if (auto* c = std::get_if<CallApiStmt>(&stmt)) {
          for (const auto& v : c->args) check_read(v, id);
        } else if (auto* m = std::get_if<CallMethodStmt>(&stmt)) {
          for (const auto& v : m->args) check_read(v, id);
        } else if (auto* b = std::get_if<BranchStmt>(&stmt)) {
          check_read(b->cond, id);
        } else if (auto* r = std::get_if<ReturnStmt>(&stmt)) {
          if (r->value) check_read(*r->value, id);
        }
      }
    }
  }

  const std::string& text_;
  const ParseOptions& opts_;
  AppModel app_;
  Context context_ = Context::Top;
  bool manifest_seen_ = false;
  std::map<MethodId, MethodDraft> methods_;
  MethodId current_method_;
};

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

void serialize_statement(std::ostream& out, const Statement& stmt) {
  if (const auto* a = std::get_if<AssignStmt>(&stmt)) {
    out << a->dst << " = ";
    switch (a->src.kind) {
      case Operand::Kind::Var: out << a->src.text; break;
      case Operand::Kind::IntConst: out << a->src.number; break;
      case Operand::Kind::StrConst: out << '"' << a->src.text << '"'; break;
    }
    return;
  }
  auto call_like = [&](const std::string& target,
                       const std::vector<VarName>& args,
                       const std::optional<VarName>& ret) {
    if (ret) out << *ret << " = ";
    out << "call " << target << "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out << ", ";
      out << args[i];
    }
    out << ")";
  };
  if (const auto* c = std::get_if<CallApiStmt>(&stmt)) {
    call_like(c->api, c->args, c->ret);
  } else if (const auto* m = std::get_if<CallMethodStmt>(&stmt)) {
    call_like(m->callee, m->args, m->ret);
  } else if (const auto* b = std::get_if<BranchStmt>(&stmt)) {
    out << "if " << b->cond << " goto L" << b->then_index << " else L"
        << b->else_index;
  } else if (const auto* r = std::get_if<ReturnStmt>(&stmt)) {
    out << "return";
    if (r->value) out << " " << *r->value;
  }
}

}  // namespace

AppModel parse_app(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).run();
}

std::string serialize(const AppModel& app) {
  std::ostringstream out;
  out << "app " << app.id << "\n";

  if (!app.manifest.permissions.empty() || !app.manifest.metadata.empty()) {
    out << "\nmanifest {\n";
    for (const auto& p : app.manifest.permissions) {
      out << "  permission " << p << "\n";
    }
    for (const auto& [k, v] : app.manifest.metadata) {
      out << "  meta " << k << " " << v << "\n";
    }
    out << "}\n";
  }

  for (const auto& screen : app.screens) {
    out << "\nscreen " << screen.id << " {\n";
    if (screen.on_enter) out << "  enter " << *screen.on_enter << "\n";
    for (const auto& w : screen.widgets) {
      out << "  widget " << w.id << " handler " << w.handler;
      if (w.transition) out << " goto " << *w.transition;
      if (w.weight != 1.0) out << " weight " << format_weight(w.weight);
      out << "\n";
    }
    out << "}\n";
  }

  if (!app.entry_points.empty()) out << "\n";
  for (const auto& e : app.entry_points) out << "entry " << e << "\n";

  for (const auto& [id, body] : app.methods) {
    out << "\nmethod " << id << "(";
    for (std::size_t i = 0; i < body.params.size(); ++i) {
      if (i) out << ", ";
      out << body.params[i];
    }
    out << ") {\n";
    std::set<int> targets;
    for (const auto& stmt : body.statements) {
      if (const auto* b = std::get_if<BranchStmt>(&stmt)) {
        targets.insert(b->then_index);
        targets.insert(b->else_index);
      }
    }
    for (std::size_t i = 0; i < body.statements.size(); ++i) {
      out << "  ";
      if (targets.count(static_cast<int>(i))) out << "L" << i << ": ";
      serialize_statement(out, body.statements[i]);
      out << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

AppPair load_pair(const std::string& dataset_dir, const std::string& pair_id,
                  const ParseOptions& opts) {
  // Pair ids end up in CSV columns and file names; keep them tame.
  if (pair_id.empty() ||
      pair_id.find_first_not_of("ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                "abcdefghijklmnopqrstuvwxyz"
                                "0123456789_.-") != std::string::npos) {
    throw Error(ErrorKind::Dataset,
                "pair id '" + pair_id +
                    "' contains characters outside [A-Za-z0-9_.-]");
  }
  fs::path base = fs::path(dataset_dir) / pair_id;
  bool has_benign = fs::exists(base / "benign.app");
  bool has_malign = fs::exists(base / "malign.app");
  if (!has_benign || !has_malign) {
    throw Error(ErrorKind::Dataset,
                "pair '" + pair_id + "' is missing " +
                    (has_benign ? "malign.app" : "benign.app"));
  }
  auto load = [&](const char* name) {
    std::ifstream in(base / name);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return parse_app(buf.str(), opts);
    } catch (const Error& e) {
      throw Error(e.kind(), "pair '" + pair_id + "', " + std::string(name) +
                                ": " + e.what());
    }
  };
  AppPair pair;
  pair.pair_id = pair_id;
  pair.benign = load("benign.app");
  pair.malign = load("malign.app");
  if (pair.benign.id == pair.malign.id) {
    throw Error(ErrorKind::Dataset,
                "pair '" + pair_id +
                    "': benign and malign share the app id '" +
                    pair.benign.id + "'");
  }
  return pair;
}

std::vector<AppPair> parse_pair_dataset(const std::string& dir,
                                        const ParseOptions& opts,
                                        std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& message) {
    if (warnings) warnings->push_back(message);
  };

  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::Dataset, "'" + dir + "' is not a directory");
  }

  std::vector<std::string> pair_ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) pair_ids.push_back(entry.path().filename().string());
  }
  std::sort(pair_ids.begin(), pair_ids.end());

  std::vector<AppPair> pairs;
  for (const auto& pair_id : pair_ids) {
    fs::path base = fs::path(dir) / pair_id;
    if (!fs::exists(base / "benign.app") && !fs::exists(base / "malign.app")) {
      warn("skipping '" + pair_id + "': no .app files");
      continue;
    }
    pairs.push_back(load_pair(dir, pair_id, opts));
  }
  if (pairs.empty()) warn("dataset directory '" + dir + "' contains no pairs");
  return pairs;
}

}  // namespace sandmine
