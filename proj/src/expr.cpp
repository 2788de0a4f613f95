// Copyright 2026 The modelock Authors
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

#include "modelock/expr.hpp"

#include <cctype>
#include <variant>
#include <vector>

#include "modelock/error.hpp"

namespace modelock {

struct Expr::Node {
  struct Number { std::string digits; };
  struct Value { BigReal value; };
  struct Constant { char which; };  // 'p' pi, 'g' golden, 'e' Euler
  struct Unary { char op; std::shared_ptr<const Node> arg; };
  struct Binary { char op; std::shared_ptr<const Node> lhs, rhs; };
  struct Call { std::string fn; std::shared_ptr<const Node> arg; };

  std::variant<Number, Value, Constant, Unary, Binary, Call> v;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error, why + " in expression '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(auto&& alt) {
    return std::make_shared<const Expr::Node>(Expr::Node{std::forward<decltype(alt)>(alt)});
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Expr::Node::Binary{'+', lhs, term()});
      else if (accept('-')) lhs = make(Expr::Node::Binary{'-', lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Expr::Node::Binary{'*', lhs, unary()});
      else if (accept('/')) lhs = make(Expr::Node::Binary{'/', lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expr::Node::Unary{'-', unary()});
    if (accept('+')) return unary();
    NodePtr base = primary();
    if (accept('^')) return make(Expr::Node::Binary{'^', base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      size_t look = pos_ + 1;
      if (look < s_.size() && (s_[look] == '+' || s_[look] == '-')) ++look;
      if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look]))) {
        pos_ = look;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    std::string digits(s_.substr(start, pos_ - start));
    BigReal::parse(digits, Bits{64});  // validates syntax
    return make(Expr::Node::Number{std::move(digits)});
  }

  NodePtr identifier() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "pi") return make(Expr::Node::Constant{'p'});
    if (name == "golden") return make(Expr::Node::Constant{'g'});
    if (name == "e") return make(Expr::Node::Constant{'e'});
    static const std::vector<std::string> fns = {"sqrt", "exp", "log", "sin", "cos"};
    for (const auto& fn : fns) {
      if (name == fn) {
        if (!accept('(')) fail("expected '(' after " + name);
        NodePtr arg = expr();
        if (!accept(')')) fail("missing ')'");
        return make(Expr::Node::Call{name, arg});
      }
    }
    fail("unknown identifier '" + name + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

BigReal eval_node(const Expr::Node& n, Bits bits) {
  using N = Expr::Node;
  return std::visit(
      [&](const auto& alt) -> BigReal {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, N::Number>) {
          return BigReal::parse(alt.digits, bits);
        } else if constexpr (std::is_same_v<T, N::Value>) {
          return alt.value.with_bits(bits);
        } else if constexpr (std::is_same_v<T, N::Constant>) {
          if (alt.which == 'p') return BigReal::pi(bits);
          if (alt.which == 'g') return golden_mean(bits);
          return exp(BigReal(1, bits));
        } else if constexpr (std::is_same_v<T, N::Unary>) {
          return -eval_node(*alt.arg, bits);
        } else if constexpr (std::is_same_v<T, N::Binary>) {
          BigReal a = eval_node(*alt.lhs, bits);
          BigReal b = eval_node(*alt.rhs, bits);
          switch (alt.op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return pow(a, b);
          }
        } else {
          BigReal a = eval_node(*alt.arg, bits);
          if (alt.fn == "sqrt") return sqrt(a);
          if (alt.fn == "exp") return exp(a);
          if (alt.fn == "log") return log(a);
          if (alt.fn == "sin") return sin(a);
          return cos(a);
        }
      },
      n.v);
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Parser parser(text);
  return Expr(parser.parse_all(), std::string(text));
}

Expr Expr::literal(const BigReal& value) {
  auto node = std::make_shared<const Node>(Node{Node::Value{value}});
  return Expr(std::move(node), to_string(value));
}

Expr Expr::integer(long value) { return parse(std::to_string(value)); }

BigReal Expr::eval(Bits bits) const { return eval_node(*root_, bits); }

BigReal golden_mean(Bits bits) {
  BigReal five(5, Bits{bits.value + 8});
  BigReal g = (sqrt(five) - 1) / 2;
  return g.with_bits(bits);
}

}  // namespace modelock
