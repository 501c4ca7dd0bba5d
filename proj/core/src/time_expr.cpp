#include "qfloquet/time_expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "qfloquet/error.hpp"

namespace qfloquet {

namespace detail {

enum class NodeKind { Literal, Time, Parameter, Negate, Add, Sub, Mul, Div, Pow, Exp, Cos, Sin };

struct ExprNode {
  NodeKind kind = NodeKind::Literal;
  Quaternion value;  // Literal
  unsigned exponent = 0;  // Pow
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

}  // namespace detail

namespace {

using detail::ExprNode;
using detail::NodeKind;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_literal(Quaternion q) {
  auto node = std::make_shared<ExprNode>();
  node->value = q;
  return node;
}

NodePtr make_node(NodeKind kind, NodePtr lhs, NodePtr rhs = nullptr, unsigned exponent = 0) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->exponent = exponent;
  return node;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  Parser(std::string_view src, ParseOptions options) : src_(src), options_(options) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) fail("empty expression");
    NodePtr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(at), at);
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == src_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(NodeKind::Add, lhs, term());
      else if (accept('-'))
        lhs = make_node(NodeKind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make_node(NodeKind::Mul, lhs, factor());
      else if (accept('/'))
        lhs = make_node(NodeKind::Div, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    unsigned exponent = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, exponent);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail_at(start, "exponent out of range");
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
      fail("exponent must be a nonnegative integer");
    return make_node(NodeKind::Pow, base, nullptr, exponent);
  }

  NodePtr atom() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return make_node(NodeKind::Negate, atom());
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') return number();
    if (is_ident_start(c)) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && is_digit(src_[look])) {
        pos_ = look;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail_at(start, "malformed number");
    if (pos_ < src_.size() && is_ident_start(src_[pos_]))
      fail("implicit multiplication is not allowed; write '*'");
    return make_literal(Quaternion(value));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_ident_start(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "i") return make_literal(Quaternion::unit_i());
    if (name == "j") return make_literal(Quaternion::unit_j());
    if (name == "k") return make_literal(Quaternion::unit_k());
    if (name == "t") return make_node(NodeKind::Time, nullptr);
    if (name == "p" && options_.allow_parameter) return make_node(NodeKind::Parameter, nullptr);
    NodeKind fn;
    if (name == "exp")
      fn = NodeKind::Exp;
    else if (name == "cos")
      fn = NodeKind::Cos;
    else if (name == "sin")
      fn = NodeKind::Sin;
    else
      throw Error(ErrorCode::UnknownIdentifier,
                  "unknown identifier '" + std::string(name) + "' at offset " +
                      std::to_string(start),
                  start);
    if (!accept('(')) fail("expected '(' after " + std::string(name));
    NodePtr arg = expr();
    expect(')');
    return make_node(fn, arg);
  }

  std::string_view src_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

double real_argument(const Quaternion& q, const char* fn) {
  if (vec_norm(q) > 1e-12 * std::max(1.0, std::abs(q.w))) {
    throw Error(ErrorCode::DomainError,
                std::string(fn) + " is defined for real arguments only, got " + to_string(q));
  }
  return q.w;
}

Quaternion eval_node(const ExprNode& node, double t) {
  switch (node.kind) {
    case NodeKind::Literal:
      return node.value;
    case NodeKind::Time:
      return t;
    case NodeKind::Parameter:
      throw Error(ErrorCode::InvalidArgument, "parameter 'p' has no value");
    case NodeKind::Negate:
      return -eval_node(*node.lhs, t);
    case NodeKind::Add:
      return eval_node(*node.lhs, t) + eval_node(*node.rhs, t);
    case NodeKind::Sub:
      return eval_node(*node.lhs, t) - eval_node(*node.rhs, t);
    case NodeKind::Mul:
      return eval_node(*node.lhs, t) * eval_node(*node.rhs, t);
    case NodeKind::Div:
      return eval_node(*node.lhs, t) / eval_node(*node.rhs, t);
    case NodeKind::Pow: {
      const Quaternion base = eval_node(*node.lhs, t);
      Quaternion out(1.0);
      for (unsigned k = 0; k < node.exponent; ++k) out = out * base;
      return out;
    }
    case NodeKind::Exp:
      return qexp(eval_node(*node.lhs, t));
    case NodeKind::Cos:
      return std::cos(real_argument(eval_node(*node.lhs, t), "cos"));
    case NodeKind::Sin:
      return std::sin(real_argument(eval_node(*node.lhs, t), "sin"));
  }
  return {};
}

bool mentions(const ExprNode& node, NodeKind kind) {
  if (node.kind == kind) return true;
  return (node.lhs && mentions(*node.lhs, kind)) || (node.rhs && mentions(*node.rhs, kind));
}

NodePtr substitute(const NodePtr& node, double value) {
  if (node->kind == NodeKind::Parameter) return make_literal(Quaternion(value));
  if (!node->lhs && !node->rhs) return node;
  auto copy = std::make_shared<ExprNode>(*node);
  if (copy->lhs) copy->lhs = substitute(copy->lhs, value);
  if (copy->rhs) copy->rhs = substitute(copy->rhs, value);
  return copy;
}

std::string number_text(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(v));
  std::string s(buf.data(), res.ptr);
  return std::signbit(v) ? "(-" + s + ")" : s;
}

std::string render_literal(const Quaternion& q) {
  if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0) return number_text(q.w);
  std::string out = "(" + number_text(q.w);
  const std::array<std::pair<double, const char*>, 3> parts{
      {{q.x, "i"}, {q.y, "j"}, {q.z, "k"}}};
  for (const auto& [v, unit] : parts) out += " + " + number_text(v) + "*" + unit;
  return out + ")";
}

std::string render_node(const ExprNode& node) {
  auto binary = [&](const char* op) {
    return "(" + render_node(*node.lhs) + " " + op + " " + render_node(*node.rhs) + ")";
  };
  switch (node.kind) {
    case NodeKind::Literal:
      return render_literal(node.value);
    case NodeKind::Time:
      return "t";
    case NodeKind::Parameter:
      return "p";
    case NodeKind::Negate:
      return "-(" + render_node(*node.lhs) + ")";
    case NodeKind::Add:
      return binary("+");
    case NodeKind::Sub:
      return binary("-");
    case NodeKind::Mul:
      return binary("*");
    case NodeKind::Div:
      return binary("/");
    case NodeKind::Pow:
      return "(" + render_node(*node.lhs) + ")^" + std::to_string(node.exponent);
    case NodeKind::Exp:
      return "exp(" + render_node(*node.lhs) + ")";
    case NodeKind::Cos:
      return "cos(" + render_node(*node.lhs) + ")";
    case NodeKind::Sin:
      return "sin(" + render_node(*node.lhs) + ")";
  }
  return {};
}

}  // namespace

TimeExpr::TimeExpr() : root_(make_literal(Quaternion())) {}

TimeExpr::TimeExpr(std::shared_ptr<const detail::ExprNode> root) : root_(std::move(root)) {}

Quaternion TimeExpr::eval(double t) const { return eval_node(*root_, t); }

bool TimeExpr::depends_on_time() const { return mentions(*root_, NodeKind::Time); }

bool TimeExpr::depends_on_parameter() const { return mentions(*root_, NodeKind::Parameter); }

TimeExpr TimeExpr::substitute_parameter(double value) const {
  return TimeExpr(substitute(root_, value));
}

std::string TimeExpr::render() const { return render_node(*root_); }

TimeExpr parse(std::string_view src, ParseOptions options) {
  return TimeExpr(Parser(src, options).parse());
}

// ---------------------------------------------------------------------------

MatrixSpec MatrixSpec::parse(std::size_t n, const std::vector<std::string>& sources,
                             std::optional<double> period, ParseOptions options) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix order must be positive");
  if (sources.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n * n) + " entries, got " +
                    std::to_string(sources.size()));
  }
  if (period && !(*period > 0.0 && std::isfinite(*period))) {
    throw Error(ErrorCode::InvalidArgument, "period must be positive and finite");
  }
  MatrixSpec spec;
  spec.n = n;
  spec.period = period;
  spec.entries.reserve(sources.size());
  for (std::size_t idx = 0; idx < sources.size(); ++idx) {
    try {
      spec.entries.push_back(qfloquet::parse(sources[idx], options));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "entry (" + std::to_string(idx / n + 1) + "," + std::to_string(idx % n + 1) +
                      "): " + e.what(),
                  e.offset());
    }
  }
  return spec;
}

MatrixSpec MatrixSpec::constant(const QMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "system matrix must be square");
  MatrixSpec spec;
  spec.n = a.rows();
  for (const auto& q : a.entries()) spec.entries.push_back(qfloquet::parse(render_literal(q)));
  return spec;
}

QMatrix MatrixSpec::eval(double t) const {
  QMatrix m(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) m.entries()[k] = entries[k].eval(t);
  return m;
}

double MatrixSpec::re_trace(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += entries[i * n + i].eval(t).w;
  return s;
}

bool MatrixSpec::depends_on_time() const {
  for (const auto& e : entries)
    if (e.depends_on_time()) return true;
  return false;
}

MatrixSpec MatrixSpec::substitute_parameter(double value) const {
  MatrixSpec out = *this;
  for (auto& e : out.entries) e = e.substitute_parameter(value);
  return out;
}

}  // namespace qfloquet
