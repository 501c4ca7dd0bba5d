#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfloquet/qmatrix.hpp"
#include "qfloquet/quaternion.hpp"

namespace qfloquet {

namespace detail {
struct ExprNode;
}

struct ParseOptions {
  /// Accept the sweep parameter `p` as an identifier.
  bool allow_parameter = false;
};

/// Immutable expression tree for a quaternion-valued function of time.
///
/// Grammar (whitespace ignored, identifiers case-sensitive):
///
///     expr   := term (('+' | '-') term)*
///     term   := factor (('*' | '/') factor)*
///     factor := atom ('^' uint)?
///     atom   := number | 'i' | 'j' | 'k' | 't' | 'p'
///             | '(' expr ')' | ('exp' | 'cos' | 'sin') '(' expr ')'
///             | '-' atom
///
/// There is no implicit multiplication. Products keep their source order and
/// x / y means x * inverse(y). Unary minus applies to an atom, so "-t^2" is
/// (-t)^2.
class TimeExpr {
 public:
  TimeExpr();  ///< the constant 0

  /// Throws Error(DivisionByZero) or Error(DomainError) for cos/sin of a
  /// non-real argument. Evaluating an expression that still mentions the
  /// parameter throws Error(InvalidArgument).
  Quaternion eval(double t) const;

  bool depends_on_time() const;
  bool depends_on_parameter() const;

  /// Copy with every `p` replaced by the given value.
  TimeExpr substitute_parameter(double value) const;

  /// Source text that parses back to an equivalent tree.
  std::string render() const;

 private:
  explicit TimeExpr(std::shared_ptr<const detail::ExprNode> root);
  friend TimeExpr parse(std::string_view src, ParseOptions options);
  std::shared_ptr<const detail::ExprNode> root_;
};

/// Throws Error(SyntaxError) or Error(UnknownIdentifier), both carrying the
/// byte offset of the offending token.
TimeExpr parse(std::string_view src, ParseOptions options = {});

inline Quaternion eval(const TimeExpr& e, double t) { return e.eval(t); }
inline std::string render(const TimeExpr& e) { return e.render(); }

/// n x n matrix of expressions, optionally periodic.
struct MatrixSpec {
  std::size_t n = 0;
  std::vector<TimeExpr> entries;  ///< row-major
  std::optional<double> period;   ///< empty for constant systems

  /// Parses n*n row-major expression strings. Parse errors are rethrown with
  /// the entry position prepended to the message; the offset is kept.
  static MatrixSpec parse(std::size_t n, const std::vector<std::string>& sources,
                          std::optional<double> period = std::nullopt,
                          ParseOptions options = {});
  static MatrixSpec constant(const QMatrix& a);

  QMatrix eval(double t) const;
  /// Re(tr A(t)); cheaper than eval(t) when only the trace is needed.
  double re_trace(double t) const;
  bool depends_on_time() const;
  MatrixSpec substitute_parameter(double value) const;
};

}  // namespace qfloquet
