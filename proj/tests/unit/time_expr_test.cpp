#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/time_expr.hpp"

using namespace qfloquet;

namespace {

Quaternion at(const std::string& src, double t) { return parse(src).eval(t); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(TimeExpr, Literals) {
  EXPECT_EQ(at("3.5", 0), Quaternion(3.5));
  EXPECT_EQ(at("2*i - j + 0.5*k", 0), Quaternion(0, 2, -1, 0.5));
  EXPECT_EQ(at("1e-3", 0), Quaternion(1e-3));
  EXPECT_EQ(at("t", 2.5), Quaternion(2.5));
}

TEST(TimeExpr, ProductsKeepOrder) {
  EXPECT_EQ(at("i*j", 0), Quaternion::unit_k());
  EXPECT_EQ(at("j*i", 0), -Quaternion::unit_k());
  // x / y = x * inverse(y).
  EXPECT_LT(oracle::dist(at("i/j", 0), Quaternion::unit_i() * inverse(Quaternion::unit_j())), 1e-15);
}

TEST(TimeExpr, PrecedenceAndUnaryMinus) {
  EXPECT_EQ(at("1 + 2*3", 0), Quaternion(7));
  EXPECT_EQ(at("(1 + 2)*3", 0), Quaternion(9));
  EXPECT_EQ(at("2^3", 0), Quaternion(8));
  EXPECT_EQ(at("-t^2", 3), Quaternion(9));  // unary minus binds to the atom
  EXPECT_EQ(at("0 - t^2", 3), Quaternion(-9));
  EXPECT_EQ(at("i^2", 0), Quaternion(-1));
}

TEST(TimeExpr, Functions) {
  const double t = 0.7;
  EXPECT_NEAR(at("cos(2*t)", t).w, std::cos(2 * t), 1e-15);
  EXPECT_NEAR(at("sin(t)^2 + cos(t)^2", t).w, 1.0, 1e-15);
  EXPECT_LT(oracle::dist(at("exp(2*i*t)*j", t), qexp(Quaternion(0, 2 * t)) * Quaternion::unit_j()), 1e-15);
  EXPECT_LT(oracle::dist(at("exp(i + j)", 0), oracle::series_exp(Quaternion(0, 1, 1))), 1e-13);
}

TEST(TimeExpr, Dependencies) {
  EXPECT_TRUE(parse("cos(t)").depends_on_time());
  EXPECT_FALSE(parse("1 + i").depends_on_time());
  ParseOptions opt;
  opt.allow_parameter = true;
  const TimeExpr e = parse("p + j*cos(2*t)", opt);
  EXPECT_TRUE(e.depends_on_parameter());
  EXPECT_EQ(code_of([&] { e.eval(0); }), ErrorCode::InvalidArgument);
  const TimeExpr s = e.substitute_parameter(2.0);
  EXPECT_FALSE(s.depends_on_parameter());
  EXPECT_EQ(s.eval(0), Quaternion(2, 0, 1));
}

TEST(TimeExpr, ParameterRequiresOptIn) {
  EXPECT_EQ(code_of([] { parse("p + 1"); }), ErrorCode::UnknownIdentifier);
}

TEST(TimeExpr, SyntaxErrorsCarryOffsets) {
  try {
    parse("1 +* 2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    ASSERT_TRUE(e.offset().has_value());
    EXPECT_EQ(*e.offset(), 3u);
  }
  try {
    parse("cos(t) + foo");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownIdentifier);
    EXPECT_EQ(*e.offset(), 9u);
  }
  EXPECT_EQ(code_of([] { parse("(1 + t"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse(""); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse("2 t"); }), ErrorCode::SyntaxError);  // no implicit product
}

TEST(TimeExpr, EvaluationErrors) {
  EXPECT_EQ(code_of([] { at("1/(t - 1)", 1.0); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { at("cos(i)", 0.0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { at("sin(j*t)", 1.0); }), ErrorCode::DomainError);
}

TEST(TimeExpr, RenderRoundTrip) {
  const char* sources[] = {"2 + j*cos(2*t)^2 + k*sin(2*t)", "-1 + j*exp(cos(2*t)) + k*sin(2*t)",
                           "exp(2*j*t)*exp(-k*sin(2*t))", "i/2 - 1", "-t^2 - (-3.25e-7)",
                           "(1 + i)/(2 - k)*t"};
  for (const char* src : sources) {
    const TimeExpr e = parse(src);
    const TimeExpr back = parse(e.render());
    for (double t : {0.0, 0.3, 1.7, -2.2}) {
      EXPECT_EQ(e.eval(t), back.eval(t)) << src << " -> " << e.render();
    }
  }
}

TEST(MatrixSpec, ParsesAndEvaluates) {
  const MatrixSpec spec = MatrixSpec::parse(2, {"1", "t", "0", "i*t"}, 2.0);
  EXPECT_TRUE(spec.depends_on_time());
  const QMatrix m = spec.eval(3.0);
  EXPECT_EQ(m(0, 1), Quaternion(3));
  EXPECT_EQ(m(1, 1), Quaternion(0, 3));
  EXPECT_DOUBLE_EQ(spec.re_trace(3.0), 1.0);
}

TEST(MatrixSpec, ErrorsNameTheEntry) {
  try {
    MatrixSpec::parse(2, {"1", "2", "3", "4 +"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_NE(std::string(e.what()).find("(2,2)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(MatrixSpec::parse(2, {"1", "2", "3"}), Error);
}

TEST(MatrixSpec, ConstantRoundTrip) {
  oracle::Random rng(40);
  const QMatrix a = rng.matrix(3);
  const MatrixSpec spec = MatrixSpec::constant(a);
  EXPECT_FALSE(spec.depends_on_time());
  EXPECT_EQ(spec.eval(1.0), a);
}
