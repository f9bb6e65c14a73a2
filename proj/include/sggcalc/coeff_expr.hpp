#pragma once

#include <memory>
#include <optional>
#include <string>

#include "sggcalc/rational.hpp"

namespace sgg {

// Rational expression in t and conj(t) over Q(i). Immutable tree; parsing
// follows
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := literal | 't' | 'conj(t)' | 'i' | '(' expr ')'
// with integer literals (a '/' between literals is the division operator,
// which evaluates identically to a rational literal).
class CoeffExpr {
  public:
    static CoeffExpr parse(const std::string& text);
    static CoeffExpr constant(const GaussianRational& v);

    // Evaluates at the given parameter value; throws math_error on division
    // by zero and when t appears but no value was supplied.
    GaussianRational eval(const std::optional<GaussianRational>& t) const;
    bool uses_t() const;
    std::string str() const;

  private:
    enum class Kind { lit, var_t, conj_t, neg, add, sub, mul, div };
    CoeffExpr(Kind k) : kind_(k) {}

    Kind kind_ = Kind::lit;
    GaussianRational value_;
    std::shared_ptr<const CoeffExpr> lhs_, rhs_;

    std::string str_prec(int parent) const;
    friend class ExprParser;
};

}  // namespace sgg
