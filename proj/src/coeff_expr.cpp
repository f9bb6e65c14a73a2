#include "sggcalc/coeff_expr.hpp"

#include <cctype>

namespace sgg {

namespace {
std::shared_ptr<const CoeffExpr> share(CoeffExpr e) { return std::make_shared<const CoeffExpr>(std::move(e)); }
}  // namespace

class ExprParser {
  public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    CoeffExpr parse() {
        CoeffExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("coefficient syntax error at position " + std::to_string(pos_) + ": " + what + " in '" +
                          s_ + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) pos_++;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    CoeffExpr expr() {
        bool neg = false;
        skip_ws();
        if (eat('+')) {
        } else if (eat('-')) {
            neg = true;
        }
        CoeffExpr e = term();
        if (neg) {
            CoeffExpr m(CoeffExpr::Kind::neg);
            m.lhs_ = share(std::move(e));
            e = std::move(m);
        }
        while (true) {
            skip_ws();
            if (eat('+')) {
                CoeffExpr r = term();
                CoeffExpr m(CoeffExpr::Kind::add);
                m.lhs_ = share(std::move(e));
                m.rhs_ = share(std::move(r));
                e = std::move(m);
            } else if (eat('-')) {
                CoeffExpr r = term();
                CoeffExpr m(CoeffExpr::Kind::sub);
                m.lhs_ = share(std::move(e));
                m.rhs_ = share(std::move(r));
                e = std::move(m);
            } else {
                return e;
            }
        }
    }

    CoeffExpr term() {
        CoeffExpr e = factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                CoeffExpr r = factor();
                CoeffExpr m(CoeffExpr::Kind::mul);
                m.lhs_ = share(std::move(e));
                m.rhs_ = share(std::move(r));
                e = std::move(m);
            } else if (eat('/')) {
                CoeffExpr r = factor();
                CoeffExpr m(CoeffExpr::Kind::div);
                m.lhs_ = share(std::move(e));
                m.rhs_ = share(std::move(r));
                e = std::move(m);
            } else {
                return e;
            }
        }
    }

    CoeffExpr factor() {
        skip_ws();
        if (eat('(')) {
            CoeffExpr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat_word("conj(t)")) return CoeffExpr(CoeffExpr::Kind::conj_t);
        if (pos_ < s_.size() && s_[pos_] == 't') {
            pos_++;
            return CoeffExpr(CoeffExpr::Kind::var_t);
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            pos_++;
            CoeffExpr e(CoeffExpr::Kind::lit);
            e.value_ = GaussianRational::i();
            return e;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) pos_++;
            CoeffExpr e(CoeffExpr::Kind::lit);
            e.value_ = GaussianRational(Rational(Int(s_.substr(start, pos_ - start))));
            return e;
        }
        fail("expected a factor");
    }
};

CoeffExpr CoeffExpr::parse(const std::string& text) { return ExprParser(text).parse(); }

CoeffExpr CoeffExpr::constant(const GaussianRational& v) {
    CoeffExpr e(Kind::lit);
    e.value_ = v;
    return e;
}

GaussianRational CoeffExpr::eval(const std::optional<GaussianRational>& t) const {
    switch (kind_) {
        case Kind::lit: return value_;
        case Kind::var_t:
        case Kind::conj_t:
            if (!t) throw math_error("parameter t is not allowed in this context");
            return kind_ == Kind::var_t ? *t : t->conj();
        case Kind::neg: return -lhs_->eval(t);
        case Kind::add: return lhs_->eval(t) + rhs_->eval(t);
        case Kind::sub: return lhs_->eval(t) - rhs_->eval(t);
        case Kind::mul: return lhs_->eval(t) * rhs_->eval(t);
        case Kind::div: {
            GaussianRational d = rhs_->eval(t);
            if (d.is_zero()) throw math_error("pole: coefficient denominator vanishes at the given t");
            return lhs_->eval(t) / d;
        }
    }
    throw math_error("corrupt expression tree");
}

bool CoeffExpr::uses_t() const {
    switch (kind_) {
        case Kind::lit: return false;
        case Kind::var_t:
        case Kind::conj_t: return true;
        case Kind::neg: return lhs_->uses_t();
        default: return lhs_->uses_t() || rhs_->uses_t();
    }
}

std::string CoeffExpr::str() const { return str_prec(0); }

std::string CoeffExpr::str_prec(int parent) const {
    auto wrap = [&](int level, const std::string& body) {
        return parent > level ? "(" + body + ")" : body;
    };
    switch (kind_) {
        case Kind::lit: {
            std::string v = render_scalar(value_);
            bool compound = v.find_first_of("+-", 1) != std::string::npos || v[0] == '-';
            return compound ? wrap(3, "(" + v + ")") : v;
        }
        case Kind::var_t: return "t";
        case Kind::conj_t: return "conj(t)";
        case Kind::neg: return wrap(1, "-" + lhs_->str_prec(2));
        case Kind::add: return wrap(1, lhs_->str_prec(1) + "+" + rhs_->str_prec(1));
        case Kind::sub: return wrap(1, lhs_->str_prec(1) + "-" + rhs_->str_prec(2));
        case Kind::mul: return wrap(2, lhs_->str_prec(2) + "*" + rhs_->str_prec(2));
        case Kind::div: return wrap(2, lhs_->str_prec(2) + "/" + rhs_->str_prec(3));
    }
    throw math_error("corrupt expression tree");
}

}  // namespace sgg
