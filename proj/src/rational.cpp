#include "sggcalc/rational.hpp"

#include <cctype>

namespace sgg {

std::string render_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::string render_scalar(const GaussianRational& z) {
    if (z.im == 0) return render_rational(z.re);
    std::string imag;
    Rational a = z.im < 0 ? Rational(-z.im) : z.im;
    if (a == 1)
        imag = "i";
    else
        imag = render_rational(a) + "*i";
    if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
    return render_rational(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

namespace {

// Parses digits[/digits] starting at pos; advances pos.
Rational parse_unsigned_rational(const std::string& s, size_t& pos) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
    if (pos == start) throw parse_error("expected digits in scalar '" + s + "' at position " + std::to_string(start));
    Int num(s.substr(start, pos - start));
    Int den(1);
    if (pos < s.size() && s[pos] == '/') {
        pos++;
        size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        if (pos == dstart) throw parse_error("expected denominator in scalar '" + s + "'");
        den = Int(s.substr(dstart, pos - dstart));
        if (den == 0) throw parse_error("zero denominator in scalar '" + s + "'");
    }
    return Rational(num, den);
}

// One signed term: rational, rational*i, or bare i.
GaussianRational parse_term(const std::string& s, size_t& pos) {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        pos++;
    }
    GaussianRational v;
    if (pos < s.size() && s[pos] == 'i') {
        pos++;
        v = GaussianRational::i();
    } else {
        Rational r = parse_unsigned_rational(s, pos);
        if (pos < s.size() && s[pos] == '*') {
            if (pos + 1 >= s.size() || s[pos + 1] != 'i')
                throw parse_error("expected 'i' after '*' in scalar '" + s + "'");
            pos += 2;
            v = GaussianRational(Rational(0), r);
        } else {
            v = GaussianRational(r);
        }
    }
    return neg ? -v : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    GaussianRational z = parse_scalar(text);
    if (z.im != 0) throw parse_error("expected a real rational, got '" + text + "'");
    return z.re;
}

GaussianRational parse_scalar(const std::string& text) {
    size_t pos = 0;
    GaussianRational v = parse_term(text, pos);
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) v += parse_term(text, pos);
    if (pos != text.size()) throw parse_error("trailing characters in scalar '" + text + "'");
    return v;
}

}  // namespace sgg
