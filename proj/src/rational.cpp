#include "chainstab/rational.hpp"

namespace chainstab {

namespace {

// Replaces U+2212 (e2 88 92) with '-' and strips whitespace.
std::string sanitize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = text[i];
        if (c == 0xe2 && i + 2 < text.size() &&
            (unsigned char)text[i + 1] == 0x88 && (unsigned char)text[i + 2] == 0x92) {
            out.push_back('-');
            i += 2;
        } else if (!std::isspace(c)) {
            out.push_back((char)c);
        }
    }
    return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::string s = sanitize(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

std::string rational_to_string(const Rational& x) {
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string integer_to_string(const Integer& x) { return x.str(); }

Integer parse_integer(const std::string& text) {
    const std::string s = sanitize(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    try {
        return Integer(s);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed integer literal: " + text);
    }
}

std::string complex_to_string(const ComplexQ& z) {
    std::string s = rational_to_string(z.re);
    if (z.im >= 0) s += "+";
    s += rational_to_string(z.im) + "i";
    return s;
}

}  // namespace chainstab
