#include "rlldpc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rlldpc {

namespace {

std::int64_t parse_int(const std::string& s, const std::string& full) {
    if (s.empty()) throw std::invalid_argument("bad rational: '" + full + "'");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: '" + full + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad rational: '" + full + "'");
    return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = parse_int(text.substr(0, slash), text);
        std::int64_t den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("bad rational: '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_int(text, text));

    bool negative = !text.empty() && text[0] == '-';
    std::string integral = text.substr(0, dot);
    std::string fraction = text.substr(dot + 1);
    if (fraction.size() > 18) throw std::invalid_argument("too many decimals: '" + text + "'");
    for (char c : fraction)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad rational: '" + text + "'");
    if (integral.empty() || integral == "-") integral += "0";

    std::int64_t whole = parse_int(integral, text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fraction.size(); ++i) den *= 10;
    std::int64_t frac = fraction.empty() ? 0 : parse_int(fraction, text);
    Rational r = Rational(whole) + Rational(negative ? -frac : frac, den);
    return r;
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t round_rational(const Rational& r) {
    std::int64_t n = r.numerator();
    std::int64_t d = r.denominator();  // boost keeps d > 0
    if (n >= 0) return (2 * n + d) / (2 * d);
    return -((-2 * n + d) / (2 * d));
}

}  // namespace rlldpc
