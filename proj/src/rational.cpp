#include "polyinv/rational.hpp"

#include "polyinv/errors.hpp"

#include <cctype>

namespace polyinv {

namespace {

bool valid_integer(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer to_integer(std::string_view s) {
    std::string str(s);
    if (!str.empty() && str[0] == '+') str.erase(0, 1);
    return Integer(str, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw Error("malformed rational literal '" + std::string(text) + "'");
    Integer d = to_integer(den);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    Rational q(to_integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace polyinv
