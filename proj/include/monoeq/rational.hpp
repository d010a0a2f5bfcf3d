#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "monoeq/error.hpp"

namespace monoeq {

using Rational = mpq_class;

// Lowest terms, denominator omitted when it is 1.
inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false;
    if (start == s.size()) throw Error(Errc::ParseError, "malformed rational '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (slash || i == start || i + 1 == s.size())
                throw Error(Errc::ParseError, "malformed rational '" + s + "'");
            slash = true;
        } else if (c < '0' || c > '9') {
            throw Error(Errc::ParseError, "malformed rational '" + s + "'");
        }
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error(Errc::ParseError, "malformed rational '" + s + "'");
    if (q.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace monoeq
