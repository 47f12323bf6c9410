#include "krull/rational.hpp"

#include <cctype>

namespace krull {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw spec_error("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num, den;
        if (num.set_str(text.substr(0, slash), 10) != 0 ||
            den.set_str(text.substr(slash + 1), 10) != 0)
            throw spec_error("bad rational literal: " + text);
        return make_rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Int num;
        if (num.set_str(text, 10) != 0)
            throw spec_error("bad rational literal: " + text);
        return make_rat(num, Int(1));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
        throw spec_error("bad decimal literal: " + text);
    Int num;
    if (num.set_str(digits, 10) != 0)
        throw spec_error("bad decimal literal: " + text);
    Int den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rat(num, den);
}

Rat rat_pow(const Rat& base, std::uint64_t e) {
    Rat acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Int int_pow(const Int& base, std::uint64_t e) {
    Int acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

} // namespace krull
