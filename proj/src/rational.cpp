#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace bohrwave {

namespace mp = boost::multiprecision;

namespace {

[[noreturn]] void bad_number(std::string_view text) {
    throw Error(ErrorCode::invalid_argument, "not an exact number: '" + std::string(text) + "'");
}

mp::cpp_int pow10(int exponent) {
    mp::cpp_int value = 1;
    for (int i = 0; i < exponent; ++i) value *= 10;
    return value;
}

// Decimal literal with optional sign, fraction and exponent.
Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    if (s.empty()) bad_number(text);
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    mp::cpp_int digits = 0;
    int fraction_digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_point) ++fraction_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) bad_number(text);
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') bad_number(text);
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        if (i == s.size()) bad_number(text);
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad_number(text);
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 4000) bad_number(text);
        }
        if (exp_negative) exponent = -exponent;
    }
    const long scale = exponent - fraction_digits;
    Rational value = scale >= 0 ? Rational(digits * pow10(static_cast<int>(scale)))
                                : Rational(digits, pow10(static_cast<int>(-scale)));
    return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    const Rational num = parse_decimal(trim(s.substr(0, slash)));
    const Rational den = parse_decimal(trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator in '" + std::string(text) + "'");
    return num / den;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
    return Rational(mp::cpp_int(num), mp::cpp_int(den));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

Rational distance_to_integer(const Rational& q) {
    const mp::cpp_int& num = mp::numerator(q);
    const mp::cpp_int& den = mp::denominator(q);
    mp::cpp_int floor_part = num / den;
    if (num < 0 && floor_part * den != num) floor_part -= 1;
    const Rational frac = q - Rational(floor_part);
    const Rational other = Rational(1) - frac;
    return frac < other ? frac : other;
}

std::string to_string(const Rational& q) {
    if (is_integer(q)) return mp::numerator(q).str();
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

std::string to_decimal_string(const Rational& q) {
    mp::cpp_int den = mp::denominator(q);
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return to_string(q);
    const int places = std::max(twos, fives);
    if (places == 0) return mp::numerator(q).str();
    const mp::cpp_int scaled = mp::numerator(q * Rational(pow10(places)));
    const bool negative = scaled < 0;
    std::string digits = (negative ? mp::cpp_int(-scaled) : scaled).str();
    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return negative ? "-" + digits : digits;
}

}  // namespace bohrwave
