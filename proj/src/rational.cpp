#include "prodiff/rational.hpp"

#include <cctype>

namespace prodiff {

namespace {

bool is_integer_literal(std::string_view text, bool allow_sign)
{
    if (text.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (text[0] == '-' || text[0] == '+')) start = 1;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view text)
{
    if (!text.empty() && text[0] == '+') text.remove_prefix(1);
    return Integer(std::string(text), 10);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw PreconditionError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(std::int64_t num, std::int64_t den)
{
    return make_rational(Integer(std::to_string(num)), Integer(std::to_string(den)));
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text, true)) {
            throw ParseError("invalid rational literal '" + std::string(text) + "'");
        }
        return Rational(parse_integer(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
        throw ParseError("invalid rational literal '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(parse_integer(num), d);
}

std::string to_string(const Rational& value)
{
    // mpq get_str already prints "p" for integers and "p/q" otherwise.
    return value.get_str(10);
}

Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational pow(const Rational& base, unsigned exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    r.canonicalize();
    return r;
}

Rational abs(const Rational& value)
{
    return value < 0 ? Rational(-value) : value;
}

Rational round_up_dyadic(const Rational& value, unsigned bits)
{
    Integer scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Rational scaled = value * scale;
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return make_rational(q, scale);
}

Rational sqrt_upper(const Rational& value, unsigned bits)
{
    if (value < 0) throw PreconditionError("sqrt of negative rational");
    // ceil(sqrt(value * 4^bits)) / 2^bits
    Integer scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * bits);
    Rational scaled = value * scale;
    Integer ceil_val;
    mpz_cdiv_q(ceil_val.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Integer root;
    mpz_sqrt(root.get_mpz_t(), ceil_val.get_mpz_t());
    if (root * root < ceil_val) root += 1;
    Integer half = 1;
    mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), bits);
    return make_rational(root, half);
}

}  // namespace prodiff
