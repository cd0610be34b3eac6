#include "polysup/rational.hpp"

#include <algorithm>
#include <cctype>

namespace polysup {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}   // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw InputError("malformed rational \"" + std::string(text) + "\"");
    const Integer p{std::string(num)};
    const Integer q{std::string(den)};
    if (q == 0)
        throw InputError("zero denominator in rational \"" + std::string(text) + "\"");
    Rational r(p, q);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value)
{
    if (denominator(value) == 1)
        return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Extended& value)
{
    switch (value.kind)
    {
        case Extended::Kind::PlusInfinity: return "+inf";
        case Extended::Kind::MinusInfinity: return "-inf";
        default: return to_string(value.value);
    }
}

VectorXr primitive(const VectorXr& v)
{
    Integer lcm_den = 1;
    for (Index i = 0; i < v.size(); ++i)
    {
        if (v(i) != 0)
            lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(v(i))));
    }
    Integer g = 0;
    std::vector<Integer> ints(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i)
    {
        ints[i] = Integer(numerator(v(i))) * (lcm_den / Integer(denominator(v(i))));
        if (ints[i] != 0)
            g = boost::multiprecision::gcd(g, Integer(abs(ints[i])));
    }
    VectorXr out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out(i) = g == 0 ? Rational(0) : Rational(Integer(ints[i] / g));
    return out;
}

bool is_zero(const VectorXr& v)
{
    for (Index i = 0; i < v.size(); ++i)
    {
        if (v(i) != 0)
            return false;
    }
    return true;
}

VectorXr zero_vector(Index n)
{
    return VectorXr::Zero(n);
}

VectorXr make_vector(std::initializer_list<Rational> entries)
{
    VectorXr v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (const auto& e : entries)
        v(i++) = e;
    return v;
}

bool lex_less(const VectorXr& a, const VectorXr& b)
{
    const Index n = std::min(a.size(), b.size());
    for (Index i = 0; i < n; ++i)
    {
        if (a(i) != b(i))
            return a(i) < b(i);
    }
    return a.size() < b.size();
}

void require_dimension(Index expected, Index actual, const std::string& what)
{
    if (expected != actual)
    {
        throw InputError(std::string("dimension mismatch in ") + what + ": expected "
                         + std::to_string(expected) + ", got " + std::to_string(actual));
    }
}

}   // namespace polysup
