/**
 * Exact scalar, vector and matrix types shared by every module.
 *
 * All arithmetic runs over GMP rationals wrapped by Boost.Multiprecision;
 * dense containers are ordinary Eigen matrices with that scalar. Nothing in
 * this library ever touches floating point.
 */
#ifndef POLYSUP_RATIONAL_HPP
#define POLYSUP_RATIONAL_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace polysup {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXr = VectorX<Rational>;
using MatrixXr = MatrixX<Rational>;

/** Malformed input: bad rationals, dimension mismatches, schema violations. */
class InputError : public std::runtime_error
{
    public:
        explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/** An operation was called outside the set where it is defined. */
class DomainError : public std::runtime_error
{
    public:
        explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/** A configured size cap (e.g. intermediate generators) was exceeded. */
class ResourceError : public std::runtime_error
{
    public:
        explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Parses "p", "-p" or "p/q" with decimal integers. The result is always in
 * canonical form; a zero denominator or any stray character is an InputError.
 */
Rational parse_rational(std::string_view text);

/** "p/q", or "p" when q = 1. */
std::string to_string(const Rational& value);

/** The positive multiple of v with coprime integer entries (zero stays zero). */
VectorXr primitive(const VectorXr& v);

bool is_zero(const VectorXr& v);

VectorXr zero_vector(Index n);

VectorXr make_vector(std::initializer_list<Rational> entries);

/** Lexicographic order, used wherever a deterministic ordering of vectors is needed. */
bool lex_less(const VectorXr& a, const VectorXr& b);

void require_dimension(Index expected, Index actual, const std::string& what);

/** A rational extended by the two infinities, for support functions and evaluations. */
struct Extended
{
    enum class Kind { Finite, PlusInfinity, MinusInfinity };

    Kind kind = Kind::Finite;
    Rational value = 0;

    static Extended finite(Rational v) { return {Kind::Finite, std::move(v)}; }
    static Extended plus_infinity() { return {Kind::PlusInfinity, 0}; }
    static Extended minus_infinity() { return {Kind::MinusInfinity, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool operator==(const Extended& other) const
    {
        return kind == other.kind && (kind != Kind::Finite || value == other.value);
    }
};

std::string to_string(const Extended& value);

}   // namespace polysup

#endif
