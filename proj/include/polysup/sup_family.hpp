/**
 * Finite families {f_t} of polyhedral convex functions and their supremum
 * f = max_t f_t, with the active index sets and the weight choices attached
 * to the non-active functions.
 */
#ifndef POLYSUP_SUP_FAMILY_HPP
#define POLYSUP_SUP_FAMILY_HPP

#include <string>
#include <vector>

#include "polysup/convex_function.hpp"

namespace polysup {

class SupFamily
{
    public:
        /** Ids default to "1", "2", ... when omitted. */
        explicit SupFamily(std::vector<ConvexFunction> functions, std::vector<std::string> ids = {});

        Index dim() const { return functions_.front().dim(); }
        std::size_t size() const { return functions_.size(); }
        const ConvexFunction& operator[](std::size_t t) const { return functions_[t]; }
        const std::string& id(std::size_t t) const { return ids_[t]; }
        const std::vector<ConvexFunction>& functions() const { return functions_; }
        const std::vector<std::string>& ids() const { return ids_; }

    private:
        std::vector<ConvexFunction> functions_;
        std::vector<std::string> ids_;
};

/** max_t f_t as one function; DomainError when the domains do not meet. */
ConvexFunction collapse(const SupFamily& F);

/** Intersection of the domains of the family. */
Polyhedron common_domain(const SupFamily& F);

Extended eval(const SupFamily& F, const VectorXr& x);

struct ActiveSets
{
    std::vector<std::size_t> active;       // f_t(x) = f(x)
    std::vector<std::size_t> eps_active;   // f_t(x) >= f(x) - eps
    std::vector<std::size_t> eps_plus;     // eps_active together with f_t(x) >= 0
    Rational value;                        // f(x)
    std::vector<Rational> values;          // f_t(x) for every t
};

ActiveSets active_sets(const SupFamily& F, const VectorXr& x, const Rational& eps);

bool contains_index(const std::vector<std::size_t>& set, std::size_t t);

enum class WeightRole { Epsilon, Rho };

struct Weights
{
    WeightRole role = WeightRole::Epsilon;
    std::vector<Rational> values;

    static Weights ones(WeightRole role, std::size_t size);
    /** InputError unless there is one value per function, each in (0, 1]. */
    void validate(std::size_t size) const;
};

/** 1 on T_eps(x), -eps / (2 f_t(x) - 2 f(x) + eps) elsewhere. */
Weights weights_cp1(const SupFamily& F, const VectorXr& x, const Rational& eps);

/** 1 on T(x), eps / (2 f(x) - 2 f_t(x) + eps) elsewhere. */
Weights rho_corr(const SupFamily& F, const VectorXr& x, const Rational& eps);

}   // namespace polysup

#endif
