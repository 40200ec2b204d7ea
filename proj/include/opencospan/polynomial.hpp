#pragma once

// Sparse multivariate polynomials with real coefficients, and algebraic
// vector fields built from them (one polynomial per coordinate).
//
// Canonical form: terms sorted by exponent vector (lexicographic), exponent
// vectors distinct, coefficients with magnitude <= 1e-12 dropped. Every
// public constructor and operation returns canonical values, so exponent
// structure can be compared exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "finset.hpp"

namespace opencospan
{

inline constexpr double drop_tolerance = 1e-12;
inline constexpr double coefficient_rel_tolerance = 1e-9;

struct Term {
    double coefficient = 0.0;
    std::vector<std::uint32_t> exponents;

    friend bool operator==(const Term &, const Term &) = default;
};

inline bool coefficients_match(double a, double b, double rel = coefficient_rel_tolerance)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t variables) : m_variables(variables) {}
    Polynomial(std::size_t variables, std::vector<Term> terms) : m_variables(variables), m_terms(std::move(terms))
    {
        for (const auto &t : m_terms) {
            if (t.exponents.size() != m_variables) {
                throw std::invalid_argument("polynomial term has " + std::to_string(t.exponents.size())
                                            + " exponents, expected " + std::to_string(m_variables));
            }
        }
        canonicalize();
    }

    static Polynomial constant(std::size_t variables, double c)
    {
        return Polynomial(variables, {Term{c, std::vector<std::uint32_t>(variables, 0)}});
    }
    static Polynomial variable(std::size_t variables, std::size_t i, double c = 1.0)
    {
        std::vector<std::uint32_t> e(variables, 0);
        e.at(i) = 1;
        return Polynomial(variables, {Term{c, std::move(e)}});
    }
    static Polynomial monomial(double c, std::vector<std::uint32_t> exponents)
    {
        auto n = exponents.size();
        return Polynomial(n, {Term{c, std::move(exponents)}});
    }

    std::size_t variables() const
    {
        return m_variables;
    }
    const std::vector<Term> &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::uint32_t degree() const
    {
        std::uint32_t d = 0;
        for (const auto &t : m_terms) {
            std::uint32_t s = 0;
            for (auto e : t.exponents) {
                s += e;
            }
            d = std::max(d, s);
        }
        return d;
    }

    double evaluate(std::span<const double> x) const
    {
        if (x.size() != m_variables) {
            throw DimensionError("polynomial in " + std::to_string(m_variables) + " variables evaluated at a point of "
                                 + std::to_string(x.size()) + " coordinates");
        }
        double acc = 0.0;
        for (const auto &t : m_terms) {
            double m = t.coefficient;
            for (std::size_t i = 0; i < m_variables; ++i) {
                for (std::uint32_t k = 0; k < t.exponents[i]; ++k) {
                    m *= x[i];
                }
            }
            acc += m;
        }
        return acc;
    }

    // Substitute x_σ := x_{f(σ)}; the result lives in f.cod variables.
    Polynomial substitute(const FinFunction &f) const
    {
        if (f.dom_size() != m_variables) {
            throw CompositionError("substitute: map domain " + std::to_string(f.dom_size()) + " != "
                                   + std::to_string(m_variables) + " variables");
        }
        std::vector<Term> out;
        out.reserve(m_terms.size());
        for (const auto &t : m_terms) {
            std::vector<std::uint32_t> e(f.cod_size(), 0);
            for (std::size_t i = 0; i < m_variables; ++i) {
                e[f(i)] += t.exponents[i];
            }
            out.push_back({t.coefficient, std::move(e)});
        }
        return Polynomial(f.cod_size(), std::move(out));
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        require_same_ring(o);
        m_terms.insert(m_terms.end(), o.m_terms.begin(), o.m_terms.end());
        canonicalize();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b)
    {
        return a + (-1.0) * b;
    }
    friend Polynomial operator*(double c, Polynomial p)
    {
        for (auto &t : p.m_terms) {
            t.coefficient *= c;
        }
        p.canonicalize();
        return p;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        a.require_same_ring(b);
        std::vector<Term> out;
        out.reserve(a.m_terms.size() * b.m_terms.size());
        for (const auto &s : a.m_terms) {
            for (const auto &t : b.m_terms) {
                std::vector<std::uint32_t> e(a.m_variables);
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = s.exponents[i] + t.exponents[i];
                }
                out.push_back({s.coefficient * t.coefficient, std::move(e)});
            }
        }
        return Polynomial(a.m_variables, std::move(out));
    }

    // Place the variables at an offset inside a larger ring of `total` variables.
    Polynomial embedded(std::size_t offset, std::size_t total) const
    {
        std::vector<std::size_t> t(m_variables);
        for (std::size_t i = 0; i < m_variables; ++i) {
            t[i] = offset + i;
        }
        return substitute(FinFunction(total, std::move(t)));
    }

    // Exact structural equality (exponents and bit-identical coefficients).
    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    // Same exponent set, coefficients equal within a relative tolerance.
    friend bool approx_equal(const Polynomial &a, const Polynomial &b, double rel = coefficient_rel_tolerance)
    {
        if (a.m_variables != b.m_variables || a.m_terms.size() != b.m_terms.size()) {
            return false;
        }
        for (std::size_t k = 0; k < a.m_terms.size(); ++k) {
            if (a.m_terms[k].exponents != b.m_terms[k].exponents
                || !coefficients_match(a.m_terms[k].coefficient, b.m_terms[k].coefficient, rel)) {
                return false;
            }
        }
        return true;
    }

private:
    void require_same_ring(const Polynomial &o) const
    {
        if (o.m_variables != m_variables) {
            throw DimensionError("polynomials over " + std::to_string(m_variables) + " and "
                                 + std::to_string(o.m_variables) + " variables");
        }
    }

    void canonicalize()
    {
        std::stable_sort(m_terms.begin(), m_terms.end(),
                         [](const Term &a, const Term &b) { return a.exponents < b.exponents; });
        std::vector<Term> merged;
        merged.reserve(m_terms.size());
        for (auto &t : m_terms) {
            if (!merged.empty() && merged.back().exponents == t.exponents) {
                merged.back().coefficient += t.coefficient;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const Term &t) { return !(std::abs(t.coefficient) > drop_tolerance); });
        m_terms = std::move(merged);
    }

    std::size_t m_variables = 0;
    std::vector<Term> m_terms;
};

// An algebraic vector field on ℝ^S: one polynomial in |S| variables per place.
class PolyVectorField
{
public:
    PolyVectorField() = default;
    PolyVectorField(std::size_t over, std::vector<Polynomial> components)
        : m_over(over), m_components(std::move(components))
    {
        if (m_components.size() != m_over) {
            throw std::invalid_argument("vector field over " + std::to_string(m_over) + " places has "
                                        + std::to_string(m_components.size()) + " components");
        }
        for (const auto &p : m_components) {
            if (p.variables() != m_over) {
                throw std::invalid_argument("vector field component is not a polynomial in "
                                            + std::to_string(m_over) + " variables");
            }
        }
    }

    static PolyVectorField zero(std::size_t over)
    {
        return PolyVectorField(over, std::vector<Polynomial>(over, Polynomial(over)));
    }

    FinSetOb over() const
    {
        return {m_over};
    }
    std::size_t size() const
    {
        return m_over;
    }
    const std::vector<Polynomial> &components() const
    {
        return m_components;
    }
    const Polynomial &operator[](std::size_t i) const
    {
        return m_components[i];
    }
    bool is_zero() const
    {
        return std::all_of(m_components.begin(), m_components.end(), [](const auto &p) { return p.is_zero(); });
    }

    std::vector<double> evaluate(std::span<const double> c) const
    {
        if (c.size() != m_over) {
            throw DimensionError("vector field over " + std::to_string(m_over) + " places evaluated at a state of "
                                 + std::to_string(c.size()) + " coordinates");
        }
        std::vector<double> out(m_over);
        for (std::size_t i = 0; i < m_over; ++i) {
            out[i] = m_components[i].evaluate(c);
        }
        return out;
    }

    friend PolyVectorField operator+(const PolyVectorField &a, const PolyVectorField &b)
    {
        if (a.m_over != b.m_over) {
            throw DimensionError("adding vector fields over " + std::to_string(a.m_over) + " and "
                                 + std::to_string(b.m_over) + " places");
        }
        std::vector<Polynomial> out(a.m_components);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += b.m_components[i];
        }
        return PolyVectorField(a.m_over, std::move(out));
    }

    friend bool operator==(const PolyVectorField &, const PolyVectorField &) = default;

    friend bool approx_equal(const PolyVectorField &a, const PolyVectorField &b,
                             double rel = coefficient_rel_tolerance)
    {
        if (a.m_over != b.m_over) {
            return false;
        }
        for (std::size_t i = 0; i < a.m_over; ++i) {
            if (!approx_equal(a.m_components[i], b.m_components[i], rel)) {
                return false;
            }
        }
        return true;
    }

private:
    std::size_t m_over = 0;
    std::vector<Polynomial> m_components;
};

// D(f)(v) = f_* ∘ v ∘ f^*: substitute along f, then sum components over fibres.
inline PolyVectorField pushforward_field(const FinFunction &f, const PolyVectorField &v)
{
    if (f.dom_size() != v.size()) {
        throw CompositionError("pushforward_field: map domain " + std::to_string(f.dom_size())
                               + " does not match the field's " + std::to_string(v.size()) + " places");
    }
    std::vector<Polynomial> out(f.cod_size(), Polynomial(f.cod_size()));
    for (std::size_t s = 0; s < v.size(); ++s) {
        out[f(s)] += v[s].substitute(f);
    }
    return PolyVectorField(f.cod_size(), std::move(out));
}

// v ⊕ w on ℝ^{S+S'}: the fields act independently on the two blocks.
inline PolyVectorField direct_sum(const PolyVectorField &v, const PolyVectorField &w)
{
    const auto n = v.size() + w.size();
    std::vector<Polynomial> out;
    out.reserve(n);
    for (const auto &p : v.components()) {
        out.push_back(p.embedded(0, n));
    }
    for (const auto &p : w.components()) {
        out.push_back(p.embedded(v.size(), n));
    }
    return PolyVectorField(n, std::move(out));
}

} // namespace opencospan
