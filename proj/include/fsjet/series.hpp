#pragma once

#include <fsjet/linalg.hpp>

#include <map>
#include <span>
#include <vector>

namespace fsjet
{

// Exponent vector alpha of a monomial x^alpha, one entry per variable.
using Exponent = std::vector<int>;

int total_degree(const Exponent &alpha);

// Scalar multivariate power series in n variables truncated at a fixed total
// degree. Terms beyond the truncation degree are discarded on insertion.
class Series
{
public:
    Series(int nvars, int max_degree);

    static Series constant(int nvars, int max_degree, cplx c);
    static Series variable(int nvars, int max_degree, int i);
    // sum_i c_i x_i
    static Series linear_form(int nvars, int max_degree, const CVector &c);

    int nvars() const noexcept { return nvars_; }
    int max_degree() const noexcept { return max_degree_; }
    const std::map<Exponent, cplx> &terms() const noexcept { return terms_; }

    void add_term(const Exponent &alpha, cplx c);
    cplx coeff(const Exponent &alpha) const;
    cplx constant_term() const;
    // Lowest total degree carrying a nonzero term, -1 for the zero series.
    int min_degree() const;

    Series &operator+=(const Series &o);
    Series &operator-=(const Series &o);
    Series &operator*=(cplx c);

    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    friend Series operator*(cplx c, Series a) { return a *= c; }
    friend Series operator*(const Series &a, const Series &b);

    Series derivative(int i) const;
    Series homogeneous_part(int d) const;
    Series truncated(int d) const;
    cplx eval(const CVector &x) const;

private:
    int nvars_;
    int max_degree_;
    std::map<Exponent, cplx> terms_;
};

// Component-wise vector-valued series.
using VecSeries = std::vector<Series>;

// sum_k c_k u^k for a series u without constant term.
Series compose_univariate(std::span<const cplx> coeffs, const Series &u);

// Coefficients of (1 + a_1 w + a_2 w^2 + ...)^alpha up to w^(terms-1).
// a[0] must be 1.
std::vector<cplx> series_power(std::span<const cplx> a, double alpha, int terms);

} // namespace fsjet
