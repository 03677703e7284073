#pragma once

#include <fsjet/linalg.hpp>
#include <fsjet/series.hpp>

#include <map>
#include <span>
#include <vector>

namespace fsjet
{

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-10;

    bool close(double diff, double scale) const { return diff <= abs + rel * scale; }
};

// Homogeneous polynomial P(x) = T[x, ..., x] of degree k from C^n to C^m,
// stored as the symmetric k-linear tensor T.
//
// A key is a sorted multi-index (i_1 <= ... <= i_k) with 0-based entries and
// maps to the tensor entry T[e_{i_1}, ..., e_{i_k}]. Absent keys are zero and
// exact zeros are never stored. When P comes from a mapping f this is
// T = (1/k!) D^k f(0).
class HomPoly
{
public:
    using Key = std::vector<int>;

    HomPoly(int degree, int domain_dim, int codomain_dim);

    int degree() const noexcept { return degree_; }
    int domain_dim() const noexcept { return n_; }
    int codomain_dim() const noexcept { return m_; }
    const std::map<Key, CVector> &coeffs() const noexcept { return coeffs_; }

    // Keys are sorted on insertion; a zero value erases the entry.
    void set_coeff(Key key, CVector value);
    void add_to_coeff(Key key, const CVector &value);
    CVector coeff(Key key) const;

    bool is_zero() const noexcept { return coeffs_.empty(); }
    double max_coeff_abs() const;

    // T[x, ..., x]
    CVector eval(const CVector &x) const;
    // T[x_1, ..., x_k]. Arguments are put in a canonical order first, so any
    // permutation of the same tuple yields bit-identical output.
    CVector multilinear_eval(std::span<const CVector> args) const;

    HomPoly &operator+=(const HomPoly &o);
    HomPoly &operator-=(const HomPoly &o);
    HomPoly &operator*=(cplx c);
    friend HomPoly operator+(HomPoly a, const HomPoly &b) { return a += b; }
    friend HomPoly operator-(HomPoly a, const HomPoly &b) { return a -= b; }
    friend HomPoly operator*(cplx c, HomPoly a) { return a *= c; }

    bool approx_equal(const HomPoly &o, Tolerance tol = {}) const;

    // Monomial expansion (one scalar series per output component).
    VecSeries to_series(int max_degree) const;
    // Degree-k homogeneous part of a vector series, as a symmetric tensor.
    static HomPoly from_series(const VecSeries &s, int degree);

private:
    void check_key(const Key &key) const;

    int degree_;
    int n_;
    int m_;
    std::map<Key, CVector> coeffs_;
};

// Number of distinct orderings of a sorted multi-index, k! / prod(mult_i!).
double multiplicity(const HomPoly::Key &key);
HomPoly::Key key_from_exponent(const Exponent &alpha);
Exponent exponent_from_key(const HomPoly::Key &key, int n);

// ||S[x1,x2] - (S[(x1+x2)^2] - S[(x1-x2)^2]) / 4|| for a degree-2 tensor.
double polarization_check(const HomPoly &p, const CVector &x1, const CVector &x2);

// Substitutes the vector series y (one component per domain variable of P)
// into P, truncating at the common truncation degree of y.
VecSeries substitute(const HomPoly &p, const VecSeries &y);

// The homogeneous polynomial x -> P[x, ..., x, Q(x)] of degree
// (deg P - 1) + deg Q.
HomPoly contract_last(const HomPoly &p, const HomPoly &q);

} // namespace fsjet
