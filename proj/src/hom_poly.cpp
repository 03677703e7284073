#include <fsjet/hom_poly.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fsjet
{

namespace
{

double factorial(int k)
{
    double r = 1.0;
    for (int i = 2; i <= k; ++i) {
        r *= i;
    }
    return r;
}

bool lex_less(const CVector &a, const CVector &b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) {
            return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
            return a[i].imag() < b[i].imag();
        }
    }
    return false;
}

} // namespace

double multiplicity(const HomPoly::Key &key)
{
    double r = factorial(static_cast<int>(key.size()));
    std::size_t i = 0;
    while (i < key.size()) {
        std::size_t j = i;
        while (j < key.size() && key[j] == key[i]) {
            ++j;
        }
        r /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return r;
}

HomPoly::Key key_from_exponent(const Exponent &alpha)
{
    HomPoly::Key key;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        key.insert(key.end(), static_cast<std::size_t>(alpha[i]), static_cast<int>(i));
    }
    return key;
}

Exponent exponent_from_key(const HomPoly::Key &key, int n)
{
    Exponent a(static_cast<std::size_t>(n), 0);
    for (int i : key) {
        a.at(static_cast<std::size_t>(i)) += 1;
    }
    return a;
}

HomPoly::HomPoly(int degree, int domain_dim, int codomain_dim) : degree_(degree), n_(domain_dim), m_(codomain_dim)
{
    if (degree < 1 || domain_dim < 1 || codomain_dim < 1) {
        throw std::invalid_argument("HomPoly: degree and dimensions must be positive");
    }
}

void HomPoly::check_key(const Key &key) const
{
    if (static_cast<int>(key.size()) != degree_) {
        throw std::invalid_argument("HomPoly: key of length " + std::to_string(key.size()) + " for degree "
                                    + std::to_string(degree_));
    }
    for (int i : key) {
        if (i < 0 || i >= n_) {
            throw std::invalid_argument("HomPoly: key entry " + std::to_string(i) + " out of range");
        }
    }
}

void HomPoly::set_coeff(Key key, CVector value)
{
    std::ranges::sort(key);
    check_key(key);
    if (static_cast<int>(value.size()) != m_) {
        throw std::invalid_argument("HomPoly: coefficient has wrong codomain dimension");
    }
    if (fsjet::is_zero(value)) {
        coeffs_.erase(key);
    } else {
        coeffs_[std::move(key)] = std::move(value);
    }
}

void HomPoly::add_to_coeff(Key key, const CVector &value)
{
    std::ranges::sort(key);
    CVector cur = coeff(key);
    cur += value;
    set_coeff(std::move(key), std::move(cur));
}

CVector HomPoly::coeff(Key key) const
{
    std::ranges::sort(key);
    check_key(key);
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? CVector(static_cast<std::size_t>(m_)) : it->second;
}

double HomPoly::max_coeff_abs() const
{
    double r = 0.0;
    for (const auto &[k, v] : coeffs_) {
        r = std::max(r, max_abs(v));
    }
    return r;
}

CVector HomPoly::eval(const CVector &x) const
{
    if (static_cast<int>(x.size()) != n_) {
        throw std::invalid_argument("HomPoly::eval: expected argument of dimension " + std::to_string(n_));
    }
    CVector r(static_cast<std::size_t>(m_));
    for (const auto &[key, t] : coeffs_) {
        cplx w = multiplicity(key);
        for (int i : key) {
            w *= x[static_cast<std::size_t>(i)];
        }
        for (std::size_t c = 0; c < r.size(); ++c) {
            r[c] += w * t[c];
        }
    }
    return r;
}

CVector HomPoly::multilinear_eval(std::span<const CVector> args) const
{
    if (static_cast<int>(args.size()) != degree_) {
        throw std::invalid_argument("HomPoly::multilinear_eval: expected " + std::to_string(degree_) + " arguments");
    }
    for (const auto &a : args) {
        if (static_cast<int>(a.size()) != n_) {
            throw std::invalid_argument("HomPoly::multilinear_eval: argument dimension mismatch");
        }
    }
    std::vector<const CVector *> ordered;
    ordered.reserve(args.size());
    for (const auto &a : args) {
        ordered.push_back(&a);
    }
    std::ranges::stable_sort(ordered, [](const CVector *a, const CVector *b) { return lex_less(*a, *b); });

    CVector r(static_cast<std::size_t>(m_));
    Key perm;
    for (const auto &[key, t] : coeffs_) {
        // Sum over the distinct orderings of the key.
        cplx w = 0.0;
        perm = key;
        do {
            cplx p = 1.0;
            for (std::size_t j = 0; j < perm.size(); ++j) {
                p *= (*ordered[j])[static_cast<std::size_t>(perm[j])];
            }
            w += p;
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t c = 0; c < r.size(); ++c) {
            r[c] += w * t[c];
        }
    }
    return r;
}

HomPoly &HomPoly::operator+=(const HomPoly &o)
{
    if (o.degree_ != degree_ || o.n_ != n_ || o.m_ != m_) {
        throw std::invalid_argument("HomPoly: shape mismatch in +=");
    }
    for (const auto &[k, v] : o.coeffs_) {
        add_to_coeff(k, v);
    }
    return *this;
}

HomPoly &HomPoly::operator-=(const HomPoly &o)
{
    if (o.degree_ != degree_ || o.n_ != n_ || o.m_ != m_) {
        throw std::invalid_argument("HomPoly: shape mismatch in -=");
    }
    for (const auto &[k, v] : o.coeffs_) {
        add_to_coeff(k, -v);
    }
    return *this;
}

HomPoly &HomPoly::operator*=(cplx c)
{
    if (c == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto &[k, v] : coeffs_) {
        v *= c;
    }
    return *this;
}

bool HomPoly::approx_equal(const HomPoly &o, Tolerance tol) const
{
    if (o.degree_ != degree_ || o.n_ != n_ || o.m_ != m_) {
        return false;
    }
    auto check = [&](const Key &k) {
        const CVector a = coeff(k);
        const CVector b = o.coeff(k);
        return tol.close(max_abs(a - b), std::max(max_abs(a), max_abs(b)));
    };
    for (const auto &[k, v] : coeffs_) {
        if (!check(k)) {
            return false;
        }
    }
    for (const auto &[k, v] : o.coeffs_) {
        if (!check(k)) {
            return false;
        }
    }
    return true;
}

VecSeries HomPoly::to_series(int max_degree) const
{
    VecSeries s(static_cast<std::size_t>(m_), Series(n_, max_degree));
    for (const auto &[key, t] : coeffs_) {
        const Exponent a = exponent_from_key(key, n_);
        const double w = multiplicity(key);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c].add_term(a, w * t[c]);
        }
    }
    return s;
}

HomPoly HomPoly::from_series(const VecSeries &s, int degree)
{
    if (s.empty()) {
        throw std::invalid_argument("HomPoly::from_series: empty vector series");
    }
    HomPoly p(degree, s.front().nvars(), static_cast<int>(s.size()));
    for (std::size_t c = 0; c < s.size(); ++c) {
        for (const auto &[a, v] : s[c].terms()) {
            if (total_degree(a) != degree) {
                continue;
            }
            const Key key = key_from_exponent(a);
            CVector add(s.size());
            add[c] = v / multiplicity(key);
            p.add_to_coeff(key, add);
        }
    }
    return p;
}

double polarization_check(const HomPoly &p, const CVector &x1, const CVector &x2)
{
    if (p.degree() != 2) {
        throw std::invalid_argument("polarization_check: degree must be 2");
    }
    const CVector args[2] = {x1, x2};
    const CVector direct = p.multilinear_eval(args);
    const CVector polar = 0.25 * (p.eval(x1 + x2) - p.eval(x1 - x2));
    return norm(direct - polar);
}

VecSeries substitute(const HomPoly &p, const VecSeries &y)
{
    if (static_cast<int>(y.size()) != p.domain_dim()) {
        throw std::invalid_argument("substitute: expected one series per domain variable");
    }
    const int nv = y.front().nvars();
    int maxdeg = y.front().max_degree();
    for (const auto &s : y) {
        maxdeg = std::min(maxdeg, s.max_degree());
    }
    VecSeries out(static_cast<std::size_t>(p.codomain_dim()), Series(nv, maxdeg));

    // Products of y components memoised along sorted key prefixes.
    std::map<HomPoly::Key, Series> cache;
    auto product = [&](const HomPoly::Key &key) -> const Series & {
        HomPoly::Key prefix;
        const Series *cur = nullptr;
        for (int i : key) {
            prefix.push_back(i);
            auto it = cache.find(prefix);
            if (it == cache.end()) {
                const Series &yi = y[static_cast<std::size_t>(i)];
                Series next = cur ? (*cur) * yi : yi.truncated(maxdeg);
                it = cache.emplace(prefix, std::move(next)).first;
            }
            cur = &it->second;
        }
        return *cur;
    };

    for (const auto &[key, t] : p.coeffs()) {
        const Series &prod = product(key);
        const double w = multiplicity(key);
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] += (w * t[c]) * prod;
        }
    }
    return out;
}

HomPoly contract_last(const HomPoly &p, const HomPoly &q)
{
    if (q.codomain_dim() != p.domain_dim() || q.domain_dim() != p.domain_dim()) {
        throw std::invalid_argument("contract_last: dimension mismatch");
    }
    const int n = p.domain_dim();
    const int deg = p.degree() - 1 + q.degree();
    // P[x^{k-1}, y] = (1/k) DP(x)[y]
    const VecSeries ps = p.to_series(deg);
    const VecSeries qs = q.to_series(deg);
    VecSeries out(static_cast<std::size_t>(p.codomain_dim()), Series(n, deg));
    for (std::size_t c = 0; c < out.size(); ++c) {
        for (int j = 0; j < n; ++j) {
            out[c] += ps[c].derivative(j) * qs[static_cast<std::size_t>(j)];
        }
        out[c] *= 1.0 / p.degree();
    }
    return HomPoly::from_series(out, deg);
}

} // namespace fsjet
