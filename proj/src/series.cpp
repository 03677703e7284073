#include <fsjet/series.hpp>

#include <numeric>
#include <stdexcept>

namespace fsjet
{

int total_degree(const Exponent &alpha)
{
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

Series::Series(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree)
{
    if (nvars < 1 || max_degree < 0) {
        throw std::invalid_argument("Series: invalid shape");
    }
}

Series Series::constant(int nvars, int max_degree, cplx c)
{
    Series s(nvars, max_degree);
    s.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return s;
}

Series Series::variable(int nvars, int max_degree, int i)
{
    Series s(nvars, max_degree);
    Exponent a(static_cast<std::size_t>(nvars), 0);
    a.at(static_cast<std::size_t>(i)) = 1;
    s.add_term(a, 1.0);
    return s;
}

Series Series::linear_form(int nvars, int max_degree, const CVector &c)
{
    if (static_cast<int>(c.size()) != nvars) {
        throw std::invalid_argument("Series::linear_form: dimension mismatch");
    }
    Series s(nvars, max_degree);
    for (int i = 0; i < nvars; ++i) {
        Exponent a(static_cast<std::size_t>(nvars), 0);
        a[static_cast<std::size_t>(i)] = 1;
        s.add_term(a, c[static_cast<std::size_t>(i)]);
    }
    return s;
}

void Series::add_term(const Exponent &alpha, cplx c)
{
    if (static_cast<int>(alpha.size()) != nvars_) {
        throw std::invalid_argument("Series::add_term: exponent length mismatch");
    }
    if (c == 0.0 || total_degree(alpha) > max_degree_) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) {
            terms_.erase(it);
        }
    }
}

cplx Series::coeff(const Exponent &alpha) const
{
    auto it = terms_.find(alpha);
    return it == terms_.end() ? cplx{} : it->second;
}

cplx Series::constant_term() const
{
    return coeff(Exponent(static_cast<std::size_t>(nvars_), 0));
}

int Series::min_degree() const
{
    int d = -1;
    for (const auto &[a, c] : terms_) {
        const int t = total_degree(a);
        if (d < 0 || t < d) {
            d = t;
        }
    }
    return d;
}

Series &Series::operator+=(const Series &o)
{
    if (o.nvars_ != nvars_) {
        throw std::invalid_argument("Series: variable count mismatch");
    }
    for (const auto &[a, c] : o.terms_) {
        add_term(a, c);
    }
    return *this;
}

Series &Series::operator-=(const Series &o)
{
    if (o.nvars_ != nvars_) {
        throw std::invalid_argument("Series: variable count mismatch");
    }
    for (const auto &[a, c] : o.terms_) {
        add_term(a, -c);
    }
    return *this;
}

Series &Series::operator*=(cplx c)
{
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto &[a, v] : terms_) {
        v *= c;
    }
    return *this;
}

Series operator*(const Series &a, const Series &b)
{
    if (a.nvars_ != b.nvars_) {
        throw std::invalid_argument("Series: variable count mismatch");
    }
    Series r(a.nvars_, std::min(a.max_degree_, b.max_degree_));
    Exponent e(static_cast<std::size_t>(a.nvars_));
    for (const auto &[ea, ca] : a.terms_) {
        const int da = total_degree(ea);
        for (const auto &[eb, cb] : b.terms_) {
            if (da + total_degree(eb) > r.max_degree_) {
                continue;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Series Series::derivative(int i) const
{
    Series r(nvars_, max_degree_);
    const auto ui = static_cast<std::size_t>(i);
    for (const auto &[a, c] : terms_) {
        if (a[ui] == 0) {
            continue;
        }
        Exponent b = a;
        b[ui] -= 1;
        r.add_term(b, c * static_cast<double>(a[ui]));
    }
    return r;
}

Series Series::homogeneous_part(int d) const
{
    Series r(nvars_, max_degree_);
    for (const auto &[a, c] : terms_) {
        if (total_degree(a) == d) {
            r.terms_.emplace(a, c);
        }
    }
    return r;
}

Series Series::truncated(int d) const
{
    Series r(nvars_, std::min(d, max_degree_));
    for (const auto &[a, c] : terms_) {
        r.add_term(a, c);
    }
    return r;
}

cplx Series::eval(const CVector &x) const
{
    if (static_cast<int>(x.size()) != nvars_) {
        throw std::invalid_argument("Series::eval: dimension mismatch");
    }
    cplx s = 0.0;
    for (const auto &[a, c] : terms_) {
        cplx m = c;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (int p = 0; p < a[i]; ++p) {
                m *= x[i];
            }
        }
        s += m;
    }
    return s;
}

Series compose_univariate(std::span<const cplx> coeffs, const Series &u)
{
    if (u.constant_term() != 0.0) {
        throw std::invalid_argument("compose_univariate: inner series must vanish at 0");
    }
    // Horner; the truncation degree bounds the useful length of coeffs.
    Series r(u.nvars(), u.max_degree());
    const auto len = std::min<std::size_t>(coeffs.size(), static_cast<std::size_t>(u.max_degree()) + 1);
    for (std::size_t k = len; k-- > 0;) {
        r = r * u;
        r.add_term(Exponent(static_cast<std::size_t>(u.nvars()), 0), coeffs[k]);
    }
    return r;
}

std::vector<cplx> series_power(std::span<const cplx> a, double alpha, int terms)
{
    if (a.empty() || a[0] != 1.0) {
        throw std::invalid_argument("series_power: leading coefficient must be 1");
    }
    std::vector<cplx> b(static_cast<std::size_t>(std::max(terms, 0)));
    if (b.empty()) {
        return b;
    }
    b[0] = 1.0;
    // J.C.P. Miller recurrence: k b_k = sum_{j=1..k} ((alpha + 1) j - k) a_j b_{k-j}.
    for (std::size_t k = 1; k < b.size(); ++k) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
            s += ((alpha + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
        }
        b[k] = s / static_cast<double>(k);
    }
    return b;
}

} // namespace fsjet
