#include <fsjet/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fsjet
{

CVector &CVector::operator+=(const CVector &o)
{
    if (o.size() != size()) {
        throw std::invalid_argument("CVector: dimension mismatch in +=");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        data_[i] += o.data_[i];
    }
    return *this;
}

CVector &CVector::operator-=(const CVector &o)
{
    if (o.size() != size()) {
        throw std::invalid_argument("CVector: dimension mismatch in -=");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

CVector &CVector::operator*=(cplx c)
{
    for (auto &x : data_) {
        x *= c;
    }
    return *this;
}

cplx inner(const CVector &a, const CVector &b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * std::conj(b[i]);
    }
    return s;
}

double norm(const CVector &a)
{
    double s = 0.0;
    for (const auto &x : a) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

double max_abs(const CVector &a)
{
    double m = 0.0;
    for (const auto &x : a) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

CVector basis_vector(std::size_t n, std::size_t i)
{
    CVector v(n);
    v[i] = 1.0;
    return v;
}

bool is_zero(const CVector &a)
{
    return std::all_of(a.begin(), a.end(), [](const cplx &x) { return x == 0.0; });
}

std::string to_string(const CVector &a)
{
    std::string out = "(";
    char buf[96];
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s%.6g%+.6gi", i ? ", " : "", a[i].real(), a[i].imag());
        out += buf;
    }
    return out + ")";
}

LinOp::LinOp(std::size_t n, std::vector<cplx> row_major) : n_(n), a_(std::move(row_major))
{
    if (a_.size() != n * n) {
        throw std::invalid_argument("LinOp: expected n*n entries");
    }
}

LinOp LinOp::identity(std::size_t n)
{
    LinOp I(n);
    for (std::size_t i = 0; i < n; ++i) {
        I(i, i) = 1.0;
    }
    return I;
}

LinOp LinOp::diagonal(const CVector &d)
{
    LinOp D(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        D(i, i) = d[i];
    }
    return D;
}

CVector LinOp::apply(const CVector &x) const
{
    if (x.size() != n_) {
        throw std::invalid_argument("LinOp::apply: dimension mismatch");
    }
    CVector y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            s += (*this)(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

CVector LinOp::column(std::size_t j) const
{
    CVector c(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

LinOp LinOp::adjoint() const
{
    LinOp r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

LinOp LinOp::operator*(const LinOp &o) const
{
    if (o.n_ != n_) {
        throw std::invalid_argument("LinOp::operator*: dimension mismatch");
    }
    LinOp r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const cplx a = (*this)(i, k);
            for (std::size_t j = 0; j < n_; ++j) {
                r(i, j) += a * o(k, j);
            }
        }
    }
    return r;
}

double LinOp::unitarity_residual() const
{
    const LinOp p = adjoint() * (*this);
    double r = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            r = std::max(r, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    return r;
}

} // namespace fsjet
