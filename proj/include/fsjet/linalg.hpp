#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fsjet
{

using cplx = std::complex<double>;

// Dense complex vector of C^n with the Euclidean inner product.
class CVector
{
public:
    CVector() = default;
    explicit CVector(std::size_t n) : data_(n) {}
    CVector(std::initializer_list<cplx> il) : data_(il) {}
    explicit CVector(std::vector<cplx> v) : data_(std::move(v)) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cplx &operator[](std::size_t i) { return data_[i]; }
    const cplx &operator[](std::size_t i) const { return data_[i]; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    std::span<const cplx> span() const noexcept { return data_; }
    const std::vector<cplx> &values() const noexcept { return data_; }

    CVector &operator+=(const CVector &o);
    CVector &operator-=(const CVector &o);
    CVector &operator*=(cplx c);

    friend CVector operator+(CVector a, const CVector &b) { return a += b; }
    friend CVector operator-(CVector a, const CVector &b) { return a -= b; }
    friend CVector operator-(CVector a) { return a *= -1.0; }
    friend CVector operator*(cplx c, CVector a) { return a *= c; }
    friend CVector operator*(CVector a, cplx c) { return a *= c; }
    friend CVector operator/(CVector a, cplx c) { return a *= 1.0 / c; }
    friend bool operator==(const CVector &, const CVector &) = default;

private:
    std::vector<cplx> data_;
};

// <a, b> = sum a_i conj(b_i); linear in the first slot.
cplx inner(const CVector &a, const CVector &b);
double norm(const CVector &a);
double max_abs(const CVector &a);
CVector basis_vector(std::size_t n, std::size_t i);
bool is_zero(const CVector &a);
std::string to_string(const CVector &a);

// Square complex matrix, row-major.
class LinOp
{
public:
    LinOp() = default;
    explicit LinOp(std::size_t n) : n_(n), a_(n * n) {}
    LinOp(std::size_t n, std::vector<cplx> row_major);

    static LinOp identity(std::size_t n);
    static LinOp diagonal(const CVector &d);

    std::size_t dim() const noexcept { return n_; }
    cplx &operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CVector apply(const CVector &x) const;
    CVector column(std::size_t j) const;
    LinOp adjoint() const;
    LinOp operator*(const LinOp &o) const;

    // max_ij |(U*U - Id)_ij|
    double unitarity_residual() const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

} // namespace fsjet
