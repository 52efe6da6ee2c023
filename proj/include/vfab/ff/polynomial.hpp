#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vfab/ff/field.hpp"

namespace vfab::ff {

/// Dense univariate polynomial over GF(2^61-1). coeffs[i] is the
/// coefficient of X^i; the empty vector is the zero polynomial. Kept
/// normalized: the highest-index coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly constant(Fe v) { return Poly({v}); }

    /// X - r
    static Poly linear_root(Fe r) { return Poly({-r, Fe::one()}); }

    const std::vector<Fe>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    /// Degree of the zero polynomial reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Fe coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fe::zero(); }

    Fe eval(Fe x) const {
        Fe acc;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Fe> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(out));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Fe> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(out));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Fe> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

    friend Poly operator*(const Poly& a, Fe s) {
        std::vector<Fe> out(a.c_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] * s;
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Long division: returns (q, r) with *this = d*q + r and deg r < deg d.
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Fe> rem = c_;
        std::vector<Fe> quot;
        const std::size_t dn = d.c_.size();
        if (rem.size() >= dn) quot.assign(rem.size() - dn + 1, Fe::zero());
        Fe lead_inv = d.c_.back().inv();
        while (rem.size() >= dn) {
            Fe factor = rem.back() * lead_inv;
            std::size_t shift = rem.size() - dn;
            quot[shift] = factor;
            for (std::size_t i = 0; i < dn; ++i)
                rem[shift + i] -= factor * d.c_[i];
            while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
            if (rem.size() < dn) break;
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Fe> c_;
};

/// Lagrange interpolation through points with pairwise-distinct x.
/// Result has degree < points.size(). O(n^2) via synthetic division of
/// the full root product by each (X - x_i).
inline Poly interpolate(const std::vector<std::pair<Fe, Fe>>& points) {
    const std::size_t n = points.size();
    if (n == 0) return Poly();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolate: duplicate x-coordinate");

    Poly full = Poly::constant(Fe::one());
    for (auto& [x, y] : points) full = full * Poly::linear_root(x);

    Poly acc;
    for (auto& [xi, yi] : points) {
        auto [basis, rem] = full.divrem(Poly::linear_root(xi)); // exact
        Fe denom = basis.eval(xi);
        acc = acc + basis * (yi * denom.inv());
    }
    return acc;
}

} // namespace vfab::ff
