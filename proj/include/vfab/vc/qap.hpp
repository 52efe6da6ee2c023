#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "vfab/circuit/r1cs.hpp"
#include "vfab/ff/polynomial.hpp"

namespace vfab::vc {

/// Quadratic arithmetic program derived from an R1CS. Constraint j is
/// attached to evaluation point r_j = j+1; per-wire polynomials satisfy
/// A_k(r_j) = (coefficient of wire k in constraint j's A row), likewise
/// B and C. T(X) = prod_j (X - r_j) vanishes exactly on the points, so
/// an assignment satisfies the R1CS iff
///   P(X) = (sum z_k A_k)(sum z_k B_k) - sum z_k C_k
/// is divisible by T.
struct Qap {
    std::vector<ff::Poly> a, b, c; // one polynomial per wire
    ff::Poly target;
    std::size_t degree = 0; // = number of constraints

    ff::Fe point(std::size_t j) const { return ff::Fe(j + 1); }
};

inline Qap r1cs_to_qap(const circuit::ConstraintSystem& cs) {
    if (cs.constraints.empty()) throw std::invalid_argument("empty constraint system");

    Qap qap;
    qap.degree = cs.constraints.size();
    const std::size_t wires = cs.num_wires();

    // Lagrange basis L_j over the points, shared across all wires.
    ff::Poly full = ff::Poly::constant(ff::Fe::one());
    for (std::size_t j = 0; j < qap.degree; ++j)
        full = full * ff::Poly::linear_root(qap.point(j));
    qap.target = full;

    std::vector<ff::Poly> basis(qap.degree);
    for (std::size_t j = 0; j < qap.degree; ++j) {
        auto [num, rem] = full.divrem(ff::Poly::linear_root(qap.point(j)));
        basis[j] = num * num.eval(qap.point(j)).inv();
    }

    qap.a.assign(wires, ff::Poly());
    qap.b.assign(wires, ff::Poly());
    qap.c.assign(wires, ff::Poly());
    for (std::size_t j = 0; j < qap.degree; ++j) {
        const auto& con = cs.constraints[j];
        for (auto& [w, coeff] : con.a.terms) qap.a[w] = qap.a[w] + basis[j] * coeff;
        for (auto& [w, coeff] : con.b.terms) qap.b[w] = qap.b[w] + basis[j] * coeff;
        for (auto& [w, coeff] : con.c.terms) qap.c[w] = qap.c[w] + basis[j] * coeff;
    }
    return qap;
}

/// P(X) for a concrete assignment, built by interpolating the per-
/// constraint inner products (equal to sum_k z_k {A,B,C}_k by uniqueness
/// of the degree-<d interpolant).
inline ff::Poly assignment_poly(const Qap& qap, const circuit::ConstraintSystem& cs,
                                const circuit::Assignment& z) {
    std::vector<std::pair<ff::Fe, ff::Fe>> pa, pb, pc;
    for (std::size_t j = 0; j < qap.degree; ++j) {
        const auto& con = cs.constraints[j];
        pa.emplace_back(qap.point(j), con.a.eval(z.values));
        pb.emplace_back(qap.point(j), con.b.eval(z.values));
        pc.emplace_back(qap.point(j), con.c.eval(z.values));
    }
    return ff::interpolate(pa) * ff::interpolate(pb) - ff::interpolate(pc);
}

/// Quotient H = P / T when the division is exact.
struct QapDivision {
    ff::Poly quotient;
    bool exact = false;
};

inline QapDivision qap_divide(const Qap& qap, const circuit::ConstraintSystem& cs,
                              const circuit::Assignment& z) {
    auto [q, r] = assignment_poly(qap, cs, z).divrem(qap.target);
    return {std::move(q), r.is_zero()};
}

} // namespace vfab::vc
