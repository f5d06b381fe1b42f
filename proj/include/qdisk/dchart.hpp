/**
 * @file dchart.hpp
 * @brief The double chart of a triangulation: the tensor square of the base
 *        torus modulo the boundary identifications, with normal forms in the
 *        X/B generators and the projection that sets every B to 1.
 *
 * Double torus: rank 2m with block form diag(Lambda_T, -Lambda_T); exponent
 * (u, u°) represents a front monomial against a back monomial.  Generators:
 *   X_j = A^{(x_j, 0)},  B_j = A^{(-e_j, e_j)},  r_i = A^{(-e_i, e_i)}
 * for internal j and boundary i; the D-chart sublattice is spanned by these,
 * where the r_i are central and set to 1.
 */
#pragma once

#include "qdisk/cluster.hpp"
#include "qdisk/polygon.hpp"
#include "qdisk/torus.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qdisk {

/// Chart data for the double construction over a fixed triangulation.
class DoubleChart {
public:
    explicit DoubleChart(const Triangulation& T) : T_(T) {
        ExchangeData ex = exchange_data(T);
        eps_ = ex.epsilon;
        lambda_ = ex.lambda;
        internal_ = T.internal_indices();
        const int m = T.edge_count();
        m_ = m;
        std::vector<std::vector<long long>> d(2 * m, std::vector<long long>(2 * m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                d[i][j] = lambda_.at(i, j);
                d[m + i][m + j] = -lambda_.at(i, j);
            }
        dform_ = std::make_shared<SkewForm>(std::move(d));

        // D-chart presentation torus on Z^J + Z^J (X parts then B parts):
        // (X_i,X_j) = -4 eps_ij, (X_i,B_j) = -4 delta_ij, (B_i,B_j) = 0.
        const int r = static_cast<int>(internal_.size());
        std::vector<std::vector<long long>> p(2 * r, std::vector<long long>(2 * r, 0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) p[i][j] = -4 * eps_.at(internal_[i], internal_[j]);
        for (int i = 0; i < r; ++i) {
            p[i][r + i] = -4;
            p[r + i][i] = 4;
        }
        pform_ = std::make_shared<SkewForm>(std::move(p));
        xform_ = x_chart_form(eps_, internal_);
    }

    const Triangulation& triangulation() const { return T_; }
    int rank() const { return m_; }
    const std::vector<int>& internal_positions() const { return internal_; }
    const IntMat& eps() const { return eps_; }
    const IntMat& lambda() const { return lambda_; }

    /// The ambient rank-2m torus of pure tensors.
    const FormPtr& double_form() const { return dform_; }
    /// The rank-2|J| presentation torus in the X/B generators.
    const FormPtr& presentation_form() const { return pform_; }
    /// The X-chart torus (X parts only).
    const FormPtr& x_form() const { return xform_; }

    TorusElement lift_front(const TorusElement& e) const {
        TorusElement r = TorusElement::zero(dform_);
        for (const auto& [v, c] : e.terms()) {
            ExpVec w(2 * m_, 0);
            for (int i = 0; i < m_; ++i) w[i] = v[i];
            r.add_term(w, c);
        }
        return r;
    }
    TorusElement lift_back(const TorusElement& e) const {
        TorusElement r = TorusElement::zero(dform_);
        for (const auto& [v, c] : e.terms()) {
            ExpVec w(2 * m_, 0);
            for (int i = 0; i < m_; ++i) w[m_ + i] = v[i];
            r.add_term(w, c);
        }
        return r;
    }

    /// Generators as double-torus elements.
    TorusElement X(int j) const {  // j = position in I
        ExpVec w(2 * m_, 0);
        for (int s = 0; s < m_; ++s) w[s] = static_cast<int>(eps_.at(j, s));
        return TorusElement::monomial(dform_, std::move(w));
    }
    TorusElement B(int j) const {
        ExpVec w(2 * m_, 0);
        w[j] = -1;
        w[m_ + j] = 1;
        return TorusElement::monomial(dform_, std::move(w));
    }
    /// X-hat_j = X_j prod_i B_i^{eps_{ji}}; the front exponents cancel,
    /// leaving the back monomial A^{(0, x_j)} with no phase.
    TorusElement Xhat(int j) const {
        ExpVec w(2 * m_, 0);
        for (int s = 0; s < m_; ++s) w[m_ + s] = static_cast<int>(eps_.at(j, s));
        return TorusElement::monomial(dform_, std::move(w));
    }
    /// The positive/negative B-monomials attached to an internal edge.
    TorusElement Bplus(int k) const {
        ExpVec w(2 * m_, 0);
        for (int s = 0; s < m_; ++s) {
            const long long e = eps_.at(k, s);
            if (e > 0) {
                w[s] -= static_cast<int>(e);
                w[m_ + s] += static_cast<int>(e);
            }
        }
        return TorusElement::monomial(dform_, std::move(w));
    }
    TorusElement Bminus(int k) const {
        ExpVec w(2 * m_, 0);
        for (int s = 0; s < m_; ++s) {
            const long long e = eps_.at(k, s);
            if (e < 0) {
                w[s] -= static_cast<int>(-e);
                w[m_ + s] += static_cast<int>(-e);
            }
        }
        return TorusElement::monomial(dform_, std::move(w));
    }

    /// Normal form of a double-torus element in the X/B presentation:
    /// boundary relations r_i = 1 are cleared, the back exponent becomes the
    /// B part, and the remaining front exponent is solved in the eps-row
    /// lattice.  Throws "outside D-chart" when membership fails.
    TorusElement reduce_to_D_chart(const TorusElement& e) const {
        if (!same_form(e.form(), dform_)) throw std::invalid_argument("reduce: wrong form");
        const int r = static_cast<int>(internal_.size());
        TorusElement out = TorusElement::zero(pform_);
        for (const auto& [w, c] : e.terms()) {
            ExpVec u(w.begin(), w.begin() + m_);
            ExpVec ub(w.begin() + m_, w.end());
            // Solve sum_j a_j x_j = u + ub over the internal rows.
            ExpVec target = expvec_add(u, ub);
            auto a = x_coordinates(eps_, lambda_, internal_, target);
            if (!a) throw std::domain_error("outside D-chart");
            ExpVec pres(2 * r, 0);
            for (int i = 0; i < r; ++i) pres[i] = (*a)[i];
            for (int i = 0; i < r; ++i) pres[r + i] = ub[internal_[i]];
            out.add_term(pres, c);
        }
        return out;
    }

    /// Same reduction computed by clearing the boundary relations one at a
    /// time in the given order (the r_i pair trivially with the sublattice,
    /// so any order gives the same result; exercised by the confluence
    /// tests).
    TorusElement reduce_by_clearing(const TorusElement& e, const std::vector<int>& order) const {
        TorusElement shifted = TorusElement::zero(dform_);
        for (const auto& [w, c] : e.terms()) {
            ExpVec v = w;
            OmegaLaurent coeff = c;
            for (int b : order) {
                if (is_boundary(T_.disk(), T_.edges()[b])) {
                    // multiply by r_b^{-v[m+b]} r_b^{v[m+b]} and absorb: the
                    // phase is D((u,ub), (-e_b, e_b))-twisted per step.
                    const int cnt = v[m_ + b];
                    if (cnt == 0) continue;
                    ExpVec rb(2 * m_, 0);
                    rb[b] = -1;
                    rb[m_ + b] = 1;
                    // A^{v} = w^{+D(v, cnt*rb)} ... A^{v - cnt*rb} * r_b^{cnt};
                    // r_b^{cnt} == 1 in the quotient.
                    const long long tw = dform_->eval(v, expvec_scale(rb, cnt));
                    coeff = coeff * OmegaLaurent::monomial(static_cast<int>(-tw));
                    v = expvec_sub(v, expvec_scale(rb, cnt));
                }
            }
            shifted.add_term(v, coeff);
        }
        return reduce_to_D_chart(shifted);
    }

    /// pi^q: set every B variable to 1 in a presented element.
    TorusElement specialize_B_to_one(const TorusElement& presented) const {
        if (!same_form(presented.form(), pform_))
            throw std::invalid_argument("specialize: not a presented element");
        const int r = static_cast<int>(internal_.size());
        TorusElement out = TorusElement::zero(xform_);
        for (const auto& [w, c] : presented.terms()) {
            ExpVec x(w.begin(), w.begin() + r);
            out.add_term(x, c);
        }
        return out;
    }

    std::vector<std::string> presentation_labels() const {
        std::vector<std::string> lab;
        for (int p : internal_) lab.push_back("X[" + T_.edges()[p].label() + "]");
        for (int p : internal_) lab.push_back("B[" + T_.edges()[p].label() + "]");
        return lab;
    }
    std::vector<std::string> x_labels() const {
        std::vector<std::string> lab;
        for (int p : internal_) lab.push_back("X[" + T_.edges()[p].label() + "]");
        return lab;
    }

private:
    Triangulation T_;
    int m_;
    IntMat eps_, lambda_;
    std::vector<int> internal_;
    FormPtr dform_, pform_, xform_;
};

}  // namespace qdisk
