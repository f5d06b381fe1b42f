#include <catch2/catch_amalgamated.hpp>

#include "qdisk/dchart.hpp"
#include "test_rng.hpp"

using namespace qdisk;

namespace {

OmegaLaurent q2(int k) { return OmegaLaurent::q_power(2 * k > 0 ? 0 : 0) * OmegaLaurent::monomial(8 * k); }

}  // namespace

TEST_CASE("commutation relations in the double chart, n <= 7") {
    for (int n = 4; n <= 7; ++n) {
        for (const Triangulation& T : enumerate_triangulations(MarkedDisk(n))) {
            DoubleChart D(T);
            const auto& J = D.internal_positions();
            for (int i : J)
                for (int j : J) {
                    const long long e = D.eps().at(i, j);
                    // X_i X_j = q^{2 eps_ij} X_j X_i
                    CHECK(D.X(i) * D.X(j) == q2(static_cast<int>(e)) * (D.X(j) * D.X(i)));
                    // B_i B_j = B_j B_i
                    CHECK(D.B(i) * D.B(j) == D.B(j) * D.B(i));
                    // X_i B_j = q^{2 delta_ij} B_j X_i
                    CHECK(D.X(i) * D.B(j) == q2(i == j ? 1 : 0) * (D.B(j) * D.X(i)));
                }
            // X_k commutes with X-hat_k.
            for (int k : J) CHECK(D.X(k) * D.Xhat(k) == D.Xhat(k) * D.X(k));
        }
    }
}

TEST_CASE("reduction examples") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    DoubleChart D(T);
    const auto& J = D.internal_positions();
    const int r = static_cast<int>(J.size());

    // B_j itself -> X-exponent 0, B-exponent e_j, coefficient 1.
    for (int jj = 0; jj < r; ++jj) {
        TorusElement red = D.reduce_to_D_chart(D.B(J[jj]));
        REQUIRE(red.term_count() == 1);
        ExpVec expect(2 * r, 0);
        expect[r + jj] = 1;
        CHECK(red.terms().begin()->first == expect);
        CHECK(red.terms().begin()->second == OmegaLaurent(1));
    }

    // 1 (x) M_{T°}(eps-row k) = X_k B-hat_k: X-exponent e_k, B-exponents =
    // eps-row restricted to J, coefficient 1.
    for (int kk = 0; kk < r; ++kk) {
        TorusElement red = D.reduce_to_D_chart(D.Xhat(J[kk]));
        REQUIRE(red.term_count() == 1);
        ExpVec expect(2 * r, 0);
        expect[kk] = 1;
        for (int jj = 0; jj < r; ++jj)
            expect[r + jj] = static_cast<int>(D.eps().at(J[kk], J[jj]));
        CHECK(red.terms().begin()->first == expect);
        CHECK(red.terms().begin()->second == OmegaLaurent(1));
    }

    // Boundary relation elements reduce to 1.
    for (int i = 0; i < T.edge_count(); ++i) {
        if (!is_boundary(pent, T.edges()[i])) continue;
        ExpVec w(2 * T.edge_count(), 0);
        w[i] = -1;
        w[T.edge_count() + i] = 1;
        TorusElement r_i = TorusElement::monomial(D.double_form(), w);
        TorusElement red = D.reduce_to_D_chart(r_i);
        CHECK(red == TorusElement::unit(D.presentation_form()));
    }

    // A pure back generator 1 (x) M(e_j) falls outside the D-chart.
    ExpVec w(2 * T.edge_count(), 0);
    w[T.edge_count() + J[0]] = 1;
    CHECK_THROWS_AS(D.reduce_to_D_chart(TorusElement::monomial(D.double_form(), w)),
                    std::domain_error);
}

TEST_CASE("reduction is confluent: clearing order does not matter") {
    MarkedDisk hex(6);
    Triangulation T = canonical_completion(hex, {});
    DoubleChart D(T);
    TestRng rng(123);
    const int m = T.edge_count();
    const auto& J = D.internal_positions();
    for (int trial = 0; trial < 40; ++trial) {
        // Random element of the D-chart sublattice: a product of random
        // powers of X's, B's, and boundary relations.
        TorusElement e = TorusElement::unit(D.double_form());
        for (int f = 0; f < 4; ++f) {
            const int pick = rng.uniform(0, 2);
            if (pick == 0) {
                e = e * D.X(J[rng.uniform(0, static_cast<int>(J.size()) - 1)]).pow(rng.uniform(-2, 2));
            } else if (pick == 1) {
                e = e * D.B(J[rng.uniform(0, static_cast<int>(J.size()) - 1)]).pow(rng.uniform(-2, 2));
            } else {
                int b = rng.uniform(0, m - 1);
                while (!is_boundary(hex, T.edges()[b])) b = rng.uniform(0, m - 1);
                ExpVec w(2 * m, 0);
                w[b] = -1;
                w[m + b] = 1;
                e = e * TorusElement::monomial(D.double_form(), w).pow(rng.uniform(-2, 2));
            }
        }
        TorusElement direct = D.reduce_to_D_chart(e);
        std::vector<int> order1, order2;
        for (int i = 0; i < m; ++i) order1.push_back(i);
        for (int i = m - 1; i >= 0; --i) order2.push_back(i);
        CHECK(D.reduce_by_clearing(e, order1) == direct);
        CHECK(D.reduce_by_clearing(e, order2) == direct);
    }
}

TEST_CASE("specialize B to one") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    DoubleChart D(T);
    const auto& J = D.internal_positions();
    const int r = static_cast<int>(J.size());

    // B_j -> 1.
    CHECK(D.specialize_B_to_one(D.reduce_to_D_chart(D.B(J[0]))) ==
          TorusElement::unit(D.x_form()));
    // X_k B-hat_k -> X_k.
    TorusElement spec = D.specialize_B_to_one(D.reduce_to_D_chart(D.Xhat(J[1])));
    ExpVec xk(r, 0);
    xk[1] = 1;
    CHECK(spec == TorusElement::monomial(D.x_form(), xk));
    // Sum of two D-monomials with equal X part merges coefficients.
    TorusElement sum = D.reduce_to_D_chart(D.Xhat(J[0])) +
                       D.reduce_to_D_chart(OmegaLaurent::q_power(1) * D.X(J[0]));
    TorusElement merged = D.specialize_B_to_one(sum);
    REQUIRE(merged.term_count() == 1);
    CHECK(merged.terms().begin()->second == OmegaLaurent(1) + OmegaLaurent::q_power(1));
}

TEST_CASE("presentation text form") {
    MarkedDisk sq(4);
    Triangulation T(sq, {Chord(0, 2)});
    DoubleChart D(T);
    auto labels = D.presentation_labels();
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] == "X[0-2]");
    CHECK(labels[1] == "B[0-2]");
}
