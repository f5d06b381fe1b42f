#include <catch2/catch_amalgamated.hpp>

#include "qdisk/lamination.hpp"

using namespace qdisk;

TEST_CASE("validate A-laminations") {
    MarkedDisk sq(4);
    CHECK(validate(ALamination{sq, {}}).ok);

    ALamination bad{sq, {{Chord(0, 2), -1}}};
    auto r = validate(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.violation.find("diagonal positivity") != std::string::npos);

    ALamination crossing{sq, {{Chord(0, 2), 1}, {Chord(1, 3), 1}}};
    CHECK_FALSE(validate(crossing).ok);

    ALamination nonzero{sq, {{Chord(0, 1), 1}}};
    auto r2 = validate(nonzero);
    CHECK_FALSE(r2.ok);
    CHECK(r2.violation.find("vertex sum") != std::string::npos);
}

TEST_CASE("square diagonals admit no boundary completion") {
    // The four vertex equations for a single weighted square diagonal are
    // inconsistent (adding the equations at vertices 0 and 2 and
    // subtracting those at 1 and 3 leaves 2w = 0), so the only valid
    // laminations on the square are boundary-only.
    MarkedDisk sq(4);
    for (const ALamination& l : enumerate_alaminations(sq, 2, 1))
        for (const auto& [c, w] : l.weights) CHECK(is_boundary(sq, c));
}

TEST_CASE("pentagon single-diagonal lamination from the vertex equations") {
    MarkedDisk pent(5);
    ALamination ok{pent,
                   {{Chord(0, 2), 1}, {Chord(2, 3), -1}, {Chord(3, 4), 1}, {Chord(0, 4), -1}}};
    CHECK(validate(ok).ok);
    // Same weights with one boundary edge off fails.
    ALamination off = ok;
    off.weights[Chord(3, 4)] = 2;
    CHECK_FALSE(validate(off).ok);
}

TEST_CASE("phi") {
    MarkedDisk pent(5);
    DLamination empty = phi(ALamination{pent, {}});
    CHECK(empty.front.empty());
    CHECK(empty.back.empty());

    ALamination a{pent,
                  {{Chord(0, 2), 1}, {Chord(2, 3), -1}, {Chord(3, 4), 1}, {Chord(0, 4), -1}}};
    DLamination d = phi(a);
    CHECK(d.back == std::map<Chord, int>{{Chord(0, 2), 1}, {Chord(3, 4), 1}});
    CHECK(d.front == std::map<Chord, int>{{Chord(2, 3), 1}, {Chord(0, 4), 1}});
    CHECK(validate(d).ok);

    CHECK_THROWS_AS(phi(ALamination{pent, {{Chord(0, 1), 1}}}), std::invalid_argument);
}

TEST_CASE("phi output always validates on enumerated laminations") {
    for (int n = 4; n <= 6; ++n) {
        for (const ALamination& l : enumerate_alaminations(MarkedDisk(n), 2, 1)) {
            CHECK(validate(l).ok);
            CHECK(validate(phi(l)).ok);
        }
    }
}

TEST_CASE("enumeration") {
    MarkedDisk pent(5);
    // Bound 0: boundary-only laminations; includes the empty one.
    auto zero = enumerate_alaminations(pent, 0, 0);
    CHECK(!zero.empty());
    bool has_empty = false;
    for (const auto& l : zero) {
        CHECK(validate(l).ok);
        has_empty |= l.weights.empty();
        for (const auto& [c, w] : l.weights) CHECK(is_boundary(pent, c));
    }
    CHECK(has_empty);
    // Bound 1 includes every single-diagonal lamination.
    auto one = enumerate_alaminations(pent, 1, 0);
    for (int a = 0; a < 5; ++a) {
        const Chord d(a, (a + 2) % 5);
        bool found = false;
        for (const auto& l : one) found |= l.weights.contains(d);
        CHECK(found);
    }
    // Duplicate-free.
    for (size_t i = 0; i + 1 < one.size(); ++i) CHECK(!(one[i] == one[i + 1]));
    CHECK_THROWS_AS(enumerate_alaminations(MarkedDisk(13), 1), std::invalid_argument);
}

TEST_CASE("enumeration is closed under rotation") {
    MarkedDisk pent(5);
    auto all = enumerate_alaminations(pent, 2, 0);
    auto rotate = [&](const ALamination& l) {
        ALamination r{pent, {}};
        for (const auto& [c, w] : l.weights)
            r.weights[Chord((c.a + 1) % 5, (c.b + 1) % 5)] = w;
        return r;
    };
    for (const auto& l : all) {
        ALamination r = rotate(l);
        CHECK(std::binary_search(all.begin(), all.end(), r));
    }
}

TEST_CASE("pentagon laminations with weights <= 2 cover all diagonal configs") {
    MarkedDisk pent(5);
    auto all = enumerate_alaminations(pent, 2, 0);
    // 1 empty + 5 single diagonals x 2 weights + 5 noncrossing pairs x 4.
    CHECK(all.size() >= 1 + 10 + 20);
    // Hexagon sampling pool is large enough for the acceptance runs.
    CHECK(enumerate_alaminations(MarkedDisk(6), 2, 1).size() >= 100);
}

TEST_CASE("D-lamination validation and enumeration") {
    MarkedDisk sq(4);
    CHECK(validate(DLamination{sq, {}, {}}).ok);
    CHECK_FALSE(validate(DLamination{sq, {{Chord(0, 1), 1}}, {{Chord(0, 1), 1}}}).ok);
    CHECK_FALSE(validate(DLamination{sq, {{Chord(0, 2), 1}}, {}}).ok);
    CHECK_FALSE(validate(DLamination{sq, {{Chord(0, 2), -1}}, {{Chord(0, 2), -1}}}).ok);
    // front 0-2 and back 1-3 touch different vertices: totals differ.
    DLamination d{sq, {{Chord(0, 2), 1}}, {{Chord(1, 3), 1}}};
    CHECK_FALSE(validate(d).ok);
    // front 0-2 against back 0-2 is fine.
    CHECK(validate(DLamination{sq, {{Chord(0, 2), 1}}, {{Chord(0, 2), 1}}}).ok);

    auto pool = enumerate_dlaminations(sq, 1, 50);
    CHECK(pool.size() >= 9);
    for (const auto& dl : pool) CHECK(validate(dl).ok);
    auto pent_pool = enumerate_dlaminations(MarkedDisk(5), 2, 200);
    CHECK(pent_pool.size() >= 100);
    for (const auto& dl : pent_pool) CHECK(validate(dl).ok);
}
