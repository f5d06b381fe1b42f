#include <catch2/catch_amalgamated.hpp>

#include "qdisk/io.hpp"

using namespace qdisk;

TEST_CASE("triangulation JSON round trip") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    json j = triangulation_json(T);
    CHECK(j.dump() == R"({"diagonals":[[0,2],[0,3]],"n":5})");
    CHECK(parse_triangulation(j) == T);
    CHECK_THROWS_AS(parse_triangulation(json{{"n", 5}, {"diagonals", json::array({json::array({0, 2})})}}),
                    std::invalid_argument);
}

TEST_CASE("chart spec strings") {
    MarkedDisk pent(5);
    Triangulation T = parse_chart_spec(pent, "0-2,0-3");
    CHECK(T.diagonals() == std::vector<Chord>{Chord(0, 2), Chord(0, 3)});
    CHECK_THROWS_AS(parse_chart_spec(pent, "02"), std::invalid_argument);
    MarkedDisk tri(3);
    CHECK(parse_chart_spec(tri, "").diagonals().empty());
}

TEST_CASE("lamination JSON") {
    MarkedDisk pent(5);
    ALamination a{pent,
                  {{Chord(0, 2), 1}, {Chord(2, 3), -1}, {Chord(3, 4), 1}, {Chord(0, 4), -1}}};
    json ja = alamination_json(a);
    ALamination back = parse_alamination(ja, 5);
    CHECK(back == a);

    DLamination d = phi(a);
    json jd = dlamination_json(d);
    CHECK(parse_dlamination(jd, 5) == d);
    // Shape: front/back arrays of {chord, w}.
    CHECK(jd.contains("front"));
    CHECK(jd.at("back").is_array());
}

TEST_CASE("multicurve JSON") {
    Multicurve m{{Chord(0, 2), 2}, {Chord(2, 4), 1}};
    json j = multicurve_json(m);
    CHECK(j.dump() == R"({"curves":[{"chord":[0,2],"mult":2},{"chord":[2,4],"mult":1}]})");
    CHECK(parse_multicurve(j) == m);
}

TEST_CASE("IA text form golden") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    DualityContext ctx(T);
    // Empty lamination prints 1.
    CHECK(ia_text(i_a_q(ALamination{pent, {}}, ctx)) == "1");
    // The X-chart value of the pentagon single-diagonal example is a
    // positive q-Laurent polynomial; golden-pinned text.
    ALamination l{pent,
                  {{Chord(0, 2), 1}, {Chord(2, 3), -1}, {Chord(3, 4), 1}, {Chord(0, 4), -1}}};
    const std::string text = ia_text(i_a_q(l, ctx));
    CHECK(!text.empty());
    CHECK(text.find("X[") != std::string::npos);
    // Determinism.
    CHECK(text == ia_text(i_a_q(l, ctx)));
}

TEST_CASE("ID JSON shape") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    DualityContext ctx(T);
    IDResult r = i_d_q(phi(ALamination{pent,
                                       {{Chord(0, 2), 1},
                                        {Chord(2, 3), -1},
                                        {Chord(3, 4), 1},
                                        {Chord(0, 4), -1}}}),
                       ctx);
    json j = id_json(r, ctx.dchart());
    CHECK(j.contains("n_l"));
    CHECK(j.at("denominators").is_array());
    CHECK(j.at("numerator").is_string());
    // Denominators print with the constant term first.
    for (const auto& den : j.at("denominators")) {
        const std::string f = den.at("f").get<std::string>();
        CHECK(f.rfind("1", 0) == 0);
    }
    // Empty lamination: numerator "1", n_l 0.
    json je = id_json(i_d_q(DLamination{pent, {}, {}}, ctx), ctx.dchart());
    CHECK(je.at("numerator").get<std::string>() == "1");
    CHECK(je.at("n_l").get<long long>() == 0);
}

TEST_CASE("classical text") {
    MarkedDisk pent(5);
    Triangulation T(pent, {Chord(0, 2), Chord(0, 3)});
    DualityContext ctx(T);
    ALamination l{pent,
                  {{Chord(0, 2), 1}, {Chord(2, 3), -1}, {Chord(3, 4), 1}, {Chord(0, 4), -1}}};
    const IAResult r = i_a_q(l, ctx);
    const std::string cls = classical_x_text(r.value.eval_omega_one(), T);
    CHECK(!cls.empty());
    CHECK(cls.find("q") == std::string::npos);
}
