#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "aarhus/canonical.hpp"
#include "aarhus/diagram.hpp"
#include "aarhus/enumerate.hpp"
#include "aarhus/errors.hpp"
#include "test_support.hpp"

using namespace aarhus;
using namespace aarhus::testing;

TEST_CASE("degree") {
    CHECK(empty_diagram().degree() == 0);
    CHECK(theta().degree() == 1);
    CHECK(strut(L("x"), L("y")).degree() == 1);
    CHECK(wheel2(L("x"), L("x")).degree() == 2);
    CHECK(y_graph(L("x"), L("y"), L("z")).degree() == 2);
}

TEST_CASE("canonical: theta transposition flips the sign") {
    Diagram t = theta();
    auto c = canonical_form(t);
    CHECK(c.sign != 0);

    Diagram flipped = relabel(t, {0, 1}, {0, 0}, {true, false});
    auto cf = canonical_form(flipped);
    CHECK(cf.key == c.key);
    CHECK(cf.sign == -c.sign);
}

TEST_CASE("canonical: loops are AS-zero") {
    CHECK(canonical_form(dumbbell()).sign == 0);

    // vertex with a loop and one leg
    Diagram d;
    d.set_internal_count(1);
    int j = d.add_leg(L("x"));
    d.add_edge(d.port_internal(0, 0), d.port_internal(0, 1));
    d.add_edge(d.port_internal(0, 2), d.port_leg(j));
    CHECK(canonical_form(d).sign == 0);
}

TEST_CASE("canonical: symmetric Y legs vanish") {
    CHECK(canonical_form(y_graph(L("x"), L("x"), L("x"))).sign == 0);
    CHECK(canonical_form(y_graph(L("x"), L("x"), L("y"))).sign == 0);
    CHECK(canonical_form(y_graph(L("x"), L("y"), L("z"))).sign != 0);
}

TEST_CASE("canonical: w2 presentations agree (exhaustive relabeling)") {
    Diagram w = wheel2(L("x"), L("x"));
    auto base = canonical_form(w);
    CHECK(base.sign != 0);
    // every vertex permutation x slot rotation x flip pattern
    for (int p = 0; p < 2; ++p)
        for (int r0 = 0; r0 < 3; ++r0)
            for (int r1 = 0; r1 < 3; ++r1)
                for (int f = 0; f < 4; ++f) {
                    std::vector<int> vperm = p ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
                    std::vector<bool> flip{(f & 1) != 0, (f & 2) != 0};
                    int parity = (flip[0] ? -1 : 1) * (flip[1] ? -1 : 1);
                    auto c = canonical_form(relabel(w, vperm, {r0, r1}, flip));
                    CHECK(c.key == base.key);
                    CHECK(c.sign == parity * base.sign);
                }
}

TEST_CASE("canonical: idempotent and sign +1 on canonical forms") {
    std::mt19937_64 rng(7);
    for (int deg = 1; deg <= 2; ++deg) {
        for (const auto& c : spanning_aempty(deg)) {
            auto again = canonical_form(c.diagram);
            CHECK(again.key == c.key);
            CHECK(again.sign == 1);
            int parity = 1;
            Diagram shuffled = random_relabel(c.diagram, rng, &parity);
            auto cs = canonical_form(shuffled);
            CHECK(cs.key == c.key);
            CHECK(cs.sign == parity);
        }
    }
}

TEST_CASE("validate") {
    LabelSet X = make_label_set({"x", "y"});
    CHECK(theta().validate(Space::B, X) == "closed component (no legs)");
    CHECK(strut(L("x"), L("y")).validate(Space::Bplus, X) == "component without trivalent vertex");
    CHECK(strut(L("x"), L("y")).validate(Space::B, X) == "");
    CHECK(theta().validate(Space::Aempty, X) == "");
    CHECK(wheel2(L("x"), L("x")).validate(Space::B, X) == "");
    CHECK(strut(L("x"), L("z")).validate(Space::B, X) != "");
}

TEST_CASE("enumerate: low degrees") {
    LabelSet X = make_label_set({"x"});
    auto a0 = enumerate_diagrams(Space::Aempty, 0, {});
    REQUIRE(a0.size() == 1);
    CHECK(a0[0].diagram == empty_diagram());

    // theta is the only nonzero class in degree 1 (the dumbbell's tadpoles
    // are AS-zero)
    auto a1 = enumerate_diagrams(Space::Aempty, 1, {});
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].key == canonical_form(theta()).key);

    auto b1 = enumerate_diagrams(Space::B, 1, X);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].key == canonical_form(strut(L("x"), L("x"))).key);
}

TEST_CASE("enumerate: no two classes isomorphic, degree invariant, edge count") {
    LabelSet X = make_label_set({"x", "y"});
    std::mt19937_64 rng(99);
    for (int deg = 1; deg <= 3; ++deg) {
        auto classes = enumerate_diagrams(Space::Aempty, deg, {});
        std::set<std::string> keys;
        for (const auto& c : classes) {
            CHECK(keys.insert(c.key).second);
            CHECK(c.diagram.degree() == deg);
            const int t = c.diagram.internal_count();
            CHECK(static_cast<int>(c.diagram.edges().size()) == (3 * t) / 2);
            Diagram shuffled = random_relabel(c.diagram, rng, nullptr);
            CHECK(shuffled.degree() == deg);
            CHECK(canonical_form(shuffled).key == c.key);
        }
    }
    for (int deg = 1; deg <= 2; ++deg) {
        for (const auto& c : enumerate_diagrams(Space::B, deg, X)) {
            const int t = c.diagram.internal_count();
            const int u = c.diagram.leg_count();
            CHECK(static_cast<int>(c.diagram.edges().size()) == (3 * t + u) / 2);
            CHECK(c.diagram.validate(Space::B, X) == "");
        }
    }
}

TEST_CASE("enumerate: cap raises LimitExceeded") {
    EnumerationLimits lim;
    lim.aempty_cap = 2;
    CHECK_THROWS_AS(enumerate_diagrams(Space::Aempty, 3, {}, lim), LimitExceeded);
}

TEST_CASE("aup spanning basics") {
    LabelSet X = make_label_set({"x"});
    auto s1 = spanning_aup(1, X);
    // one chord with both ends on the line
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].diagram.lines().size() == 1);
    CHECK(s1[0].diagram.lines()[0].attachments == 2);
    CHECK(s1[0].diagram.internal_count() == 0);
}
