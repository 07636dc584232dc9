#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qkd3/statespace.hpp"

using namespace qkd3;

namespace {

StateVector iv(int a, int b, int c) {
    StateVector v;
    v.c = {ExactAmp(a), ExactAmp(b), ExactAmp(c)};
    v.tag = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    return v;
}

bool set_contains_ray(const StateSet& s, const StateVector& v) {
    for (const auto& u : s.vectors)
        if (same_ray(u, v)) return true;
    return false;
}

}  // namespace

TEST_CASE("overlap probability") {
    CHECK(overlap_prob(iv(1, 0, 0), iv(1, 1, 1)) == Rational(1, 3));
    CHECK(overlap_prob(iv(1, 0, 0), iv(0, 1, 0)) == Rational(0));
    CHECK(overlap_prob(iv(1, -1, 2), iv(1, 1, 1)) == Rational(2, 9));
    CHECK(overlap_prob(iv(1, 1, 1), iv(1, -1, 2)) == Rational(2, 9));   // symmetric
    CHECK_THROWS_AS(overlap_prob(iv(0, 0, 0), iv(1, 0, 0)), std::invalid_argument);
}

TEST_CASE("overlap is scale invariant") {
    const StateVector u = iv(1, -1, 2);
    const StateVector v = iv(1, 1, 0);
    const Rational base = overlap_prob(u, v);

    for (const ExactAmp& scale : {ExactAmp(-1), ExactAmp(2), ExactAmp::omega()}) {
        StateVector w = v;
        for (auto& c : w.c) c = c * scale;
        CHECK(overlap_prob(u, w) == base);
        CHECK(orthogonal(u, w) == orthogonal(u, v));
    }
}

TEST_CASE("ray identity up to sign") {
    CHECK(same_ray(iv(-1, 1, 0), iv(1, -1, 0)));
    CHECK_FALSE(same_ray(iv(1, 1, 0), iv(1, -1, 0)));
    CHECK(canonical_sign(iv(-1, 1, 0)).c[0] == ExactAmp(1));
    CHECK(canonical_sign(iv(0, -1, 1)).c[1] == ExactAmp(1));
}

TEST_CASE("four mutually unbiased bases") {
    const StateSet s = build_mub4();
    REQUIRE(s.n_rays() == 12);
    REQUIRE(s.bases.size() == 4);
    for (int m : s.multiplicity) CHECK(m == 1);

    int cross_pairs = 0;
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) {
            if (i / 3 == j / 3) {
                CHECK(s.overlap(i, j) == Rational(0));
            } else {
                CHECK(s.overlap(i, j) == Rational(1, 3));   // exact, no tolerance
                ++cross_pairs;
            }
        }
    CHECK(cross_pairs == 54);

    // trit labels are positions within each basis
    for (const Basis& b : s.bases)
        for (std::size_t pos = 0; pos < b.members.size(); ++pos)
            CHECK(s.trits[b.members[pos]] == static_cast<int>(pos));
}

TEST_CASE("21-ray family from the integer table") {
    const StateSet s = build_table1();
    REQUIRE(s.n_rays() == 21);
    REQUIRE(s.bases.size() == 13);

    SUBCASE("green row") {
        int green_count = 0;
        for (int i = 0; i < 21; ++i) green_count += s.trits[i] == 0;
        CHECK(green_count == 7);
        for (const auto& v : {iv(0, 0, 1), iv(1, 0, 1), iv(0, -1, 1), iv(1, -1, 1),
                              iv(1, -1, 2), iv(1, 1, 2), iv(2, -1, 1)}) {
            CAPTURE(v.tag);
            CHECK(set_contains_ray(s, v));
        }
    }

    SUBCASE("squared norms") {
        for (const auto& v : s.vectors) {
            const Rational n = norm_sq(v);
            CHECK((n == Rational(1) || n == Rational(2) || n == Rational(3) || n == Rational(6)));
        }
    }

    SUBCASE("multiplicities per column") {
        static const int expected[7] = {2, 3, 2, 3, 1, 1, 1};
        int total = 0;
        for (int i = 0; i < 21; ++i) {
            CHECK(s.multiplicity[i] == expected[s.columns[i]]);
            total += s.multiplicity[i];
        }
        CHECK(total == 39);
        CHECK(multiplicities(s) == s.multiplicity);
    }

    SUBCASE("completion census") {
        int complete = 0;
        std::set<int> centers;
        for (const Basis& b : s.bases) {
            if (b.complete_as_found())
                ++complete;
            else
                centers.insert(b.added_member);
        }
        CHECK(complete == 4);
        CHECK(centers.size() == 9);
        for (int c : centers) CHECK(s.columns[c] >= 4);
    }

    SUBCASE("known bases") {
        auto is_basis = [&](const StateVector& a, const StateVector& b, const StateVector& c) {
            for (const Basis& basis : s.bases) {
                int matched = 0;
                for (int m : basis.members)
                    for (const auto* v : {&a, &b, &c}) matched += same_ray(s.vectors[m], *v);
                if (matched == 3) return true;
            }
            return false;
        };
        CHECK(is_basis(iv(0, 0, 1), iv(1, 0, 0), iv(0, 1, 0)));
        CHECK(is_basis(iv(1, -1, 2), iv(1, 1, 0), iv(-1, 1, 1)));
    }

    SUBCASE("resolution of identity at probability level") {
        for (const Basis& b : s.bases)
            for (int x = 0; x < 21; ++x) {
                Rational sum;
                for (int m : b.members) sum += s.overlap(x, m);
                CHECK(sum == Rational(1));
            }
    }
}

TEST_CASE("basis enumeration over all 21 rays") {
    const StateSet s = build_table1();
    const BasisScan scan = enumerate_bases(s.vectors);
    CHECK(scan.triples.size() == 13);
    // every orthogonal pair lies inside one of the 13 bases
    CHECK(scan.pairs.empty());
    int orth_pairs = 0;
    for (int i = 0; i < 21; ++i)
        for (int j = i + 1; j < 21; ++j) orth_pairs += orthogonal(s.vectors[i], s.vectors[j]);
    CHECK(orth_pairs == 39);
}

TEST_CASE("basis enumeration over the cube rays") {
    const StateSet s = build_table1();
    std::vector<StateVector> first12;
    for (int i = 0; i < 21; ++i)
        if (s.columns[i] < 4) first12.push_back(s.vectors[i]);
    REQUIRE(first12.size() == 12);

    const BasisScan scan = enumerate_bases(first12);
    CHECK(scan.triples.size() == 4);
    CHECK(scan.pairs.size() == 9);

    // every maximal pair is completed by exactly one center ray
    for (const auto& [a, b] : scan.pairs) {
        int completions = 0;
        for (int i = 0; i < 21; ++i) {
            if (s.columns[i] < 4) continue;
            completions += orthogonal(s.vectors[i], first12[a]) &&
                           orthogonal(s.vectors[i], first12[b]);
        }
        CHECK(completions == 1);
    }
}

TEST_CASE("basis enumeration rejects duplicate rays") {
    std::vector<StateVector> vecs = {iv(1, 0, 0), iv(-1, 0, 0)};
    CHECK_THROWS_AS(enumerate_bases(vecs), std::invalid_argument);
}

TEST_CASE("coloring verification") {
    const StateSet s = build_table1();
    const ColoringReport ok = verify_coloring(s);
    CHECK(ok.pass);
    CHECK(ok.orthogonal_pairs_bicolored);
    CHECK(ok.bases_tricolored);
    CHECK(ok.ray111_orthogonal_to_third_column);

    // (1,1,1) against the third column, by hand
    const StateVector ones = iv(1, 1, 1);
    for (int i = 0; i < 21; ++i)
        if (s.columns[i] == 2) CHECK(orthogonal(ones, s.vectors[i]));

    // a flipped color must be caught and the offending pair named
    StateSet bad = s;
    bad.trits[0] = 1;   // (0,0,1) green -> red, collides with an orthogonal red ray
    bad.vectors[0].trit = 1;
    const ColoringReport rep = verify_coloring(bad);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.failures.empty());
    bool names_pair = false;
    for (const auto& f : rep.failures)
        names_pair = names_pair || f.find("(0,0,1)") != std::string::npos;
    CHECK(names_pair);
}

TEST_CASE("qubit sets") {
    const StateSet bb = build_bb84();
    CHECK(bb.dimension == 2);
    CHECK(bb.n_rays() == 4);
    CHECK(bb.bases.size() == 2);
    CHECK(bb.overlap(0, 2) == Rational(1, 2));
    CHECK(bb.overlap(0, 1) == Rational(0));

    const StateSet six = build_six_state();
    CHECK(six.dimension == 2);
    CHECK(six.n_rays() == 6);
    CHECK(six.bases.size() == 3);
    CHECK_FALSE(six.component_backed());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Rational expected = i == j          ? Rational(1)
                                      : i / 2 == j / 2 ? Rational(0)
                                                       : Rational(1, 2);
            CHECK(six.overlap(i, j) == expected);
        }
    // resolution of identity holds for the synthesized table too
    for (const Basis& b : six.bases)
        for (int x = 0; x < 6; ++x) {
            Rational sum;
            for (int m : b.members) sum += six.overlap(x, m);
            CHECK(sum == Rational(1));
        }
}

TEST_CASE("state set json export") {
    const auto j = state_set_json(build_table1());
    CHECK(j["dimension"] == 3);
    CHECK(j["n_rays"] == 21);
    CHECK(j["n_bases"] == 13);
    CHECK(j["rays"].size() == 21);
    CHECK(j["bases"].size() == 13);
    CHECK(j["rays"][0]["color"] == "green");
    CHECK(j["rays"][0]["components"].size() == 3);
    CHECK(j["rays"][0]["multiplicity"] == 2);
    CHECK(j["bases"][0]["members"].size() == 3);

    // stable bytes across invocations
    CHECK(j.dump() == state_set_json(build_table1()).dump());
}
