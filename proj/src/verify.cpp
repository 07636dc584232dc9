#include "qkd3/verify.hpp"

#include <algorithm>
#include <set>

namespace qkd3 {

namespace {

void add(VerifyReport& rep, const std::string& name, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
    rep.pass = rep.pass && pass;
}

}  // namespace

VerifyReport run_verify(int defect_trit) {
    VerifyReport rep;

    // ---- four mutually unbiased bases ----
    const StateSet mub = build_mub4();
    add(rep, "mub4 census", mub.n_rays() == 12 && mub.bases.size() == 4,
        "12 rays in 4 bases");
    {
        bool all_one = true;
        for (int m : mub.multiplicity) all_one = all_one && m == 1;
        add(rep, "mub4 multiplicities", all_one, "every ray belongs to exactly one basis");
    }
    {
        int cross = 0;
        bool ok = true;
        std::string bad;
        for (int i = 0; i < 12; ++i)
            for (int j = i + 1; j < 12; ++j) {
                const bool same_basis = i / 3 == j / 3;
                const Rational p = mub.overlap(i, j);
                if (same_basis) {
                    if (!p.is_zero()) { ok = false; bad = mub.tags[i] + "," + mub.tags[j]; }
                } else {
                    ++cross;
                    if (!(p == Rational(1, 3))) { ok = false; bad = mub.tags[i] + "," + mub.tags[j]; }
                }
            }
        ok = ok && cross == 54;
        add(rep, "mub4 unbiasedness", ok,
            ok ? "54 cross-basis pairs exactly 1/3, in-basis pairs exactly 0" : "violated at " + bad);
    }

    // ---- the 21-ray family ----
    StateSet t = build_table1();
    if (defect_trit >= 0 && defect_trit < t.n_rays())
        t.trits[defect_trit] = (t.trits[defect_trit] + 1) % 3;

    add(rep, "table census", t.n_rays() == 21 && t.bases.size() == 13,
        "21 rays form 13 bases");
    {
        int complete = 0, completed = 0;
        std::set<int> centers;
        for (const Basis& b : t.bases) {
            if (b.complete_as_found())
                ++complete;
            else {
                ++completed;
                centers.insert(b.added_member);
            }
        }
        add(rep, "basis completion census", complete == 4 && completed == 9 && centers.size() == 9,
            "4 complete bases, 9 pairs each completed by a distinct center ray");
    }
    {
        std::vector<StateVector> first12;
        for (int i = 0; i < t.n_rays(); ++i)
            if (t.columns[i] < 4) first12.push_back(t.vectors[i]);
        const BasisScan scan = enumerate_bases(first12);
        add(rep, "12-ray sub-family", scan.triples.size() == 4 && scan.pairs.size() == 9,
            "4 complete bases and 9 maximal orthogonal pairs");
    }
    {
        static const int expected[7] = {2, 3, 2, 3, 1, 1, 1};
        bool ok = true;
        int total = 0;
        for (int i = 0; i < t.n_rays(); ++i) {
            ok = ok && t.multiplicity[i] == expected[t.columns[i]];
            total += t.multiplicity[i];
        }
        ok = ok && total == 39;
        add(rep, "multiplicity pattern", ok,
            "M = 2,3,2,3,1,1,1 per column, sum 39 = 3*13");
    }
    {
        bool ok = true;
        for (int i = 0; i < t.n_rays(); ++i) {
            const Rational n = norm_sq(t.vectors[i]);
            ok = ok && (n == Rational(1) || n == Rational(2) || n == Rational(3) ||
                        n == Rational(6));
        }
        add(rep, "squared norms", ok, "all squared norms in {1,2,3,6}");
    }
    {
        int per_color[3] = {0, 0, 0};
        int per_color12[3] = {0, 0, 0};
        for (int i = 0; i < t.n_rays(); ++i) {
            ++per_color[t.trits[i]];
            if (t.columns[i] < 4) ++per_color12[t.trits[i]];
        }
        const bool ok = per_color[0] == 7 && per_color[1] == 7 && per_color[2] == 7 &&
                        per_color12[0] == 4 && per_color12[1] == 4 && per_color12[2] == 4;
        add(rep, "color census", ok, "7/7/7 over 21 rays, 4/4/4 over the cube rays");
    }
    {
        const ColoringReport cr = verify_coloring(t);
        add(rep, "coloring rules", cr.pass,
            cr.pass ? "orthogonal rays bicolored, bases tricolored, (1,1,1) kills the third column"
                    : cr.summary());
    }
    {
        bool ok = true;
        for (const Basis& b : t.bases)
            for (int x = 0; x < t.n_rays(); ++x) {
                Rational sum;
                for (int m : b.members) sum += t.overlap(x, m);
                ok = ok && sum == Rational(1);
            }
        add(rep, "resolution of identity", ok,
            "overlap probabilities over each basis sum to exactly 1");
    }

    return rep;
}

}  // namespace qkd3
