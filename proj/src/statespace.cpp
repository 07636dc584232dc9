#include "qkd3/statespace.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkd3 {

ExactAmp inner(const StateVector& u, const StateVector& v) {
    ExactAmp s;
    for (int i = 0; i < 3; ++i) s = s + u.c[i].conj() * v.c[i];
    return s;
}

Rational norm_sq(const StateVector& v) {
    Rational s;
    for (int i = 0; i < 3; ++i) s += v.c[i].norm_sq();
    return s;
}

Rational overlap_prob(const StateVector& u, const StateVector& v) {
    if (u.is_zero() || v.is_zero())
        throw std::invalid_argument("overlap_prob: zero vector");
    return inner(u, v).norm_sq() / (norm_sq(u) * norm_sq(v));
}

bool orthogonal(const StateVector& u, const StateVector& v) {
    return inner(u, v).is_zero();
}

bool same_ray(const StateVector& u, const StateVector& v) {
    return overlap_prob(u, v) == Rational(1);
}

StateVector canonical_sign(const StateVector& v) {
    for (const ExactAmp& a : v.c) {
        if (a.is_zero()) continue;
        bool flip = a.re.is_negative() || (a.re.is_zero() && a.im3.is_negative());
        if (!flip) return v;
        StateVector w = v;
        for (auto& cc : w.c) cc = -cc;
        return w;
    }
    return v;
}

const char* color_name(int trit) {
    switch (trit) {
        case 0: return "green";
        case 1: return "red";
        case 2: return "blue";
        default: return "?";
    }
}

BasisScan enumerate_bases(const std::vector<StateVector>& vecs) {
    const std::size_t n = vecs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (same_ray(vecs[i], vecs[j]))
                throw std::invalid_argument("enumerate_bases: duplicate ray " +
                                            vecs[i].tag + " / " + vecs[j].tag);

    std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            orth[i][j] = orth[j][i] = orthogonal(vecs[i], vecs[j]) ? 1 : 0;

    BasisScan scan;
    std::vector<std::vector<char>> in_triple(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!orth[i][j]) continue;
            for (std::size_t k = j + 1; k < n; ++k)
                if (orth[i][k] && orth[j][k]) {
                    scan.triples.push_back(
                        {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
                    in_triple[i][j] = in_triple[i][k] = in_triple[j][k] = 1;
                    in_triple[j][i] = in_triple[k][i] = in_triple[k][j] = 1;
                }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (orth[i][j] && !in_triple[i][j])
                scan.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return scan;
}

std::vector<int> multiplicities(const StateSet& s) {
    std::vector<int> m(s.n_rays(), 0);
    for (const Basis& b : s.bases)
        for (int idx : b.members) ++m[idx];
    return m;
}

namespace {

void fill_overlap_table(StateSet& s) {
    const int n = s.n_rays();
    s.overlap_table.assign(static_cast<std::size_t>(n) * n, Rational());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.overlap_table[static_cast<std::size_t>(i) * n + j] =
                overlap_prob(s.vectors[i], s.vectors[j]);
}

StateVector make_vec(std::array<ExactAmp, 3> c, int trit, std::string tag) {
    StateVector v;
    v.c = c;
    v.trit = trit;
    v.tag = std::move(tag);
    return v;
}

StateVector int_vec(int a, int b, int c, int trit, std::string tag) {
    return make_vec({ExactAmp(a), ExactAmp(b), ExactAmp(c)}, trit, std::move(tag));
}

}  // namespace

StateSet build_mub4() {
    const ExactAmp one = ExactAmp::one();
    const ExactAmp w = ExactAmp::omega();
    const ExactAmp wb = ExactAmp::omega_bar();
    const ExactAmp zero = ExactAmp::zero();

    StateSet s;
    s.dimension = 3;
    auto add_basis = [&](std::array<std::array<ExactAmp, 3>, 3> rows, const std::string& name) {
        Basis b;
        for (int pos = 0; pos < 3; ++pos) {
            b.members.push_back(s.n_rays());
            s.vectors.push_back(make_vec(rows[pos], pos, name + ":" + std::to_string(pos)));
            s.trits.push_back(pos);
            s.tags.push_back(s.vectors.back().tag);
        }
        s.bases.push_back(std::move(b));
    };

    add_basis({{{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}}, "computational");
    add_basis({{{one, one, one}, {one, w, wb}, {one, wb, w}}}, "fourier");
    add_basis({{{w, one, one}, {one, w, one}, {one, one, w}}}, "fourier+");
    add_basis({{{wb, one, one}, {one, wb, one}, {one, one, wb}}}, "fourier-");

    s.multiplicity = multiplicities(s);
    fill_overlap_table(s);
    return s;
}

StateSet build_table1() {
    // Rows are colors (green, red, blue), columns are the published layout:
    // columns 0-3 are the 12 cube rays, columns 4-6 the 9 center rays.
    static const int table[3][7][3] = {
        {{0, 0, 1}, {1, 0, 1}, {0, -1, 1}, {1, -1, 1}, {1, -1, 2}, {1, 1, 2}, {2, -1, 1}},
        {{1, 0, 0}, {1, 1, 0}, {1, 0, -1}, {1, 1, -1}, {2, 1, -1}, {2, 1, 1}, {1, 2, -1}},
        {{0, 1, 0}, {0, 1, 1}, {-1, 1, 0}, {-1, 1, 1}, {-1, 2, 1}, {1, 2, 1}, {-1, 1, 2}},
    };

    StateSet s;
    s.dimension = 3;
    for (int color = 0; color < 3; ++color)
        for (int col = 0; col < 7; ++col) {
            const int* e = table[color][col];
            std::string tag = "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                              "," + std::to_string(e[2]) + ")";
            s.vectors.push_back(int_vec(e[0], e[1], e[2], color, tag));
            s.trits.push_back(color);
            s.tags.push_back(tag);
            s.columns.push_back(col);
        }

    BasisScan scan = enumerate_bases(s.vectors);
    for (const auto& t : scan.triples) {
        Basis b;
        b.members = {t[0], t[1], t[2]};
        int n_center = 0;
        for (int idx : b.members)
            if (s.columns[idx] >= 4) {
                b.added_member = idx;
                ++n_center;
            }
        if (n_center > 1)
            throw std::logic_error("build_table1: basis with several center rays");
        s.bases.push_back(std::move(b));
    }
    if (s.bases.size() != 13)
        throw std::logic_error("build_table1: expected 13 bases");

    s.multiplicity = multiplicities(s);
    fill_overlap_table(s);
    return s;
}

StateSet build_bb84() {
    StateSet s;
    s.dimension = 2;
    auto add = [&](int a, int b, int bit, const std::string& tag) {
        s.vectors.push_back(int_vec(a, b, 0, bit, tag));
        s.trits.push_back(bit);
        s.tags.push_back(tag);
    };
    add(1, 0, 0, "Z:0");
    add(0, 1, 1, "Z:1");
    add(1, 1, 0, "X:0");
    add(1, -1, 1, "X:1");
    s.bases.push_back({{0, 1}, -1});
    s.bases.push_back({{2, 3}, -1});
    s.multiplicity = multiplicities(s);
    fill_overlap_table(s);
    return s;
}

StateSet build_six_state() {
    // The circular qubit basis needs the amplitude i, which lies outside
    // the exact ring used here, and no third mutually unbiased qubit basis
    // exists inside it. Every computation downstream consumes only squared
    // overlaps, so this set carries its exact overlap table directly:
    // within-basis identity, 1/2 across bases.
    StateSet s;
    s.dimension = 2;
    const char* names[3] = {"Z", "X", "Y"};
    for (int b = 0; b < 3; ++b) {
        Basis basis;
        for (int bit = 0; bit < 2; ++bit) {
            basis.members.push_back(s.n_rays());
            s.trits.push_back(bit);
            s.tags.push_back(std::string(names[b]) + ":" + std::to_string(bit));
        }
        s.bases.push_back(std::move(basis));
    }
    const std::size_t n = 6;
    s.overlap_table.assign(n * n, Rational(1, 2));
    for (std::size_t i = 0; i < n; ++i) {
        s.overlap_table[i * n + i] = Rational(1);
        const std::size_t partner = i ^ 1;   // the other member of the same basis
        s.overlap_table[i * n + partner] = Rational(0);
    }
    s.multiplicity = multiplicities(s);
    return s;
}

std::string ColoringReport::summary() const {
    if (pass) return "coloring: all checks passed";
    std::string out = "coloring: FAILED";
    for (const auto& f : failures) out += "\n  " + f;
    return out;
}

ColoringReport verify_coloring(const StateSet& s) {
    ColoringReport r;
    if (!s.component_backed()) {
        r.pass = false;
        r.failures.push_back("set carries no components to verify");
        return r;
    }
    const int n = s.n_rays();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (orthogonal(s.vectors[i], s.vectors[j]) && s.trits[i] == s.trits[j]) {
                r.orthogonal_pairs_bicolored = false;
                r.failures.push_back("orthogonal pair with equal color: " + s.tags[i] +
                                     " and " + s.tags[j] + " both " + color_name(s.trits[i]));
            }

    for (std::size_t bi = 0; bi < s.bases.size(); ++bi) {
        const Basis& b = s.bases[bi];
        std::vector<int> seen(static_cast<std::size_t>(s.dimension), 0);
        bool ok = b.members.size() == static_cast<std::size_t>(s.dimension);
        for (int idx : b.members)
            if (idx >= 0 && s.trits[idx] >= 0 && s.trits[idx] < s.dimension)
                ++seen[s.trits[idx]];
        for (int cnt : seen) ok = ok && cnt == 1;
        if (!ok) {
            r.bases_tricolored = false;
            r.failures.push_back("basis " + std::to_string(bi) +
                                 " does not carry each symbol exactly once");
        }
    }

    if (n == 21 && !s.columns.empty()) {
        StateVector all_ones = int_vec(1, 1, 1, -1, "(1,1,1)");
        std::vector<int> third_colors;
        for (int i = 0; i < n; ++i)
            if (s.columns[i] == 2) {
                if (!orthogonal(all_ones, s.vectors[i])) {
                    r.ray111_orthogonal_to_third_column = false;
                    r.failures.push_back("(1,1,1) not orthogonal to " + s.tags[i]);
                }
                third_colors.push_back(s.trits[i]);
            }
        std::sort(third_colors.begin(), third_colors.end());
        if (third_colors != std::vector<int>{0, 1, 2}) {
            r.ray111_orthogonal_to_third_column = false;
            r.failures.push_back("third column does not carry three different colors");
        }
    }

    r.pass = r.orthogonal_pairs_bicolored && r.bases_tricolored &&
             r.ray111_orthogonal_to_third_column;
    return r;
}

nlohmann::ordered_json state_set_json(const StateSet& s) {
    nlohmann::ordered_json j;
    j["dimension"] = s.dimension;
    j["n_rays"] = s.n_rays();
    j["n_bases"] = s.bases.size();

    auto rat = [](const Rational& r) {
        return nlohmann::ordered_json{{"num", r.num()}, {"den", r.den()}};
    };

    nlohmann::ordered_json rays = nlohmann::ordered_json::array();
    for (int i = 0; i < s.n_rays(); ++i) {
        nlohmann::ordered_json ray;
        ray["index"] = i;
        ray["tag"] = s.tags[i];
        ray["color"] = color_name(s.trits[i]);
        ray["trit"] = s.trits[i];
        ray["multiplicity"] = s.multiplicity[i];
        if (!s.columns.empty()) ray["column"] = s.columns[i];
        if (s.component_backed()) {
            nlohmann::ordered_json comps = nlohmann::ordered_json::array();
            for (const ExactAmp& a : s.vectors[i].c)
                comps.push_back({{"re", rat(a.re)}, {"im_sqrt3", rat(a.im3)}});
            ray["components"] = comps;
        }
        nlohmann::ordered_json in_bases = nlohmann::ordered_json::array();
        for (std::size_t bi = 0; bi < s.bases.size(); ++bi)
            if (std::find(s.bases[bi].members.begin(), s.bases[bi].members.end(), i) !=
                s.bases[bi].members.end())
                in_bases.push_back(bi);
        ray["bases"] = in_bases;
        rays.push_back(ray);
    }
    j["rays"] = rays;

    nlohmann::ordered_json bases = nlohmann::ordered_json::array();
    for (std::size_t bi = 0; bi < s.bases.size(); ++bi) {
        const Basis& b = s.bases[bi];
        nlohmann::ordered_json jb;
        jb["index"] = bi;
        jb["members"] = b.members;
        jb["complete"] = b.complete_as_found();
        if (b.added_member >= 0)
            jb["added_member"] = b.added_member;
        else
            jb["added_member"] = nullptr;
        bases.push_back(jb);
    }
    j["bases"] = bases;
    return j;
}

}  // namespace qkd3
