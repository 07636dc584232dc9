#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkd3/amplitude.hpp"

namespace qkd3 {

/// An unnormalized ray in the 3-dimensional state space. Qubit states are
/// embedded with a zero third component. Probabilities are always formed
/// as |<u,v>|^2 / (|u|^2 |v|^2), so no normalization is ever needed and
/// every value stays inside the rational ring.
struct StateVector {
    std::array<ExactAmp, 3> c{};
    int trit = -1;           // symbol carried by the ray (same in every basis containing it)
    std::string tag;

    bool is_zero() const {
        return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
    }
};

ExactAmp inner(const StateVector& u, const StateVector& v);
Rational norm_sq(const StateVector& v);

/// Exact transition probability |<u,v>|^2 / (|u|^2 |v|^2) in [0,1].
/// Symmetric and invariant under rescaling either ray by any nonzero
/// amplitude. Throws std::invalid_argument on a zero vector.
Rational overlap_prob(const StateVector& u, const StateVector& v);

bool orthogonal(const StateVector& u, const StateVector& v);
bool same_ray(const StateVector& u, const StateVector& v);

/// Sign-canonical representative of the ray: the first nonzero component
/// gets a positive real part (or positive imaginary part if its real part
/// is zero). Used for duplicate-ray detection.
StateVector canonical_sign(const StateVector& v);

/// Three (or two, for qubit sets) mutually orthogonal rays, addressed by
/// index into the owning StateSet. added_member >= 0 marks a basis that was
/// only an orthogonal pair within the original vector family and had to be
/// completed by that ray.
struct Basis {
    std::vector<int> members;
    int added_member = -1;

    bool complete_as_found() const { return added_member < 0; }
};

/// A family of rays together with all the bases they form. Built once,
/// immutable afterwards; safe to share across threads.
struct StateSet {
    int dimension = 3;
    std::vector<StateVector> vectors;   // empty for sets specified by their overlap table only
    std::vector<int> trits;             // per ray
    std::vector<std::string> tags;      // per ray
    std::vector<int> columns;           // per ray, Table-I column (empty when not applicable)
    std::vector<Basis> bases;
    std::vector<int> multiplicity;      // number of bases containing each ray
    std::vector<Rational> overlap_table;

    int n_rays() const { return static_cast<int>(trits.size()); }
    bool component_backed() const { return !vectors.empty(); }

    const Rational& overlap(int i, int j) const {
        return overlap_table[static_cast<std::size_t>(i) * trits.size() + j];
    }
};

/// Color convention for trit labels: green=0, red=1, blue=2.
const char* color_name(int trit);

/// All maximal mutually-orthogonal triples and all orthogonal pairs not
/// contained in any triple, over the given rays. Exact orthogonality test,
/// O(n^3) scan. Throws std::invalid_argument if two inputs are the same ray.
struct BasisScan {
    std::vector<std::array<int, 3>> triples;
    std::vector<std::pair<int, int>> pairs;
};
BasisScan enumerate_bases(const std::vector<StateVector>& vecs);

/// Per-ray count of bases containing it.
std::vector<int> multiplicities(const StateSet& s);

/// The four mutually unbiased qutrit bases: the computational basis plus
/// its discrete-Fourier image and the two cyclically phased variants.
/// 12 rays, every cross-basis overlap probability exactly 1/3.
StateSet build_mub4();

/// The 21 integer-component rays (columns 1-4 hold the 12 cube rays, the
/// last three columns the 9 center rays) and the 13 bases they form.
StateSet build_table1();

/// Qubit sets for the two 2-dimensional reference protocols.
StateSet build_bb84();
StateSet build_six_state();   // overlap-table backed; see implementation note

struct ColoringReport {
    bool pass = true;
    bool orthogonal_pairs_bicolored = true;
    bool bases_tricolored = true;
    bool ray111_orthogonal_to_third_column = true;
    std::vector<std::string> failures;

    std::string summary() const;
};

/// Checks the coloring claims on a component-backed set: orthogonal rays
/// carry different colors, every basis is tricolored, and (1,1,1) is
/// orthogonal to the three third-column rays (21-ray set only).
/// Failures are report content, not errors.
ColoringReport verify_coloring(const StateSet& s);

/// Stable JSON description of a state set (rays with exact components,
/// colors, trits, multiplicities, basis memberships; bases with members
/// and completion info).
nlohmann::ordered_json state_set_json(const StateSet& s);

}  // namespace qkd3
