#pragma once

#include <string>
#include <vector>

#include "qkd3/statespace.hpp"

namespace qkd3 {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;   // diagnostic on failure, empty or summary on success
};

struct VerifyReport {
    bool pass = true;
    std::vector<VerifyCheck> checks;
};

/// The full structural battery over the built-in state sets: exact
/// unbiasedness of the four-basis family, basis census of the 21-ray
/// family, multiplicity pattern, coloring rules, resolution of identity.
/// defect_trit >= 0 recolors that ray of the 21-ray set first (test hook
/// for exercising the failure path).
VerifyReport run_verify(int defect_trit = -1);

}  // namespace qkd3
