#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bvl/shell.hpp"

// Shore-A hardness -> Young's modulus mapping for the printable digital
// materials, with an overridable table and a calibrated Gent fallback.

namespace bvl {

class HardnessTable {
  public:
    // Default table for the printable hardness grid {30,40,50,60,70};
    // the 50A entry is pinned to 1.65 MPa.
    static HardnessTable defaults();

    // Table entries as `shoreA=modulus_MPa` lines; '#' starts a comment.
    static HardnessTable load(const std::string& path);

    // An empty table: every lookup goes through the Gent fallback.
    static HardnessTable empty();

    explicit HardnessTable(std::vector<std::pair<double, double>> entries);

    const std::vector<std::pair<double, double>>& entries() const {
        return entries_;
    }

    // Exact table hit, otherwise the calibrated Gent formula.
    MaterialModel modulus_for_hardness(double shore_A) const;

  private:
    std::vector<std::pair<double, double>> entries_;  // (shore_A, E_MPa)
};

// Gent's empirical hardness-modulus relation, rescaled by a single
// multiplicative factor so it passes through (50A, 1.65 MPa).
double calibrated_gent_modulus(double shore_A);

}  // namespace bvl
