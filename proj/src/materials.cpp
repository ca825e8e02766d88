#include "bvl/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bvl {

namespace {

constexpr double kAnchorShore = 50.0;
constexpr double kAnchorModulus = 1.65;  // MPa

double raw_gent_modulus(double shore_A) {
    return 0.0981 * (56.0 + 7.62336 * shore_A) /
           (0.137505 * (254.0 - 2.54 * shore_A));
}

void check_range(double shore_A) {
    if (!(shore_A >= 20.0) || !(shore_A <= 95.0))
        throw std::invalid_argument("shore hardness outside [20, 95]");
}

}  // namespace

double calibrated_gent_modulus(double shore_A) {
    check_range(shore_A);
    return raw_gent_modulus(shore_A) * (kAnchorModulus / raw_gent_modulus(kAnchorShore));
}

HardnessTable::HardnessTable(std::vector<std::pair<double, double>> entries)
    : entries_(std::move(entries)) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].first > 0.0) || !(entries_[i].first < 100.0))
            throw std::invalid_argument("shore hardness entries must lie in (0, 100)");
        if (!(entries_[i].second > 0.0))
            throw std::invalid_argument("modulus entries must be positive");
        if (i > 0 && (!(entries_[i].first > entries_[i - 1].first) ||
                      !(entries_[i].second > entries_[i - 1].second)))
            throw std::invalid_argument(
                "table must be strictly increasing in hardness and modulus");
    }
}

HardnessTable HardnessTable::defaults() {
    std::vector<std::pair<double, double>> e;
    for (double s : {30.0, 40.0, 60.0, 70.0})
        e.emplace_back(s, calibrated_gent_modulus(s));
    e.emplace_back(kAnchorShore, kAnchorModulus);
    std::sort(e.begin(), e.end());
    return HardnessTable(std::move(e));
}

HardnessTable HardnessTable::empty() {
    return HardnessTable({});
}

HardnessTable HardnessTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open material table: " + path);
    std::vector<std::pair<double, double>> e;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad table line (want shoreA=modulus): " + line);
        e.emplace_back(std::stod(line.substr(0, eq)), std::stod(line.substr(eq + 1)));
    }
    std::sort(e.begin(), e.end());
    return HardnessTable(std::move(e));
}

MaterialModel HardnessTable::modulus_for_hardness(double shore_A) const {
    check_range(shore_A);
    MaterialModel m;
    m.shore_hardness = shore_A;
    for (const auto& [s, E] : entries_) {
        if (std::abs(s - shore_A) < 1e-9) {
            m.youngs_modulus_MPa = E;
            m.source = MaterialModel::Source::table;
            m.validate();
            return m;
        }
    }
    m.youngs_modulus_MPa = calibrated_gent_modulus(shore_A);
    m.source = MaterialModel::Source::fallback_formula;
    m.validate();
    return m;
}

}  // namespace bvl
