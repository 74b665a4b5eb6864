#pragma once

#include <json.hpp>

#include "nosig/classify.hpp"
#include "nosig/cloning.hpp"
#include "nosig/signalling.hpp"

namespace nosig::cli {

/// Rounds to 12 significant digits so report values are stable and auditable.
double sig12(double v);

nlohmann::json bloch_json(const BlochVector &v);
nlohmann::json classification_json(const MapClassification &c);
nlohmann::json signalling_json(const SignallingReport &r, double threshold);
nlohmann::json fidelity_json(const FidelityReport &f);

} // namespace nosig::cli
